// The Weyl-group layer: W = S_n with the diagram-flip action, the fixed
// subgroup W^D as the signed permutation group B_k (k = floor(n/2)), exact
// character tables, b-invariants, truncated induction, the E-map from the
// coset to Irr(W^D), and Lusztig strata as its fibers.
#ifndef STRATA_WEYL_HPP
#define STRATA_WEYL_HPP

#include <functional>
#include <map>

#include "strata/induction.hpp"

namespace strata {

using Partition = std::vector<int>;  // parts descending

struct Bipartition {
    Partition alpha, beta;
    friend bool operator==(const Bipartition&, const Bipartition&) = default;
    friend auto operator<=>(const Bipartition&, const Bipartition&) = default;
};

struct IrrLabel {
    enum class Kind { Symmetric, Hyperoctahedral } kind = Kind::Symmetric;
    int size = 0;  // n for S_n, k for B_k
    Partition lambda;
    Bipartition bip;
    friend bool operator==(const IrrLabel&, const IrrLabel&) = default;
    std::string text() const;
};

struct WCharacter {
    IrrLabel label;
    std::vector<long long> values;  // indexed by the table's class order
    int b_invariant = 0;
};

struct WeylTable {
    IrrLabel::Kind kind;
    int size = 0;
    std::uint64_t order = 1;
    std::vector<Partition> sym_classes;        // Symmetric: class = cycle type
    std::vector<Bipartition> hyper_classes;    // Hyperoctahedral: signed type
    std::vector<std::uint64_t> class_sizes;
    std::vector<WCharacter> rows;
};

struct StratumDescriptor {
    IrrLabel e_label;
    std::vector<std::size_t> members;  // indices into the family list
    int orbit_dimension = 0;
    std::vector<std::size_t> closed_witness;  // union of the members' full closures
};

namespace weyl {

// Murnaghan-Nakayama value of the S_n character chi^lambda at cycle type rho.
long long sym_character(const Partition& lambda, const Partition& rho);

// B_k character chi^{(lambda,mu)} at the signed class (alpha, beta) via the
// two-alphabet power-sum splitting.
long long hyper_character(const Bipartition& irrep, const Bipartition& cls);

int b_invariant(const IrrLabel& label);

WeylTable char_table_symmetric(int n);       // n <= 6
WeylTable char_table_hyperoctahedral(int k); // k <= 3

// --- the fixed Weyl group -------------------------------------------------

struct FixedWeylGroup {
    int n = 0, k = 0;
    std::vector<std::vector<int>> elements;  // fixed permutations of {0..n-1}
    std::vector<Bipartition> signed_types;   // B_k class data per element
    std::vector<Partition> fusion;           // S_n cycle type per element
};

// Fixed points of w -> w0 w w0 on S_n, identified with B_{floor(n/2)}.
FixedWeylGroup fixed_weyl_group(int n);

// --- concrete groups and truncated induction -------------------------------

// A parent group realized by permutations: S_n on {0..n-1}, or B_k encoded
// as permutations of {0..2k-1} with i <-> i+k the sign flip.
struct AmbientGroup {
    WeylTable table;
    std::vector<std::vector<int>> elements;
    std::vector<int> class_index;  // element -> table class
    std::map<std::vector<int>, int> index;

    int mul(int a, int b) const;  // index of elements[a] ∘ elements[b]
    int inv(int a) const;
};

AmbientGroup make_symmetric(int n);
AmbientGroup make_hyperoctahedral(int k);

struct Constituent {
    IrrLabel label;
    long long multiplicity = 0;
};

// Decomposition of Ind_{W'}^{W}(chi') where the subgroup is an element
// subset and chi' evaluates on ambient element indices.
std::vector<Constituent> induce_decompose(const AmbientGroup& w, const std::vector<int>& sub,
                                          const std::function<long long(int)>& chi);

// Unique constituent attaining the subgroup b-invariant (multiplicity one);
// throws NonUniqueTruncation otherwise.
IrrLabel j_induce(const AmbientGroup& w, const std::vector<int>& sub,
                  const std::function<long long(int)>& chi, int b_sub);

// --- the E-map --------------------------------------------------------------

// Base-case assignment for unipotent coset classes: the table entry of the
// twisted class id inside Irr(B_{floor(h/2)}).
IrrLabel twisted_base_label(int h, const std::string& cls);

// E(a) for a in the coset G°tau, n <= 4.
IrrLabel e_map(const GroupElt& a);

// Fibers of E on the enumerated families, with the local-closedness
// witnesses; throws ConsistencyFailure if the fibers disagree with the
// regular-closure saturation.
std::vector<StratumDescriptor> strata_partition(int n, const InduceConfig& cfg = {});

} // namespace weyl
} // namespace strata

#endif
