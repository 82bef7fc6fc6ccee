// Jordan-class labels and the classification of SL(n) ⋊ <tau> coset
// elements: canonical invariants, class equality, and enumeration of the
// class families for 2 <= n <= 4.
#ifndef STRATA_JORDAN_HPP
#define STRATA_JORDAN_HPP

#include <optional>
#include <string>

#include "strata/torus.hpp"

namespace strata {

enum class PairingType { Paired, SelfInverse, CentralOne };

struct EigenPatternEntry {
    int block_size = 0;
    PairingType type = PairingType::Paired;
    friend bool operator==(const EigenPatternEntry&, const EigenPatternEntry&) = default;
};

struct JordanClassLabel {
    int n = 0;
    LeviDescriptor levi;
    Subtorus t_lattice;
    std::vector<EigenPatternEntry> eigen_pattern;  // canonical run order, top half + middle
    std::string unip_class;
    int eps = 0;
    friend bool operator==(const JordanClassLabel&, const JordanClassLabel&) = default;
};

struct ClassDescription {
    JordanClassLabel label;
    std::string name;
    GroupElt representative;
    int orbit_dimension = 0;
    int dimension = 0;  // class dimension: orbit dimension + rank of t_lattice
    bool isolated = false;
    std::vector<std::string> regular_slice;  // torus-coordinate inequations
};

namespace jordan {

// Canonical label of the Jordan class of a; two SL(n)-conjugate inputs give
// bit-identical labels.  For eps=1 requires n <= 4.
JordanClassLabel class_of(const GroupElt& a);

struct ClassInfo {
    JordanClassLabel label;
    int orbit_dim = 0;  // dimension of the G°-orbit of a
};

// Label plus the orbit dimension from the centralizer block formulas.
ClassInfo classify(const GroupElt& a);

bool same_class(const GroupElt& a, const GroupElt& b);

// Complete list of Jordan-class families of the coset G°tau, 2 <= n <= 4.
std::vector<ClassDescription> enumerate_classes(int n);

// Find the enumerated family a belongs to (by label), if any.
std::optional<std::size_t> family_index(const std::vector<ClassDescription>& fams, const JordanClassLabel& label);

struct IsolatedStructure {
    Subtorus torus_part;
    GroupElt orbit_rep;
};

// Decomposition of an isolated class as a torus translate of one orbit.
// Without a Levi: ambient isolation required (throws NotIsolated).  With a
// Levi L: the class of a inside N_G(L), which is always isolated there;
// torus_part is then (Z(L)° ∩ C(a))°.
IsolatedStructure isolated_class_structure(const GroupElt& a);
IsolatedStructure isolated_class_structure(const GroupElt& a, const LeviDescriptor& levi);

// The S* locus inequations for the slice T·tau of SL(3): the semisimple
// part of diag(alpha,beta,(alpha beta)^-1)tau is regular away from these.
std::vector<std::string> sstar_constraints_sl3();

// --- twisted unipotent classification ------------------------------------

// Class id of the unipotent coset element (z, tau_h) for h <= 4 under
// twisted GL(h)-conjugacy: "-" (h=0), "min" (minimal class), "reg"
// (regular class, h in {2,3}), or the pinned ids of the size-4 table.
std::string twisted_unip_class(const Mat& z);

// ids in ascending closure order (minimal first)
std::vector<std::string> twisted_unip_class_ids(int h);

// centralizer dimension of the class inside the twisted GL(h) coset
int twisted_unip_centralizer_dim(int h, const std::string& id);

// representative matrix z of the class (entries over GF(2))
Mat twisted_unip_rep(int h, const std::string& id);

// Jordan partition of a unipotent matrix, parts descending.
std::vector<int> jordan_partition(const Mat& u);

// dim C_{GL(h)}(u_lambda) = sum of squared conjugate-partition parts
int gl_unip_centralizer_dim(const std::vector<int>& lambda);

std::string partition_string(const std::vector<int>& lambda);

} // namespace jordan
} // namespace strata

#endif
