// Induction of orbits from a Levi coset to the full coset, regular and full
// closures of Jordan classes, the necessary conditions for the partial
// order, and the poset itself.
#ifndef STRATA_INDUCTION_HPP
#define STRATA_INDUCTION_HPP

#include <cstdint>

#include "strata/jordan.hpp"

namespace strata {

struct OrbitDescriptor {
    GroupElt representative;
    int dimension = 0;
    std::vector<std::pair<std::string, int>> ss_invariant;  // eigenvalue multiset (text, multiplicity)
    int ss_field_degree = 1;
    std::string unip_class;
    JordanClassLabel label;
};

struct PosetEdge {
    std::size_t lower = 0, upper = 0;  // indices into the enumerated families
    GroupElt witness;                  // sampled member of the induced orbit
    std::uint64_t seed = 0;
};

struct InduceConfig {
    int sample_degree = 8;   // field degree for unipotent-radical samples
    int samples = 64;        // samples per seed
    int seeds = 3;           // independent certification runs
    std::uint64_t seed = 0x5eed;
};

namespace induce {

// Ind_{D_L}^D(L·g): sample the unipotent radical of the standard parabolic
// attached to the Levi, keep the maximal-dimension orbit.  Throws
// SamplingInconclusive when the seeds disagree.
OrbitDescriptor induce_orbit(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg = {});

struct UnipotentReduction {
    GroupElt s;                 // semisimple part (eps = 0)
    OrbitDescriptor unip;       // representative s·w with w sampled in U_P ∩ C(s)
};

// Factor the induction through the centralizer of the semisimple part:
// sampling inside U_P^s must reproduce the invariants of the full
// induction.
UnipotentReduction reduce_to_unipotent(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg = {});

struct CodimPair {
    int codim_levi = 0;
    int codim_coset = 0;
    bool equal = false;
};

CodimPair codim_check(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg = {});

// One eigenvalue-coincidence stratum of the torus translates z·g, z in T(g).
struct PatternStratum {
    std::vector<std::vector<int>> pattern;  // coincidence pattern of z·g_s
    std::vector<long long> coords;          // witness cocharacter coordinates
    std::size_t induced_family = 0;         // index into the family list
    GroupElt induced_rep;
};

std::vector<PatternStratum> pattern_strata(const std::vector<ClassDescription>& fams,
                                           std::size_t idx, const InduceConfig& cfg = {});

// Families exhausting the regular closure (indices into fams, sorted).
std::vector<std::size_t> regular_closure(const std::vector<ClassDescription>& fams,
                                         std::size_t idx, const InduceConfig& cfg = {});

// Regular closure plus the lower closure strata from unipotent-order
// degeneration within each semisimple pattern.
std::vector<std::size_t> full_closure(const std::vector<ClassDescription>& fams,
                                      std::size_t idx, const InduceConfig& cfg = {});

struct NecessaryCheck {
    bool a_ok = false;  // unipotent part is induced at a matching pattern
    bool b_ok = false;  // torus-translate containment
    bool c_ok = false;  // centralizer block containment
};

NecessaryCheck check_necessary(const std::vector<ClassDescription>& fams,
                               std::size_t j1, std::size_t j2, const InduceConfig& cfg = {});

struct Poset {
    std::vector<ClassDescription> families;
    std::vector<PosetEdge> edges;        // strict relations lower < upper
    std::vector<PosetEdge> hasse;        // transitive reduction
};

Poset poset(int n, const InduceConfig& cfg = {});

} // namespace induce
} // namespace strata

#endif
