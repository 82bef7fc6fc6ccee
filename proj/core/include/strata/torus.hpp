// Subtori of the diagonal maximal torus as saturated cocharacter lattices:
// the torus T(a) attached to an element, the Levi L(a) = centralizer of
// T(a), isolation tests, and regularity of semisimple translates.
#ifndef STRATA_TORUS_HPP
#define STRATA_TORUS_HPP

#include "strata/group.hpp"
#include "strata/intlat.hpp"

namespace strata {

struct Subtorus {
    int n = 0;
    intlat::Mat basis;  // HNF rows, saturated, each row sums to 0

    int rank() const { return static_cast<int>(basis.size()); }
    friend bool operator==(const Subtorus&, const Subtorus&) = default;
};

// Block structure on {0..n-1}; blocks are disjoint sorted position lists
// ordered by first position.
struct LeviDescriptor {
    int n = 0;
    std::vector<std::vector<int>> blocks;
    bool tau_compatible = false;

    friend bool operator==(const LeviDescriptor&, const LeviDescriptor&) = default;
    int dim() const;  // dimension of the block Levi inside SL(n)
};

namespace torus {

// Saturation of the row space intersected with {sum v_i = 0}.
Subtorus saturate(int n, intlat::Mat rows);

struct TorusData {
    Subtorus t;
    GroupElt conjugator;  // moves a into the basis where a_s is diagonal
    int field_degree = 1;
};

// T(a) = (Z(C(a_s)°)° ∩ C(a_u))°, computed in the normal-form basis.
TorusData T_of(const GroupElt& a);

// Same torus through the Levi route (Z(L(a))° ∩ C(a))°; must agree with T_of.
TorusData T_of_via_levi(const GroupElt& a);

// L(a) = C_{G°}(T(a)): positions grouped by equal columns of the basis.
LeviDescriptor levi_of(const Subtorus& t);
LeviDescriptor L_of(const GroupElt& a);

bool is_isolated(const GroupElt& a);

// A point of the subtorus: generator exponents from integer cocharacter
// coordinates, realized over GF(2^m).
Mat point(const Subtorus& t, const std::vector<long long>& coords, int m);

// True iff z·a_s has the same eigenvalue-coincidence pattern as a_s, i.e.
// the translate stays in the regular part of T(a)·a_s.
bool semisimple_regular(const Subtorus& t, const std::vector<long long>& coords, const Mat& a_s_diag);

// coincidence pattern of a diagonal matrix: partition of positions by value
std::vector<std::vector<int>> diag_pattern(const Mat& d);

} // namespace torus
} // namespace strata

#endif
