// Orbit dimensions over the algebraic closure from exact point counts over
// GF(2^m): breadth-first enumeration of conjugacy orbits under SL(n, 2^m),
// integral log2 slopes across consecutive field degrees, and a linearized
// centralizer bound as a cross-check.
#ifndef STRATA_DIMENSION_HPP
#define STRATA_DIMENSION_HPP

#include <string>
#include <vector>

#include "strata/group.hpp"

namespace strata {

struct DimensionEstimate {
    int dim = -1;
    std::vector<std::pair<int, std::uint64_t>> counts;  // (degree m, orbit size)
    std::string method;                                 // "pointcount" or "tangent"
};

namespace dims {

std::uint64_t sl_order(int n, int m);

// Exact size of the SL(n, 2^m)-conjugation orbit of x (x embeds into degree
// m).  Throws MemoryBudgetExceeded past node_budget states.
std::uint64_t orbit_size(const GroupElt& x, int m, std::uint64_t node_budget = std::uint64_t{1} << 23);

// Point-count dimension: orbit sizes for each listed degree; the slopes
// log2(s_{k+1}/s_k)/(m_{k+1}-m_k) rounded to nearest integer must agree
// across consecutive pairs, else NonIntegralSlope.
DimensionEstimate orbit_dim(const GroupElt& x, const std::vector<int>& degrees,
                            std::uint64_t node_budget = std::uint64_t{1} << 23);

// |C_{SL(n,2^m)}(x)| via orbit-stabilizer; exact integer division enforced.
std::uint64_t centralizer_order(const GroupElt& x, int m, std::uint64_t node_budget = std::uint64_t{1} << 23);

// Dimension of {Y in sl_n : Y X = X dtau^eps(Y)}, the linearized
// centralizer; an upper bound for the centralizer dimension (the scheme
// need not be smooth in characteristic 2).
int tangent_dim_bound(const GroupElt& x);

} // namespace dims
} // namespace strata

#endif
