// Small exact integer-lattice kernels: Hermite/Smith normal forms and
// saturated kernels.  Matrices are dense row-major vectors of rows; entries
// stay tiny (cocharacter data for n <= 4) so plain 64-bit arithmetic is
// exact.
#ifndef STRATA_INTLAT_HPP
#define STRATA_INTLAT_HPP

#include <cstdint>
#include <vector>

namespace strata::intlat {

using Row = std::vector<long long>;
using Mat = std::vector<Row>;

// Row-style Hermite normal form: pivots positive, entries above a pivot
// reduced into [0, pivot); zero rows dropped.  Canonical for a given row
// lattice.
Mat hnf(Mat a);

int rank(const Mat& a, int ncols);

// Basis of the integer kernel {v : a v = 0}, as HNF rows of width ncols.
// Kernels of integer matrices are saturated by construction.
Mat kernel(const Mat& a, int ncols);

// Elementary divisors (Smith normal form diagonal), nonzero entries only.
std::vector<long long> snf_divisors(Mat a, int ncols);

// True when the row space of `sub` is contained in the row space of `sup`
// over Q and the inclusion is integral on the saturated lattices.
bool lattice_contains(const Mat& sup, const Mat& sub, int ncols);

} // namespace strata::intlat

#endif
