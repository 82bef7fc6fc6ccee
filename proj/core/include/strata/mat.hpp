// Dense n x n matrices over one tower field (n <= 4 in practice).
#ifndef STRATA_MAT_HPP
#define STRATA_MAT_HPP

#include <vector>

#include "strata/gf.hpp"

namespace strata {

struct Mat {
    int n = 0;
    int deg = 1;  // field degree shared by all entries
    std::vector<Fq> e;

    static Mat zero(int n, int deg);
    static Mat identity(int n, int deg);

    Fq& at(int i, int j) { return e[static_cast<std::size_t>(i * n + j)]; }
    const Fq& at(int i, int j) const { return e[static_cast<std::size_t>(i * n + j)]; }

    friend bool operator==(const Mat&, const Mat&) = default;
};

namespace mat {

Mat mul(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b);
Fq det(const Mat& a);
Mat inverse(const Mat& a);  // throws SingularMatrix
Mat transpose(const Mat& a);
// conjugation by the antidiagonal identity: (i,j) -> (n-1-i, n-1-j)
Mat rev_conj(const Mat& a);
// the antidiagonal identity J itself
Mat antidiag_identity(int n, int deg);
Mat embed(const Mat& a, int m_target);
bool is_upper_triangular(const Mat& a);
bool is_unitriangular(const Mat& a);
bool is_diagonal(const Mat& a);
Mat diag(int deg, const std::vector<Fq>& entries);

// right kernel basis {v : a v = 0}
std::vector<std::vector<Fq>> kernel(const Mat& a);

// characteristic polynomial det(x*I - a), monic, over the entry field
FieldPoly char_poly(const Mat& a);

// submatrix copy [r0,r1) x [c0,c1)
Mat block(const Mat& a, int r0, int r1, int c0, int c1);
void set_block(Mat& a, int r0, int c0, const Mat& b);

} // namespace mat
} // namespace strata

#endif
