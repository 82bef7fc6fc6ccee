// Elements of G = SL(n) ⋊ <tau> over the GF(2^m) tower: the semidirect
// product law, the multiplicative Jordan decomposition by order splitting,
// and reduction of coset elements to the normal form t·u·tau with t in the
// tau-fixed diagonal torus and u unipotent upper triangular commuting
// with t.
#ifndef STRATA_GROUP_HPP
#define STRATA_GROUP_HPP

#include <cstdint>
#include <optional>

#include "strata/mat.hpp"

namespace strata {

struct GroupElt {
    Mat mat;      // determinant 1
    int eps = 0;  // tau-exponent, 0 or 1

    int n() const { return mat.n; }
    int deg() const { return mat.deg; }
    friend bool operator==(const GroupElt&, const GroupElt&) = default;
};

struct JordanPair {
    GroupElt s;  // semisimple: odd order, eps = 0
    GroupElt u;  // unipotent: 2-power order
};

namespace grp {

GroupElt identity(int n, int deg);
GroupElt tau(int n, int deg);                      // (Id, 1)
GroupElt make(Mat m, int eps);                     // validates det = 1

// X -> J (X^-1)^T J, the outer involution; throws SingularMatrix.
Mat tau_twist(const Mat& x);

GroupElt compose(const GroupElt& x, const GroupElt& y);  // throws RankMismatch
GroupElt inverse(const GroupElt& x);
GroupElt conjugate(const GroupElt& g, const GroupElt& x);  // g x g^-1
GroupElt pow(const GroupElt& x, std::uint64_t k);
GroupElt embed(const GroupElt& x, int m_target);

std::uint64_t order(const GroupElt& x);

// s = x^(2^e c), u = x^(r d) where ord(x) = 2^e r and the exponents invert
// each other modulo the complementary parts.
JordanPair jordan_decompose(const GroupElt& x);

// --- canonical diagonalization of semisimple parts ---------------------

// Contiguous equal-eigenvalue runs of a canonical diagonal matrix.
struct EigenRuns {
    std::vector<int> begin;  // run k occupies [begin[k], begin[k+1])
    int count() const { return static_cast<int>(begin.size()) - 1; }
    int size(int k) const { return begin[k + 1] - begin[k]; }
};

struct DiagForm {
    Mat d;          // canonical diagonal, over GF(2^M)
    Mat basis_inv;  // c with c s c^-1 = d, det(c) = 1
    int field_degree = 1;
    EigenRuns runs;
};

// Diagonalize a semisimple eps=0 element.  With mirror_paired, eigenvalues
// are arranged as (a_1 block, ..., a_{r-1} block, 1-block, inverses in
// reverse), the tau-fixed form; requires an inverse-closed spectrum.
// Without, eigenvalues are sorted by (absolute degree, bit encoding).
DiagForm diagonalize_semisimple(const GroupElt& s, bool mirror_paired);

// --- normal form --------------------------------------------------------

struct NormalForm {
    Mat t;            // member of the tau-fixed diagonal torus, canonical order
    Mat u;            // unipotent upper triangular, commutes with t
    GroupElt conj;    // eps = 0; conj · x · conj^-1 = (t·u, 1)
    int field_degree = 1;
};

// Reduce x in the coset G°tau to t·u·tau form.  May extend the field;
// throws FieldTowerExceeded past degree 24.
NormalForm normal_form_tu_tau(const GroupElt& x);

// Conjugate a plain unipotent matrix into upper unitriangular form:
// returns q with q z q^-1 unitriangular.
Mat unitriangularize(const Mat& z);

// Twisted triangularization: for (z, tau_h) unipotent, a matrix w (possibly
// over an extension) with w z tau_twist(w)^-1 upper unitriangular.
Mat twisted_triangularize(const Mat& z);

// canonical byte key used by BFS sets and caches
std::uint64_t pack_key(const GroupElt& x);

} // namespace grp
} // namespace strata

#endif
