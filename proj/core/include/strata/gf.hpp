// Exact arithmetic in the tower GF(2) ⊂ GF(4) ⊂ ... ⊂ GF(2^24), with
// Conway-polynomial moduli so that subfield embeddings are compatible
// along the whole tower.
//
// An element is a pair (degree m, residue bits): the bits are the
// coefficients of the residue polynomial in the canonical generator g of
// GF(2^m), little-endian (bit i = coefficient of g^i).  Elements of
// different degrees never mix implicitly; callers embed to a common
// degree first.
#ifndef STRATA_GF_HPP
#define STRATA_GF_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "strata/error.hpp"

namespace strata {

inline constexpr int kMaxFieldDegree = 24;

struct Fq {
    std::uint8_t deg = 1;  // extension degree m, 1..24
    std::uint32_t bits = 0;

    friend bool operator==(const Fq&, const Fq&) = default;
};

namespace gf {

// Conway polynomial modulus for GF(2^m), bit i = coefficient of x^i.
std::uint32_t conway(int m);

Fq zero(int m);
Fq one(int m);
// The canonical generator g (the residue class of x); primitive by
// construction of the Conway modulus.
Fq gen(int m);
Fq make(int m, std::uint32_t bits);

bool is_zero(const Fq& a);

Fq add(const Fq& a, const Fq& b);
Fq mul(const Fq& a, const Fq& b);
Fq inv(const Fq& a);          // throws ZeroElement
Fq pow(const Fq& a, std::uint64_t e);
Fq frobenius(const Fq& a);    // x -> x^2

// Unique square root; equals x^(2^(m-1)).
Fq sqrt(const Fq& a);

// Order of x in GF(2^m)^*; throws ZeroElement on 0.
std::uint64_t mult_order(const Fq& a);

// Image of x under the pinned embedding GF(2^deg) -> GF(2^m_target).
// Requires deg | m_target and m_target <= 24.
Fq embed(const Fq& a, int m_target);

// Partial inverse of embed: rewrite a as an element of GF(2^m_sub) when it
// lies in that subfield (m_sub | deg(a)); throws NonDivisibleDegree
// otherwise.
Fq project(const Fq& a, int m_sub);

// Absolute degree of the subfield generated by a: the least e with
// a^(2^e) = a.
int absolute_degree(const Fq& a);

// Smallest tower degree containing both operand fields (lcm), capped at 24.
int common_degree(int da, int db);

// Textual encoding, e.g. "0", "1", "g", "g^2+g+1".
std::string to_string(const Fq& a);
Fq parse(int m, const std::string& text);

// All 2^m elements, for small m.
std::vector<Fq> all_elements(int m);

} // namespace gf

// ---------------------------------------------------------------------------
// Polynomials over one tower field (coefficients share a degree).

struct FieldPoly {
    int deg_field = 1;           // coefficient field degree
    std::vector<Fq> coeffs;      // little-endian; no trailing zeros

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    Fq coeff(int i) const;
    friend bool operator==(const FieldPoly&, const FieldPoly&) = default;
};

namespace gf {

FieldPoly poly_make(int deg_field, std::vector<Fq> coeffs);
FieldPoly poly_zero(int deg_field);
FieldPoly poly_one(int deg_field);
// x - r == x + r in characteristic 2
FieldPoly poly_linear(const Fq& r);

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b);
// Division with remainder by a monic divisor.
std::pair<FieldPoly, FieldPoly> poly_divmod(const FieldPoly& a, const FieldPoly& b);
FieldPoly poly_gcd(FieldPoly a, FieldPoly b);  // monic gcd
FieldPoly poly_derivative(const FieldPoly& a);
FieldPoly poly_monic(const FieldPoly& a);
Fq poly_eval(const FieldPoly& a, const Fq& x);
FieldPoly poly_embed(const FieldPoly& a, int m_target);

struct RootList {
    std::vector<std::pair<Fq, int>> roots;  // (root, multiplicity)
    int field_degree_used = 1;              // smallest tower field containing all roots
};

// Complete splitting of a monic polynomial of degree <= 12 over its tower
// field: all roots with multiplicities, expressed in the smallest field of
// the tower that contains every root.  Throws UnsupportedDegree when the
// splitting field falls outside the tower.
RootList split_poly(const FieldPoly& p, std::uint64_t seed = 0x5eed);

} // namespace gf
} // namespace strata

#endif
