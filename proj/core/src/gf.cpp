// GF(2^m) tower arithmetic and polynomial splitting.
#include "strata/gf.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace strata {
namespace gf {

namespace {

// Conway polynomials over GF(2), degrees 1..24; bit i = coefficient of x^i.
constexpr std::uint32_t kConway[25] = {
    0,
    0x3,       // x+1
    0x7,       // x^2+x+1
    0xb,       // x^3+x+1
    0x13,      // x^4+x+1
    0x25,      // x^5+x^2+1
    0x5b,      // x^6+x^4+x^3+x+1
    0x83,      // x^7+x+1
    0x11d,     // x^8+x^4+x^3+x^2+1
    0x211,     // x^9+x^4+1
    0x46f,     // x^10+x^6+x^5+x^3+x^2+x+1
    0x805,     // x^11+x^2+1
    0x10eb,    // x^12+x^7+x^6+x^5+x^3+x+1
    0x201b,    // x^13+x^4+x^3+x+1
    0x40a9,    // x^14+x^7+x^5+x^3+1
    0x8035,    // x^15+x^5+x^4+x^2+1
    0x1002d,   // x^16+x^5+x^3+x^2+1
    0x20009,   // x^17+x^3+1
    0x41403,   // x^18+x^12+x^10+x^9+x+1
    0x80027,   // x^19+x^5+x^2+x+1
    0x1006f3,  // x^20+x^10+x^9+x^7+x^6+x^5+x^4+x+1
    0x200065,  // x^21+x^6+x^5+x^2+1
    0x401f61,  // x^22+x^12+x^11+x^10+x^9+x^8+x^6+x^5+1
    0x800021,  // x^23+x^5+1
    0x101e6a9, // x^24+x^16+x^15+x^14+x^13+x^10+x^9+x^7+x^5+x^3+1
};

void check_degree(int m) {
    if (m < 1 || m > kMaxFieldDegree) throw UnsupportedDegree("field degree outside tower (1..24)");
}

void check_same(const Fq& a, const Fq& b) {
    if (a.deg != b.deg)
        throw NonDivisibleDegree("implicit mixing of field degrees; embed first");
}

std::uint32_t reduce_bits(std::uint64_t v, int m) {
    const std::uint64_t mod = kConway[m];
    int top;
    while (v >> m) {
        top = 63 - __builtin_clzll(v);
        v ^= mod << (top - m);
    }
    return static_cast<std::uint32_t>(v);
}

std::uint32_t mul_bits(std::uint32_t a, std::uint32_t b, int m) {
    std::uint64_t acc = 0, bb = b;
    while (a) {
        if (a & 1) acc ^= bb;
        a >>= 1;
        bb <<= 1;
    }
    return reduce_bits(acc, m);
}

} // namespace

std::uint32_t conway(int m) {
    check_degree(m);
    return kConway[m];
}

Fq zero(int m) { check_degree(m); return Fq{static_cast<std::uint8_t>(m), 0}; }
Fq one(int m)  { check_degree(m); return Fq{static_cast<std::uint8_t>(m), 1}; }
Fq gen(int m)  {
    check_degree(m);
    if (m == 1) return one(1);  // GF(2)^* = {1}
    return Fq{static_cast<std::uint8_t>(m), 2};
}

Fq make(int m, std::uint32_t bits) {
    check_degree(m);
    if (bits >> m) throw Error("residue bits exceed field degree");
    return Fq{static_cast<std::uint8_t>(m), bits};
}

bool is_zero(const Fq& a) { return a.bits == 0; }

Fq add(const Fq& a, const Fq& b) {
    check_same(a, b);
    return Fq{a.deg, a.bits ^ b.bits};
}

Fq mul(const Fq& a, const Fq& b) {
    check_same(a, b);
    return Fq{a.deg, mul_bits(a.bits, b.bits, a.deg)};
}

Fq pow(const Fq& a, std::uint64_t e) {
    Fq r = one(a.deg), base = a;
    while (e) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

Fq inv(const Fq& a) {
    if (is_zero(a)) throw ZeroElement("inverse of zero");
    const std::uint64_t q1 = (std::uint64_t{1} << a.deg) - 1;
    return pow(a, q1 - 1);
}

Fq frobenius(const Fq& a) { return mul(a, a); }

Fq sqrt(const Fq& a) {
    Fq r = a;
    for (int i = 0; i < a.deg - 1; ++i) r = frobenius(r);
    return r;
}

std::uint64_t mult_order(const Fq& a) {
    if (is_zero(a)) throw ZeroElement("order of zero");
    std::uint64_t n = (std::uint64_t{1} << a.deg) - 1;
    std::uint64_t ord = n;
    std::uint64_t rest = n;
    for (std::uint64_t p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        while (rest % p == 0) rest /= p;
        while (ord % p == 0 && pow(a, ord / p) == one(a.deg)) ord /= p;
    }
    if (rest > 1)
        while (ord % rest == 0 && pow(a, ord / rest) == one(a.deg)) ord /= rest;
    return ord;
}

Fq embed(const Fq& a, int m_target) {
    check_degree(m_target);
    const int d = a.deg;
    if (d == m_target) return a;
    if (m_target % d != 0)
        throw NonDivisibleDegree("source degree does not divide target degree");
    // The Conway compatibility condition makes g_d |-> g_t^((2^t-1)/(2^d-1))
    // a field homomorphism; extend by evaluating the residue polynomial.
    const std::uint64_t e = ((std::uint64_t{1} << m_target) - 1) / ((std::uint64_t{1} << d) - 1);
    const Fq beta = pow(gen(m_target), e);
    Fq acc = zero(m_target);
    for (int i = d - 1; i >= 0; --i) {
        acc = mul(acc, beta);
        if ((a.bits >> i) & 1) acc = add(acc, one(m_target));
    }
    return acc;
}

Fq project(const Fq& a, int m_sub) {
    check_degree(m_sub);
    const int m = a.deg;
    if (m == m_sub) return a;
    if (m % m_sub != 0) throw NonDivisibleDegree("subfield degree does not divide degree");
    // Solve sum_j c_j * embed(g_sub^j) = a over GF(2).
    std::vector<std::uint32_t> basis(m_sub);
    Fq gs = one(m_sub);
    const Fq g = gen(m_sub);
    for (int j = 0; j < m_sub; ++j) {
        basis[j] = embed(gs, m).bits;
        gs = mul(gs, g);
    }
    // Gaussian elimination on the m x (m_sub+1) bit system.
    std::vector<std::uint64_t> rows(m, 0);  // bits 0..m_sub-1 coeffs, bit m_sub = rhs
    for (int i = 0; i < m; ++i) {
        std::uint64_t r = 0;
        for (int j = 0; j < m_sub; ++j)
            if ((basis[j] >> i) & 1) r |= std::uint64_t{1} << j;
        if ((a.bits >> i) & 1) r |= std::uint64_t{1} << m_sub;
        rows[i] = r;
    }
    std::uint32_t sol = 0;
    int rank = 0;
    for (int col = 0; col < m_sub; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if ((rows[i] >> col) & 1) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (int i = 0; i < m; ++i)
            if (i != rank && ((rows[i] >> col) & 1)) rows[i] ^= rows[rank];
        ++rank;
    }
    for (int i = rank; i < m; ++i)
        if (rows[i] >> m_sub)
            throw Error("element does not lie in the requested subfield");
    rank = 0;
    for (int col = 0; col < m_sub; ++col) {
        if (rank < m && ((rows[rank] >> col) & 1)) {
            if ((rows[rank] >> m_sub) & 1) sol |= std::uint32_t{1} << col;
            ++rank;
        }
    }
    return Fq{static_cast<std::uint8_t>(m_sub), sol};
}

int absolute_degree(const Fq& a) {
    for (int e = 1; e <= a.deg; ++e) {
        if (a.deg % e) continue;
        Fq f = a;
        for (int i = 0; i < e; ++i) f = frobenius(f);
        if (f == a) return e;
    }
    return a.deg;
}

int common_degree(int da, int db) {
    const int l = std::lcm(da, db);
    if (l > kMaxFieldDegree) throw UnsupportedDegree("common field exceeds tower bound");
    return l;
}

std::string to_string(const Fq& a) {
    if (a.bits == 0) return "0";
    std::string s;
    for (int i = a.deg - 1; i >= 0; --i) {
        if (!((a.bits >> i) & 1)) continue;
        if (!s.empty()) s += "+";
        if (i == 0) s += "1";
        else if (i == 1) s += "g";
        else s += "g^" + std::to_string(i);
    }
    return s;
}

Fq parse(int m, const std::string& text) {
    check_degree(m);
    std::uint32_t bits = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t next = text.find('+', pos);
        if (next == std::string::npos) next = text.size();
        std::string term = text.substr(pos, next - pos);
        if (term == "0") {
            // contributes nothing
        } else if (term == "1") {
            bits ^= 1;
        } else if (term == "g") {
            bits ^= 2;
        } else if (term.rfind("g^", 0) == 0) {
            int e = std::stoi(term.substr(2));
            if (e < 0 || e >= m) throw Error("exponent out of range in field literal");
            bits ^= std::uint32_t{1} << e;
        } else {
            throw Error("malformed field literal: " + term);
        }
        pos = next + 1;
    }
    return make(m, bits);
}

std::vector<Fq> all_elements(int m) {
    check_degree(m);
    if (m > 20) throw UnsupportedDegree("enumeration limited to small fields");
    std::vector<Fq> out;
    out.reserve(std::size_t{1} << m);
    for (std::uint32_t v = 0; v < (std::uint32_t{1} << m); ++v)
        out.push_back(Fq{static_cast<std::uint8_t>(m), v});
    return out;
}

} // namespace gf

// ---------------------------------------------------------------------------

Fq FieldPoly::coeff(int i) const {
    if (i < 0 || i > degree()) return gf::zero(deg_field);
    return coeffs[static_cast<std::size_t>(i)];
}

namespace gf {

namespace {

void trim(FieldPoly& p) {
    while (!p.coeffs.empty() && is_zero(p.coeffs.back())) p.coeffs.pop_back();
}

} // namespace

FieldPoly poly_make(int deg_field, std::vector<Fq> coeffs) {
    FieldPoly p{deg_field, std::move(coeffs)};
    for (const Fq& c : p.coeffs)
        if (c.deg != deg_field) throw NonDivisibleDegree("polynomial coefficients mix degrees");
    trim(p);
    return p;
}

FieldPoly poly_zero(int deg_field) { return FieldPoly{deg_field, {}}; }
FieldPoly poly_one(int deg_field) { return FieldPoly{deg_field, {one(deg_field)}}; }

FieldPoly poly_linear(const Fq& r) {
    return FieldPoly{r.deg, {r, one(r.deg)}};
}

FieldPoly poly_add(const FieldPoly& a, const FieldPoly& b) {
    FieldPoly r{a.deg_field, {}};
    const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Fq c = zero(a.deg_field);
        if (i < a.coeffs.size()) c = add(c, a.coeffs[i]);
        if (i < b.coeffs.size()) c = add(c, b.coeffs[i]);
        r.coeffs.push_back(c);
    }
    trim(r);
    return r;
}

FieldPoly poly_mul(const FieldPoly& a, const FieldPoly& b) {
    if (a.is_zero() || b.is_zero()) return poly_zero(a.deg_field);
    FieldPoly r{a.deg_field, std::vector<Fq>(a.coeffs.size() + b.coeffs.size() - 1, zero(a.deg_field))};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = add(r.coeffs[i + j], mul(a.coeffs[i], b.coeffs[j]));
    trim(r);
    return r;
}

std::pair<FieldPoly, FieldPoly> poly_divmod(const FieldPoly& a, const FieldPoly& b) {
    if (b.is_zero()) throw ZeroElement("polynomial division by zero");
    const Fq lead = b.coeffs.back();
    const Fq lead_inv = inv(lead);
    FieldPoly rem = a;
    FieldPoly quot{a.deg_field, {}};
    if (a.degree() >= b.degree())
        quot.coeffs.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, zero(a.deg_field));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int shift = rem.degree() - b.degree();
        const Fq c = mul(rem.coeffs.back(), lead_inv);
        quot.coeffs[static_cast<std::size_t>(shift)] = c;
        for (int i = 0; i <= b.degree(); ++i) {
            auto& rc = rem.coeffs[static_cast<std::size_t>(i + shift)];
            rc = add(rc, mul(c, b.coeffs[static_cast<std::size_t>(i)]));
        }
        trim(rem);
    }
    trim(quot);
    return {quot, rem};
}

FieldPoly poly_monic(const FieldPoly& a) {
    if (a.is_zero()) return a;
    const Fq li = inv(a.coeffs.back());
    FieldPoly r = a;
    for (Fq& c : r.coeffs) c = mul(c, li);
    return r;
}

FieldPoly poly_gcd(FieldPoly a, FieldPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(a, poly_monic(b));
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

FieldPoly poly_derivative(const FieldPoly& a) {
    FieldPoly r{a.deg_field, {}};
    for (int i = 1; i <= a.degree(); ++i) {
        // characteristic 2: i*c = c when i odd, 0 when even
        r.coeffs.push_back((i & 1) ? a.coeffs[static_cast<std::size_t>(i)] : zero(a.deg_field));
    }
    trim(r);
    return r;
}

Fq poly_eval(const FieldPoly& a, const Fq& x) {
    Fq acc = zero(x.deg);
    for (int i = a.degree(); i >= 0; --i)
        acc = add(mul(acc, x), a.coeff(i).deg == x.deg ? a.coeff(i) : embed(a.coeff(i), x.deg));
    return acc;
}

FieldPoly poly_embed(const FieldPoly& a, int m_target) {
    FieldPoly r{m_target, {}};
    r.coeffs.reserve(a.coeffs.size());
    for (const Fq& c : a.coeffs) r.coeffs.push_back(embed(c, m_target));
    return r;
}

namespace {

// Square-free decomposition in characteristic 2: f = prod g_i^i with the
// g_i square-free and pairwise coprime.
void squarefree_decomp(const FieldPoly& f, int mult, std::vector<std::pair<FieldPoly, int>>& out) {
    const int m = f.deg_field;
    FieldPoly fp = poly_derivative(f);
    FieldPoly c = f;
    if (!fp.is_zero()) {
        c = poly_gcd(f, fp);
        FieldPoly w = poly_divmod(f, c).first;
        int i = 1;
        while (w.degree() > 0) {
            FieldPoly y = poly_gcd(w, c);
            FieldPoly z = poly_divmod(w, y).first;
            if (z.degree() > 0) out.emplace_back(z, mult * i);
            w = std::move(y);
            c = poly_divmod(c, w).first;
            ++i;
        }
    }
    if (c.degree() > 0) {
        // c is a square: halve exponents, take coefficient square roots
        FieldPoly h{m, {}};
        h.coeffs.reserve(static_cast<std::size_t>(c.degree() / 2) + 1);
        for (int i = 0; i <= c.degree(); i += 2) h.coeffs.push_back(sqrt(c.coeff(i)));
        trim(h);
        squarefree_decomp(h, 2 * mult, out);
    }
}

FieldPoly poly_mod(const FieldPoly& a, const FieldPoly& mod) {
    return poly_divmod(a, mod).second;
}

FieldPoly poly_mulmod(const FieldPoly& a, const FieldPoly& b, const FieldPoly& mod) {
    return poly_mod(poly_mul(a, b), mod);
}

// h -> h^(2^m) mod f (one field-size Frobenius power)
FieldPoly poly_qpow_mod(FieldPoly h, const FieldPoly& f) {
    for (int i = 0; i < f.deg_field; ++i) h = poly_mulmod(h, h, f);
    return h;
}

// Distinct-degree factorization of a square-free monic polynomial.
std::vector<std::pair<int, FieldPoly>> distinct_degree(const FieldPoly& f0) {
    std::vector<std::pair<int, FieldPoly>> out;
    const int m = f0.deg_field;
    FieldPoly v = f0;
    FieldPoly x{m, {zero(m), one(m)}};
    FieldPoly h = poly_mod(x, v);
    int d = 0;
    while (v.degree() >= 2 * (d + 1)) {
        ++d;
        h = poly_qpow_mod(h, v);
        FieldPoly g = poly_gcd(poly_add(h, x), v);
        if (g.degree() > 0) {
            out.emplace_back(d, g);
            v = poly_divmod(v, g).first;
            h = poly_mod(h, v);
        }
    }
    if (v.degree() > 0) out.emplace_back(v.degree(), v);
    return out;
}

// All roots of a monic polynomial splitting completely into distinct linear
// factors over its own field, by trace-map splitting.
void linear_roots(const FieldPoly& f, std::mt19937_64& rng, std::vector<Fq>& out) {
    const int m = f.deg_field;
    if (f.degree() == 0) return;
    if (f.degree() == 1) {
        out.push_back(f.coeff(0));  // root of x + c is c
        return;
    }
    for (int attempt = 0; attempt < 256; ++attempt) {
        const Fq c = Fq{static_cast<std::uint8_t>(m),
                        static_cast<std::uint32_t>(rng() & ((std::uint64_t{1} << m) - 1))};
        if (is_zero(c)) continue;
        // T = sum_{i<m} (c x)^(2^i) mod f
        FieldPoly t{m, {zero(m), c}};
        t = poly_mod(t, f);
        FieldPoly acc = t;
        for (int i = 1; i < m; ++i) {
            t = poly_mulmod(t, t, f);
            acc = poly_add(acc, t);
        }
        for (int shift = 0; shift < 2; ++shift) {
            FieldPoly target = shift ? poly_add(acc, poly_one(m)) : acc;
            FieldPoly g = poly_gcd(target, f);
            if (g.degree() > 0 && g.degree() < f.degree()) {
                linear_roots(g, rng, out);
                linear_roots(poly_divmod(f, g).first, rng, out);
                return;
            }
        }
    }
    throw Error("trace splitting did not converge");
}

} // namespace

RootList split_poly(const FieldPoly& p, std::uint64_t seed) {
    const int m0 = p.deg_field;
    if (p.is_zero() || !(p.coeffs.back() == one(m0)))
        throw Error("split_poly requires a monic polynomial");
    if (p.degree() > 12) throw UnsupportedDegree("split_poly limited to degree <= 12");
    RootList rl;
    rl.field_degree_used = m0;
    if (p.degree() == 0) return rl;

    std::vector<std::pair<FieldPoly, int>> sqf;
    squarefree_decomp(p, 1, sqf);

    // degrees of all irreducible factors, to size the splitting field
    struct Piece { FieldPoly factor_product; int irr_degree; int multiplicity; };
    std::vector<Piece> pieces;
    long split_deg = m0;
    for (const auto& [g, mult] : sqf) {
        for (const auto& [d, prod] : distinct_degree(g)) {
            pieces.push_back({prod, d, mult});
            split_deg = std::lcm(split_deg, static_cast<long>(m0) * d);
            if (split_deg > kMaxFieldDegree)
                throw UnsupportedDegree("splitting field exceeds tower bound");
        }
    }
    const int M = static_cast<int>(split_deg);

    std::mt19937_64 rng(seed);
    std::vector<std::pair<Fq, int>> roots;
    for (const Piece& pc : pieces) {
        std::vector<Fq> rs;
        linear_roots(poly_embed(pc.factor_product, M), rng, rs);
        for (const Fq& r : rs) roots.emplace_back(r, pc.multiplicity);
    }

    // express in the smallest tower field containing every root
    int mmin = 1;
    for (const auto& [r, mult] : roots) mmin = std::lcm(mmin, absolute_degree(r));
    for (auto& [r, mult] : roots) r = embed(project(r, absolute_degree(r)), mmin);

    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return a.first.bits < b.first.bits;
    });
    rl.roots = std::move(roots);
    rl.field_degree_used = mmin;
    return rl;
}

} // namespace gf
} // namespace strata
