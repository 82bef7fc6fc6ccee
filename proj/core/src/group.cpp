// Matrix layer and group operations for SL(n) ⋊ <tau>.
#include "strata/group.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "strata/error.hpp"

namespace strata {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(std::string("internal invariant violated: ") + what);
}

} // namespace

// --- Mat -------------------------------------------------------------------

Mat Mat::zero(int n, int deg) {
    Mat m;
    m.n = n;
    m.deg = deg;
    m.e.assign(static_cast<std::size_t>(n) * n, gf::zero(deg));
    return m;
}

Mat Mat::identity(int n, int deg) {
    Mat m = zero(n, deg);
    for (int i = 0; i < n; ++i) m.at(i, i) = gf::one(deg);
    return m;
}

namespace mat {

Mat mul(const Mat& a, const Mat& b) {
    if (a.n != b.n) throw RankMismatch();
    if (a.deg != b.deg) throw NonDivisibleDegree("matrix degree mismatch; embed first");
    Mat r = Mat::zero(a.n, a.deg);
    for (int i = 0; i < a.n; ++i)
        for (int k = 0; k < a.n; ++k) {
            const Fq aik = a.at(i, k);
            if (gf::is_zero(aik)) continue;
            for (int j = 0; j < a.n; ++j)
                r.at(i, j) = gf::add(r.at(i, j), gf::mul(aik, b.at(k, j)));
        }
    return r;
}

Mat add(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < r.e.size(); ++i) r.e[i] = gf::add(r.e[i], b.e[i]);
    return r;
}

Fq det(const Mat& a) {
    Mat w = a;
    Fq d = gf::one(a.deg);
    int row = 0;
    for (int col = 0; col < a.n && row < a.n; ++col) {
        int piv = -1;
        for (int i = row; i < a.n; ++i)
            if (!gf::is_zero(w.at(i, col))) { piv = i; break; }
        if (piv < 0) return gf::zero(a.deg);
        if (piv != row)
            for (int j = 0; j < a.n; ++j) std::swap(w.at(piv, j), w.at(row, j));
        // char 2: row swaps do not flip the sign
        d = gf::mul(d, w.at(row, col));
        const Fq pinv = gf::inv(w.at(row, col));
        for (int i = row + 1; i < a.n; ++i) {
            const Fq f = gf::mul(w.at(i, col), pinv);
            if (gf::is_zero(f)) continue;
            for (int j = col; j < a.n; ++j)
                w.at(i, j) = gf::add(w.at(i, j), gf::mul(f, w.at(row, j)));
        }
        ++row;
    }
    return row == a.n ? d : gf::zero(a.deg);
}

Mat inverse(const Mat& a) {
    Mat w = a;
    Mat inv = Mat::identity(a.n, a.deg);
    for (int col = 0; col < a.n; ++col) {
        int piv = -1;
        for (int i = col; i < a.n; ++i)
            if (!gf::is_zero(w.at(i, col))) { piv = i; break; }
        if (piv < 0) throw SingularMatrix();
        if (piv != col)
            for (int j = 0; j < a.n; ++j) {
                std::swap(w.at(piv, j), w.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        const Fq pinv = gf::inv(w.at(col, col));
        for (int j = 0; j < a.n; ++j) {
            w.at(col, j) = gf::mul(w.at(col, j), pinv);
            inv.at(col, j) = gf::mul(inv.at(col, j), pinv);
        }
        for (int i = 0; i < a.n; ++i) {
            if (i == col) continue;
            const Fq f = w.at(i, col);
            if (gf::is_zero(f)) continue;
            for (int j = 0; j < a.n; ++j) {
                w.at(i, j) = gf::add(w.at(i, j), gf::mul(f, w.at(col, j)));
                inv.at(i, j) = gf::add(inv.at(i, j), gf::mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

Mat transpose(const Mat& a) {
    Mat r = a;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.at(i, j) = a.at(j, i);
    return r;
}

Mat antidiag_identity(int n, int deg) {
    Mat r = Mat::zero(n, deg);
    for (int i = 0; i < n; ++i) r.at(i, n - 1 - i) = gf::one(deg);
    return r;
}

Mat rev_conj(const Mat& a) {
    Mat r = a;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j) r.at(i, j) = a.at(a.n - 1 - i, a.n - 1 - j);
    return r;
}

Mat embed(const Mat& a, int m_target) {
    Mat r = a;
    r.deg = m_target;
    for (Fq& x : r.e) x = gf::embed(x, m_target);
    return r;
}

bool is_upper_triangular(const Mat& a) {
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < i; ++j)
            if (!gf::is_zero(a.at(i, j))) return false;
    return true;
}

bool is_unitriangular(const Mat& a) {
    if (!is_upper_triangular(a)) return false;
    for (int i = 0; i < a.n; ++i)
        if (!(a.at(i, i) == gf::one(a.deg))) return false;
    return true;
}

bool is_diagonal(const Mat& a) {
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (i != j && !gf::is_zero(a.at(i, j))) return false;
    return true;
}

Mat diag(int deg, const std::vector<Fq>& entries) {
    Mat r = Mat::zero(static_cast<int>(entries.size()), deg);
    for (int i = 0; i < r.n; ++i) r.at(i, i) = entries[static_cast<std::size_t>(i)];
    return r;
}

std::vector<std::vector<Fq>> kernel(const Mat& a) {
    const int n = a.n;
    Mat w = a;
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int piv = -1;
        for (int i = row; i < n; ++i)
            if (!gf::is_zero(w.at(i, col))) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != row)
            for (int j = 0; j < n; ++j) std::swap(w.at(piv, j), w.at(row, j));
        const Fq pinv = gf::inv(w.at(row, col));
        for (int j = 0; j < n; ++j) w.at(row, j) = gf::mul(w.at(row, j), pinv);
        for (int i = 0; i < n; ++i) {
            if (i == row) continue;
            const Fq f = w.at(i, col);
            if (gf::is_zero(f)) continue;
            for (int j = 0; j < n; ++j)
                w.at(i, j) = gf::add(w.at(i, j), gf::mul(f, w.at(row, j)));
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<std::vector<Fq>> basis;
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    for (int freec = 0; freec < n; ++freec) {
        if (is_pivot[static_cast<std::size_t>(freec)]) continue;
        std::vector<Fq> v(static_cast<std::size_t>(n), gf::zero(a.deg));
        v[static_cast<std::size_t>(freec)] = gf::one(a.deg);
        for (std::size_t r2 = 0; r2 < pivot_col.size(); ++r2)
            v[static_cast<std::size_t>(pivot_col[r2])] = w.at(static_cast<int>(r2), freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

FieldPoly char_poly(const Mat& a) {
    // entries of x*I + A as degree <= 1 polynomials (char 2, signs vanish)
    const int n = a.n;
    std::vector<FieldPoly> p(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<Fq> cs = {a.at(i, j)};
            if (i == j) cs.push_back(gf::one(a.deg));
            p[static_cast<std::size_t>(i * n + j)] = gf::poly_make(a.deg, std::move(cs));
        }
    // Laplace expansion on shrinking index sets
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j;
    auto rec = [&](auto&& self, int row, std::vector<int> cs) -> FieldPoly {
        if (cs.empty()) return gf::poly_one(a.deg);
        FieldPoly acc = gf::poly_zero(a.deg);
        for (std::size_t k = 0; k < cs.size(); ++k) {
            const FieldPoly& entry = p[static_cast<std::size_t>(row * n + cs[k])];
            if (entry.is_zero()) continue;
            std::vector<int> rest = cs;
            rest.erase(rest.begin() + static_cast<long>(k));
            acc = gf::poly_add(acc, gf::poly_mul(entry, self(self, row + 1, std::move(rest))));
        }
        return acc;
    };
    return rec(rec, 0, cols);
}

Mat block(const Mat& a, int r0, int r1, int c0, int c1) {
    Mat b = Mat::zero(r1 - r0, a.deg);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) b.at(i - r0, j - c0) = a.at(i, j);
    return b;
}

void set_block(Mat& a, int r0, int c0, const Mat& b) {
    for (int i = 0; i < b.n; ++i)
        for (int j = 0; j < b.n; ++j) a.at(r0 + i, c0 + j) = b.at(i, j);
}

} // namespace mat

// --- group layer -------------------------------------------------------

namespace grp {

GroupElt identity(int n, int deg) { return GroupElt{Mat::identity(n, deg), 0}; }
GroupElt tau(int n, int deg) { return GroupElt{Mat::identity(n, deg), 1}; }

GroupElt make(Mat m, int eps) {
    if (!(mat::det(m) == gf::one(m.deg))) throw SingularMatrix("determinant is not 1");
    return GroupElt{std::move(m), eps & 1};
}

Mat tau_twist(const Mat& x) {
    return mat::rev_conj(mat::transpose(mat::inverse(x)));
}

GroupElt compose(const GroupElt& x, const GroupElt& y) {
    if (x.n() != y.n()) throw RankMismatch();
    const Mat& ym = y.mat;
    Mat prod = mat::mul(x.mat, x.eps ? tau_twist(ym) : ym);
    return GroupElt{std::move(prod), (x.eps + y.eps) & 1};
}

GroupElt inverse(const GroupElt& x) {
    Mat mi = mat::inverse(x.mat);
    return GroupElt{x.eps ? tau_twist(mi) : std::move(mi), x.eps};
}

GroupElt conjugate(const GroupElt& g, const GroupElt& x) {
    return compose(compose(g, x), inverse(g));
}

GroupElt pow(const GroupElt& x, std::uint64_t k) {
    GroupElt r = identity(x.n(), x.deg());
    GroupElt base = x;
    while (k) {
        if (k & 1) r = compose(r, base);
        base = compose(base, base);
        k >>= 1;
    }
    return r;
}

GroupElt embed(const GroupElt& x, int m_target) {
    return GroupElt{mat::embed(x.mat, m_target), x.eps};
}

std::uint64_t order(const GroupElt& x) {
    const GroupElt id = identity(x.n(), x.deg());
    GroupElt y = x;
    std::uint64_t k = 1;
    while (!(y == id)) {
        y = compose(y, x);
        ++k;
        if (k > (std::uint64_t{1} << 26)) throw BudgetExceeded("element order exceeds budget");
    }
    return k;
}

namespace {

std::uint64_t modinv(std::uint64_t a, std::uint64_t m) {
    long long t = 0, newt = 1;
    long long r = static_cast<long long>(m), newr = static_cast<long long>(a % m);
    while (newr != 0) {
        const long long q = r / newr;
        t -= q * newt; std::swap(t, newt);
        r -= q * newr; std::swap(r, newr);
    }
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<std::uint64_t>(t);
}

} // namespace

JordanPair jordan_decompose(const GroupElt& x) {
    const std::uint64_t N = order(x);
    const int e = std::countr_zero(N);
    const std::uint64_t r = N >> e;
    GroupElt s = identity(x.n(), x.deg());
    GroupElt u = identity(x.n(), x.deg());
    if (r > 1) {
        const std::uint64_t c = modinv((std::uint64_t{1} << e) % r, r);
        s = pow(x, (std::uint64_t{1} << e) * c);
    }
    if (e > 0) {
        const std::uint64_t two_e = std::uint64_t{1} << e;
        const std::uint64_t d = modinv(r % two_e, two_e);
        u = pow(x, r * d);
    } else {
        s = x;  // odd order: x is its own semisimple part
    }
    require(compose(s, u) == x, "jordan parts do not recompose");
    require(compose(s, u) == compose(u, s), "jordan parts do not commute");
    return JordanPair{std::move(s), std::move(u)};
}

// --- diagonalization -----------------------------------------------------

namespace {

struct EigenData {
    Fq value;
    int multiplicity;
};

// canonical sort key for a single eigenvalue
std::pair<int, std::uint32_t> eigen_key(const Fq& v) {
    return {gf::absolute_degree(v), v.bits};
}

} // namespace

DiagForm diagonalize_semisimple(const GroupElt& s, bool mirror_paired) {
    if (s.eps != 0) throw Error("diagonalize_semisimple expects an eps=0 element");
    const int n = s.n();
    gf::RootList rl;
    try {
        rl = gf::split_poly(mat::char_poly(s.mat));
    } catch (const UnsupportedDegree&) {
        throw FieldTowerExceeded("eigenvalues exceed the field tower");
    }
    int L;
    try {
        L = gf::common_degree(s.deg(), rl.field_degree_used);
    } catch (const UnsupportedDegree&) {
        throw FieldTowerExceeded("eigenvector field exceeds the tower");
    }

    std::vector<EigenData> eig;
    for (const auto& [root, mult] : rl.roots)
        eig.push_back({gf::embed(root, L), mult});

    // arrange eigenvalue order
    std::vector<Fq> arranged;
    const Fq one = gf::one(L);
    if (mirror_paired) {
        std::map<std::pair<int, std::uint32_t>, std::pair<Fq, int>> pairs;  // key -> (top value, mult)
        int ones_mult = 0;
        for (const auto& ed : eig) {
            if (ed.value == one) { ones_mult = ed.multiplicity; continue; }
            const Fq invv = gf::inv(ed.value);
            const Fq rep = ed.value.bits <= invv.bits ? ed.value : invv;
            auto it = pairs.find(eigen_key(rep));
            if (it == pairs.end()) {
                pairs.emplace(eigen_key(rep), std::make_pair(rep, ed.multiplicity));
            } else if (it->second.second != ed.multiplicity) {
                throw Error("spectrum is not inverse-closed with matching multiplicities");
            }
        }
        for (const auto& [key, pm] : pairs)
            for (int k = 0; k < pm.second; ++k) arranged.push_back(pm.first);
        for (int k = 0; k < ones_mult; ++k) arranged.push_back(one);
        for (auto it = pairs.rbegin(); it != pairs.rend(); ++it)
            for (int k = 0; k < it->second.second; ++k) arranged.push_back(gf::inv(it->second.first));
    } else {
        std::sort(eig.begin(), eig.end(), [](const EigenData& a, const EigenData& b) {
            return eigen_key(a.value) < eigen_key(b.value);
        });
        for (const auto& ed : eig)
            for (int k = 0; k < ed.multiplicity; ++k) arranged.push_back(ed.value);
    }
    require(static_cast<int>(arranged.size()) == n, "eigenvalue multiplicities do not sum to n");

    // eigenvector basis, one kernel computation per distinct eigenvalue
    const Mat sL = mat::embed(s.mat, L);
    std::map<std::uint32_t, std::vector<std::vector<Fq>>> spaces;
    Mat b = Mat::zero(n, L);
    int col = 0;
    std::map<std::uint32_t, int> used;
    for (const Fq& lam : arranged) {
        auto it = spaces.find(lam.bits);
        if (it == spaces.end()) {
            Mat shifted = sL;
            for (int i = 0; i < n; ++i) shifted.at(i, i) = gf::add(shifted.at(i, i), lam);
            it = spaces.emplace(lam.bits, mat::kernel(shifted)).first;
        }
        const int k = used[lam.bits]++;
        require(k < static_cast<int>(it->second.size()), "matrix is not semisimple (eigenspace too small)");
        for (int i = 0; i < n; ++i) b.at(i, col) = it->second[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
        ++col;
    }

    // scale one column to land the basis in SL(n)
    const Fq d = mat::det(b);
    if (gf::is_zero(d)) throw Error("eigenvector matrix singular");
    const Fq fix = gf::inv(d);
    for (int i = 0; i < n; ++i) b.at(i, n - 1) = gf::mul(b.at(i, n - 1), fix);

    DiagForm df;
    df.field_degree = L;
    df.d = mat::diag(L, arranged);
    df.basis_inv = mat::inverse(b);
    df.runs.begin.push_back(0);
    for (int i = 1; i < n; ++i)
        if (!(arranged[static_cast<std::size_t>(i)] == arranged[static_cast<std::size_t>(i - 1)]))
            df.runs.begin.push_back(i);
    df.runs.begin.push_back(n);
    require(mat::mul(mat::mul(df.basis_inv, sL), b) == df.d, "diagonalization failed");
    return df;
}

// --- triangularization ---------------------------------------------------

Mat unitriangularize(const Mat& z) {
    const int h = z.n;
    Mat nil = z;
    for (int i = 0; i < h; ++i) nil.at(i, i) = gf::add(nil.at(i, i), gf::one(z.deg));
    // assemble a basis adapted to the kernel filtration of (z - I)
    Mat p = Mat::zero(h, z.deg);
    int col = 0;
    Mat powk = Mat::identity(h, z.deg);
    std::vector<std::vector<Fq>> chosen;
    auto independent = [&](const std::vector<Fq>& v) {
        // rank test of chosen + v by elimination
        std::vector<std::vector<Fq>> rows = chosen;
        rows.push_back(v);
        int rank = 0;
        for (int c = 0; c < h && rank < static_cast<int>(rows.size()); ++c) {
            int piv = -1;
            for (int i = rank; i < static_cast<int>(rows.size()); ++i)
                if (!gf::is_zero(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)])) { piv = i; break; }
            if (piv < 0) continue;
            std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
            const Fq pin = gf::inv(rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == rank) continue;
                const Fq f = gf::mul(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)], pin);
                if (gf::is_zero(f)) continue;
                for (int j = 0; j < h; ++j)
                    rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = gf::add(
                        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                        gf::mul(f, rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]));
            }
            ++rank;
        }
        return rank == static_cast<int>(rows.size());
    };
    for (int k = 1; k <= h && col < h; ++k) {
        powk = mat::mul(powk, nil);  // (z - I)^k
        for (const auto& v : mat::kernel(powk)) {
            if (col >= h) break;
            if (!independent(v)) continue;
            chosen.push_back(v);
            for (int i = 0; i < h; ++i) p.at(i, col) = v[static_cast<std::size_t>(i)];
            ++col;
        }
    }
    require(col == h, "matrix is not unipotent");
    Mat q = mat::inverse(p);
    require(mat::is_unitriangular(mat::mul(mat::mul(q, z), p)), "unitriangularization failed");
    return q;
}

namespace {

// solve y^2 + y = c over GF(2^M); empty when Tr(c) = 1
std::optional<Fq> solve_artin_schreier(const Fq& c) {
    const int m = c.deg;
    // bit-linear map y -> y^2 + y on the basis g^i
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(m), 0);  // row i: equation for bit i, bit m = rhs
    for (int j = 0; j < m; ++j) {
        const Fq gj = gf::make(m, std::uint32_t{1} << j);
        const Fq im = gf::add(gf::frobenius(gj), gj);
        for (int i = 0; i < m; ++i)
            if ((im.bits >> i) & 1) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
    }
    for (int i = 0; i < m; ++i)
        if ((c.bits >> i) & 1) rows[static_cast<std::size_t>(i)] |= std::uint64_t{1} << m;
    int rank = 0;
    std::vector<int> pivots;
    for (int col = 0; col < m; ++col) {
        int piv = -1;
        for (int i = rank; i < m; ++i)
            if ((rows[static_cast<std::size_t>(i)] >> col) & 1) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
        for (int i = 0; i < m; ++i)
            if (i != rank && ((rows[static_cast<std::size_t>(i)] >> col) & 1))
                rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(rank)];
        pivots.push_back(col);
        ++rank;
    }
    for (int i = rank; i < m; ++i)
        if (rows[static_cast<std::size_t>(i)] >> m) return std::nullopt;
    std::uint32_t y = 0;
    for (int i = 0; i < rank; ++i)
        if ((rows[static_cast<std::size_t>(i)] >> m) & 1) y |= std::uint32_t{1} << pivots[static_cast<std::size_t>(i)];
    return gf::make(m, y);
}

Fq quad_value(const Mat& mq, const std::vector<Fq>& v) {
    // v^T mq v
    Fq acc = gf::zero(mq.deg);
    for (int i = 0; i < mq.n; ++i) {
        if (gf::is_zero(v[static_cast<std::size_t>(i)])) continue;
        for (int j = 0; j < mq.n; ++j)
            acc = gf::add(acc, gf::mul(v[static_cast<std::size_t>(i)],
                                       gf::mul(mq.at(i, j), v[static_cast<std::size_t>(j)])));
    }
    return acc;
}

// isotropic (q(v)=0) nonzero vector in the span of `basis`, or empty if the
// current field is too small (Artin-Schreier obstruction)
std::optional<std::vector<Fq>> find_isotropic(const Mat& mq, const std::vector<std::vector<Fq>>& basis) {
    const int deg = mq.deg;
    const int d = static_cast<int>(basis.size());
    std::vector<Fq> qv(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        qv[static_cast<std::size_t>(i)] = quad_value(mq, basis[static_cast<std::size_t>(i)]);
        if (gf::is_zero(qv[static_cast<std::size_t>(i)])) return basis[static_cast<std::size_t>(i)];
    }
    auto bil = [&](int i, int j) {
        // beta(x,y) = q(x+y) - q(x) - q(y)
        std::vector<Fq> sum(basis[static_cast<std::size_t>(i)]);
        for (std::size_t k = 0; k < sum.size(); ++k)
            sum[k] = gf::add(sum[k], basis[static_cast<std::size_t>(j)][k]);
        return gf::add(gf::add(quad_value(mq, sum), qv[static_cast<std::size_t>(i)]), qv[static_cast<std::size_t>(j)]);
    };
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const Fq beta = bil(i, j);
            if (gf::is_zero(beta)) continue;
            // v = x b_i + b_j with x^2 q_i + x beta + q_j = 0
            const Fq qi = qv[static_cast<std::size_t>(i)], qj = qv[static_cast<std::size_t>(j)];
            const Fq c = gf::mul(gf::mul(qi, qj), gf::inv(gf::mul(beta, beta)));
            auto y = solve_artin_schreier(c);
            if (!y) continue;
            const Fq x = gf::mul(gf::mul(beta, gf::inv(qi)), *y);
            std::vector<Fq> v(basis[static_cast<std::size_t>(j)]);
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] = gf::add(v[k], gf::mul(x, basis[static_cast<std::size_t>(i)][k]));
            if (gf::is_zero(quad_value(mq, v))) return v;
        }
    // all pairwise beta vanish (or Artin-Schreier blocked): additive case
    if (d >= 2) {
        bool all_beta_zero = true;
        for (int i = 0; i < d && all_beta_zero; ++i)
            for (int j = i + 1; j < d && all_beta_zero; ++j)
                if (!gf::is_zero(bil(i, j))) all_beta_zero = false;
        if (all_beta_zero) {
            // q(c1 b1 + c2 b2) = c1^2 q1 + c2^2 q2; take c1 = sqrt(q2), c2 = sqrt(q1)
            std::vector<Fq> v(static_cast<std::size_t>(mq.n), gf::zero(deg));
            const Fq c1 = gf::sqrt(qv[1]), c2 = gf::sqrt(qv[0]);
            for (std::size_t k = 0; k < v.size(); ++k)
                v[k] = gf::add(gf::mul(c1, basis[0][k]), gf::mul(c2, basis[1][k]));
            require(gf::is_zero(quad_value(mq, v)), "additive isotropic construction failed");
            return v;
        }
    }
    return std::nullopt;
}

} // namespace

Mat twisted_triangularize(const Mat& z0) {
    const int h = z0.n;
    if (h == 0) return z0;
    if (h == 1) {
        const Fq w = gf::inv(gf::sqrt(z0.at(0, 0)));
        Mat r = Mat::identity(1, z0.deg);
        r.at(0, 0) = w;
        return r;
    }
    Mat z = z0;
    while (true) {
        const int deg = z.deg;
        const Mat j_id = mat::antidiag_identity(h, deg);
        const Mat nsq = mat::mul(z, tau_twist(z));  // the square of (z, tau)
        Mat nil = nsq;
        for (int i = 0; i < h; ++i) nil.at(i, i) = gf::add(nil.at(i, i), gf::one(deg));
        const auto fixed = mat::kernel(nil);
        require(!fixed.empty(), "(z,tau) square is not unipotent");
        const Mat mq = mat::mul(mat::transpose(mat::inverse(z)), j_id);
        auto v = find_isotropic(mq, fixed);
        if (!v) {
            // Artin-Schreier obstruction: double the field and retry
            int next;
            try {
                next = gf::common_degree(deg, 2 * deg);
            } catch (const UnsupportedDegree&) {
                throw FieldTowerExceeded("twisted triangularization needs a field beyond the tower");
            }
            z = mat::embed(z, next);
            continue;
        }
        // hyperplane H = z J ann(v); v lies in H by isotropy
        Mat vrow = Mat::zero(h, deg);
        for (int jj = 0; jj < h; ++jj) vrow.at(0, jj) = (*v)[static_cast<std::size_t>(jj)];
        const auto annv = mat::kernel(vrow);  // h-1 independent vectors
        const Mat zj = mat::mul(z, j_id);
        std::vector<std::vector<Fq>> hbasis;
        for (const auto& w : annv) {
            std::vector<Fq> hw(static_cast<std::size_t>(h), gf::zero(deg));
            for (int i = 0; i < h; ++i)
                for (int k = 0; k < h; ++k)
                    hw[static_cast<std::size_t>(i)] = gf::add(hw[static_cast<std::size_t>(i)],
                                                              gf::mul(zj.at(i, k), w[static_cast<std::size_t>(k)]));
            hbasis.push_back(std::move(hw));
        }
        // columns: v, then completion of v within H, then one outside vector
        Mat cmat = Mat::zero(h, deg);
        for (int i = 0; i < h; ++i) cmat.at(i, 0) = (*v)[static_cast<std::size_t>(i)];
        int col = 1;
        auto try_col = [&](const std::vector<Fq>& cand) {
            for (int i = 0; i < h; ++i) cmat.at(i, col) = cand[static_cast<std::size_t>(i)];
            Mat test = mat::block(cmat, 0, h, 0, col + 1);
            // rank by kernel: full column rank iff kernel of (h x (col+1)) slice trivial
            Mat padded = Mat::zero(h, deg);
            for (int i = 0; i < h; ++i)
                for (int jj = 0; jj <= col; ++jj) padded.at(i, jj) = cmat.at(i, jj);
            const auto ker = mat::kernel(padded);
            // padded has h - (col+1) zero columns contributing free vectors
            if (static_cast<int>(ker.size()) == h - (col + 1)) { ++col; return true; }
            for (int i = 0; i < h; ++i) cmat.at(i, col) = gf::zero(deg);
            return false;
        };
        for (const auto& hv : hbasis) {
            if (col >= h - 1) break;
            try_col(hv);
        }
        require(col == h - 1, "hyperplane completion failed");
        for (int i = 0; i < h && col < h; ++i) {
            std::vector<Fq> ei(static_cast<std::size_t>(h), gf::zero(deg));
            ei[static_cast<std::size_t>(i)] = gf::one(deg);
            if (try_col(ei)) break;
        }
        require(col == h, "basis completion failed");
        const Mat cinv = mat::inverse(cmat);
        // conjugating (z, tau) by (a, 0) sends z to a z tau_twist(a)^-1
        Mat z1 = mat::mul(mat::mul(cinv, z), tau_twist(cmat));
        // invariant shape: first column a*e1, last row b*e_h, a = b
        for (int i = 1; i < h; ++i) require(gf::is_zero(z1.at(i, 0)), "stable line failed");
        for (int jj = 0; jj + 1 < h; ++jj) require(gf::is_zero(z1.at(h - 1, jj)), "stable hyperplane failed");
        require(z1.at(0, 0) == z1.at(h - 1, h - 1), "corner entries differ");

        Mat wtotal = cinv;
        if (h > 2) {
            const Mat mid = mat::block(z1, 1, h - 1, 1, h - 1);
            Mat wm = twisted_triangularize(mid);
            if (wm.deg != z1.deg) z1 = mat::embed(z1, wm.deg);
            Mat w1 = Mat::identity(h, z1.deg);
            mat::set_block(w1, 1, 1, wm);
            z1 = mat::mul(mat::mul(w1, z1), tau_twist(mat::inverse(w1)));
            if (wtotal.deg != w1.deg) wtotal = mat::embed(wtotal, w1.deg);
            wtotal = mat::mul(w1, wtotal);
        }
        // kill the corner scalar
        Mat f = Mat::identity(h, z1.deg);
        f.at(0, 0) = gf::inv(z1.at(0, 0));
        z1 = mat::mul(mat::mul(f, z1), tau_twist(mat::inverse(f)));
        wtotal = mat::mul(f, wtotal);
        require(mat::is_unitriangular(z1), "twisted triangularization failed");
        return wtotal;
    }
}

// --- normal form ---------------------------------------------------------

namespace {

// does this diagonal value vector already sit in canonical mirror order?
bool canonical_mirror(const std::vector<Fq>& vals) {
    const int n = static_cast<int>(vals.size());
    const Fq one = gf::one(vals[0].deg);
    for (int i = 0; i < n; ++i)
        if (!(gf::mul(vals[static_cast<std::size_t>(i)], vals[static_cast<std::size_t>(n - 1 - i)]) == one))
            return false;
    // pairs must appear grouped, sorted by the canonical key, tops first, with
    // the 1-run in the middle
    std::vector<std::pair<std::pair<int, std::uint32_t>, Fq>> tops;
    int i = 0;
    const int mid_lo = n / 2;
    while (i < n / 2) {
        const Fq v = vals[static_cast<std::size_t>(i)];
        if (v == one) return false;  // ones belong to the middle run only
        const Fq invv = gf::inv(v);
        const Fq rep = v.bits <= invv.bits ? v : invv;
        if (!(rep == v)) return false;  // top half carries the min representative
        int j = i;
        while (j < mid_lo && vals[static_cast<std::size_t>(j)] == v) ++j;
        tops.push_back({{gf::absolute_degree(v), v.bits}, v});
        i = j;
    }
    for (std::size_t k = 0; k + 1 < tops.size(); ++k) {
        if (!(tops[k].first < tops[k + 1].first)) return false;
        if (tops[k].second == tops[k + 1].second) return false;
    }
    // middle must be exactly the 1-run
    for (int k = static_cast<int>(i); k < n - static_cast<int>(i); ++k)
        if (!(vals[static_cast<std::size_t>(k)] == one)) return false;
    return true;
}

Mat theta_block(const Mat& a) { return tau_twist(a); }

} // namespace

NormalForm normal_form_tu_tau(const GroupElt& x) {
    if (x.eps != 1) throw Error("normal_form_tu_tau expects an element of the tau coset");
    const int n = x.n();

    // fast path: already in normal form
    if (mat::is_upper_triangular(x.mat)) {
        std::vector<Fq> vals;
        for (int i = 0; i < n; ++i) vals.push_back(x.mat.at(i, i));
        bool ok = canonical_mirror(vals);
        if (ok) {
            const Mat t = mat::diag(x.deg(), vals);
            const Mat u = mat::mul(mat::inverse(t), x.mat);
            if (mat::is_unitriangular(u) && mat::mul(t, u) == mat::mul(u, t))
                return NormalForm{t, u, identity(n, x.deg()), x.deg()};
        }
    }

    JordanPair jp = jordan_decompose(x);
    DiagForm df = diagonalize_semisimple(jp.s, true);
    int L = df.field_degree;
    GroupElt x1 = conjugate(GroupElt{df.basis_inv, 0}, embed(x, L));
    Mat v = mat::mul(mat::inverse(df.d), x1.mat);

    // v must be block diagonal on the runs
    const EigenRuns& runs = df.runs;
    const int nb = runs.count();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int bi = 0, bj = 0;
            while (runs.begin[static_cast<std::size_t>(bi + 1)] <= i) ++bi;
            while (runs.begin[static_cast<std::size_t>(bj + 1)] <= j) ++bj;
            if (bi != bj && !gf::is_zero(v.at(i, j)))
                throw Error("unipotent part does not centralize the diagonal part");
        }

    const bool has_middle = (nb % 2) == 1;
    const int npairs = nb / 2;

    // middle first: it may extend the field
    Mat wmid;
    int mid_lo = 0, mid_hi = 0;
    if (has_middle) {
        mid_lo = runs.begin[static_cast<std::size_t>(npairs)];
        mid_hi = runs.begin[static_cast<std::size_t>(npairs + 1)];
        wmid = twisted_triangularize(mat::block(v, mid_lo, mid_hi, mid_lo, mid_hi));
        if (wmid.deg != L) {
            L = wmid.deg;
            x1 = embed(x1, L);
            v = mat::embed(v, L);
            df.d = mat::embed(df.d, L);
            df.basis_inv = mat::embed(df.basis_inv, L);
        }
    }

    Mat conj_blocks = Mat::identity(n, L);
    if (has_middle) mat::set_block(conj_blocks, mid_lo, mid_lo, wmid);
    for (int k = 0; k < npairs; ++k) {
        const int a0 = runs.begin[static_cast<std::size_t>(k)], a1 = runs.begin[static_cast<std::size_t>(k + 1)];
        const int b1 = runs.begin[static_cast<std::size_t>(nb - k)], b0 = runs.begin[static_cast<std::size_t>(nb - k - 1)];
        const Mat atop = mat::block(v, a0, a1, a0, a1);
        const Mat abot = mat::block(v, b0, b1, b0, b1);
        Mat norm = mat::mul(abot, theta_block(atop));  // unipotent by construction
        const Mat q = unitriangularize(norm);
        mat::set_block(conj_blocks, b0, b0, q);
        mat::set_block(conj_blocks, a0, a0, mat::mul(theta_block(q), mat::inverse(atop)));
    }

    GroupElt x2 = conjugate(GroupElt{conj_blocks, 0}, x1);
    const Mat t = df.d;
    const Mat u = mat::mul(mat::inverse(t), x2.mat);
    require(mat::is_unitriangular(u), "normal form unipotent part not unitriangular");
    require(mat::mul(t, u) == mat::mul(u, t), "normal form parts do not commute");
    GroupElt conj = GroupElt{mat::mul(conj_blocks, df.basis_inv), 0};
    require(mat::det(conj.mat) == gf::one(L), "conjugator left SL(n)");
    return NormalForm{t, u, conj, L};
}

std::uint64_t pack_key(const GroupElt& x) {
    const int n = x.n(), m = x.deg();
    require(n * n * m + 1 <= 64, "element does not fit the packed key");
    std::uint64_t key = static_cast<std::uint64_t>(x.eps);
    int shift = 1;
    for (const Fq& v : x.mat.e) {
        key |= static_cast<std::uint64_t>(v.bits) << shift;
        shift += m;
    }
    return key;
}

} // namespace grp
} // namespace strata
