#include "strata/dimension.hpp"

#include <array>
#include <cmath>
#include <unordered_set>

#include "strata/error.hpp"

namespace strata::dims {

std::uint64_t sl_order(int n, int m) {
    if (n * m > 20) throw BudgetExceeded("group order overflows the budgeted range");
    const std::uint64_t q = std::uint64_t{1} << m;
    std::uint64_t order = 1;
    for (int i = 0; i < n * (n - 1) / 2; ++i) order *= q;
    for (int k = 2; k <= n; ++k) {
        std::uint64_t qk = 1;
        for (int i = 0; i < k; ++i) qk *= q;
        order *= (qk - 1);
    }
    return order;
}

namespace {

// BFS state: matrices as flat arrays of residue bits, fields of degree <= 5
struct BfsCtx {
    int n, m;
    std::array<std::array<std::uint8_t, 32>, 32> mul{};

    explicit BfsCtx(int n_, int m_) : n(n_), m(m_) {
        for (std::uint32_t a = 0; a < (1u << m); ++a)
            for (std::uint32_t b = 0; b < (1u << m); ++b)
                mul[a][b] = static_cast<std::uint8_t>(gf::mul(gf::make(m, a), gf::make(m, b)).bits);
    }
};

using Flat = std::array<std::uint8_t, 16>;

std::uint64_t pack(const Flat& f, int cells, int m, int eps) {
    std::uint64_t key = static_cast<std::uint64_t>(eps);
    int shift = 1;
    for (int i = 0; i < cells; ++i, shift += m) key |= static_cast<std::uint64_t>(f[static_cast<std::size_t>(i)]) << shift;
    return key;
}

Flat unpack(std::uint64_t key, int cells, int m) {
    Flat f{};
    int shift = 1;
    const std::uint64_t mask = (std::uint64_t{1} << m) - 1;
    for (int i = 0; i < cells; ++i, shift += m) f[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((key >> shift) & mask);
    return f;
}

} // namespace

std::uint64_t orbit_size(const GroupElt& x, int m, std::uint64_t node_budget) {
    const int n = x.n();
    if (n > 4) throw UnsupportedRank("orbit BFS limited to n <= 4");
    if (n * n * m + 1 > 64 || m > 5) throw MemoryBudgetExceeded("state key too wide");
    if (m % x.deg() != 0) throw NonDivisibleDegree("element field does not embed in the BFS field");
    const GroupElt x0 = grp::embed(x, m);
    const BfsCtx ctx(n, m);
    const int cells = n * n;

    // generators: transvections I + c E_{ij} over a field basis c = g^t
    struct Gen { int i, j, a, b; std::uint8_t c; };
    std::vector<Gen> gens;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Fq c = gf::one(m);
            for (int t = 0; t < m; ++t) {
                gens.push_back(Gen{i, j, n - 1 - j, n - 1 - i, static_cast<std::uint8_t>(c.bits)});
                c = gf::mul(c, gf::gen(m));
            }
        }

    Flat start{};
    for (int i = 0; i < cells; ++i) start[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(x0.mat.e[static_cast<std::size_t>(i)].bits);
    const int eps = x0.eps;

    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1u << 16);
    std::vector<std::uint64_t> frontier{pack(start, cells, m, eps)};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (const std::uint64_t key : frontier) {
            const Flat f = unpack(key, cells, m);
            for (const Gen& g : gens) {
                Flat y = f;
                // left: row g.i += c * row g.j
                for (int col = 0; col < n; ++col)
                    y[static_cast<std::size_t>(g.i * n + col)] ^= ctx.mul[g.c][y[static_cast<std::size_t>(g.j * n + col)]];
                // right factor: tau^eps(E)^-1 = I + c E_{ab} (or E itself when eps=0)
                const int a = eps ? g.a : g.i;
                const int b = eps ? g.b : g.j;
                for (int row = 0; row < n; ++row)
                    y[static_cast<std::size_t>(row * n + b)] ^= ctx.mul[g.c][y[static_cast<std::size_t>(row * n + a)]];
                const std::uint64_t yk = pack(y, cells, m, eps);
                if (seen.insert(yk).second) {
                    next.push_back(yk);
                    if (seen.size() > node_budget) throw MemoryBudgetExceeded("orbit BFS exceeded the node budget");
                }
            }
        }
        frontier = std::move(next);
    }
    return seen.size();
}

DimensionEstimate orbit_dim(const GroupElt& x, const std::vector<int>& degrees, std::uint64_t node_budget) {
    if (degrees.size() < 2) throw NonIntegralSlope("need at least two degrees for a slope");
    DimensionEstimate est;
    est.method = "pointcount";
    for (int m : degrees) est.counts.emplace_back(m, orbit_size(x, m, node_budget));
    int dim = -1;
    for (std::size_t k = 0; k + 1 < est.counts.size(); ++k) {
        const auto [m1, s1] = est.counts[k];
        const auto [m2, s2] = est.counts[k + 1];
        const double slope = std::log2(static_cast<double>(s2) / static_cast<double>(s1)) / (m2 - m1);
        const int rounded = static_cast<int>(std::llround(slope));
        if (dim >= 0 && rounded != dim)
            throw NonIntegralSlope("orbit growth slopes disagree across degree pairs");
        dim = rounded;
    }
    est.dim = dim;
    return est;
}

std::uint64_t centralizer_order(const GroupElt& x, int m, std::uint64_t node_budget) {
    const std::uint64_t orbit = orbit_size(x, m, node_budget);
    const std::uint64_t group = sl_order(x.n(), m);
    if (group % orbit != 0) throw Error("orbit size does not divide the group order");
    return group / orbit;
}

int tangent_dim_bound(const GroupElt& x) {
    const int n = x.n();
    const int m = x.deg();
    const int nn = n * n;
    // equations E_{ij}: sum_k Y_{ik} X_{kj} + sum_l X_{il} dtau^eps(Y)_{lj} = 0
    // dtau(Y)_{lj} = Y_{n-1-j, n-1-l}
    Mat sys = Mat::zero(nn + 1, m);  // (nn+1) x nn system, padded square below
    std::vector<std::vector<Fq>> rows(static_cast<std::size_t>(nn) + 1,
                                      std::vector<Fq>(static_cast<std::size_t>(nn), gf::zero(m)));
    auto col = [n](int a, int b) { return a * n + b; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto& row = rows[static_cast<std::size_t>(col(i, j))];
            for (int k = 0; k < n; ++k)
                row[static_cast<std::size_t>(col(i, k))] =
                    gf::add(row[static_cast<std::size_t>(col(i, k))], x.mat.at(k, j));
            for (int l = 0; l < n; ++l) {
                const int a = x.eps ? n - 1 - j : l;
                const int b = x.eps ? n - 1 - l : j;
                row[static_cast<std::size_t>(col(a, b))] =
                    gf::add(row[static_cast<std::size_t>(col(a, b))], x.mat.at(i, l));
            }
        }
    for (int i = 0; i < n; ++i)
        rows[static_cast<std::size_t>(nn)][static_cast<std::size_t>(col(i, i))] = gf::one(m);

    // rank by elimination
    int rank = 0;
    for (int c = 0; c < nn && rank <= nn; ++c) {
        int piv = -1;
        for (int r = rank; r <= nn; ++r)
            if (!gf::is_zero(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)])) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(piv)]);
        const Fq pinv = gf::inv(rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
        for (int r = 0; r <= nn; ++r) {
            if (r == rank) continue;
            const Fq f = gf::mul(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], pinv);
            if (gf::is_zero(f)) continue;
            for (int cc = 0; cc < nn; ++cc)
                rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] = gf::add(
                    rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)],
                    gf::mul(f, rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)]));
        }
        ++rank;
    }
    (void)sys;
    return nn - rank;
}

} // namespace strata::dims
