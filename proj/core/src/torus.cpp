#include "strata/torus.hpp"

#include <algorithm>
#include <map>

#include "strata/error.hpp"

namespace strata {

int LeviDescriptor::dim() const {
    int d = -1;  // det-1 condition
    for (const auto& b : blocks) d += static_cast<int>(b.size()) * static_cast<int>(b.size());
    return d;
}

namespace torus {

Subtorus saturate(int n, intlat::Mat rows) {
    for (auto& r : rows) r.resize(static_cast<std::size_t>(n), 0);
    // saturation of the row space = kernel of its integer kernel; adding the
    // all-ones row to the middle matrix cuts with {sum = 0}
    intlat::Mat perp = intlat::kernel(rows, n);
    perp.push_back(intlat::Row(static_cast<std::size_t>(n), 1));
    return Subtorus{n, intlat::kernel(perp, n)};
}

namespace {

// rows cutting out {v constant on each run}
void run_constancy_rows(const grp::EigenRuns& runs, int n, intlat::Mat& rows) {
    for (int k = 0; k < runs.count(); ++k)
        for (int p = runs.begin[static_cast<std::size_t>(k)]; p + 1 < runs.begin[static_cast<std::size_t>(k + 1)]; ++p) {
            intlat::Row r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(p)] = 1;
            r[static_cast<std::size_t>(p + 1)] = -1;
            rows.push_back(std::move(r));
        }
}

// character conditions imposed by conjugation-fixing the matrix entries of
// the (possibly twisted) element part
void centralizing_rows(const Mat& m, int eps, intlat::Mat& rows) {
    const int n = m.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gf::is_zero(m.at(i, j))) continue;
            intlat::Row r(static_cast<std::size_t>(n), 0);
            if (eps) {
                r[static_cast<std::size_t>(i)] += 1;
                r[static_cast<std::size_t>(n - 1 - j)] += 1;
            } else {
                if (i == j) continue;
                r[static_cast<std::size_t>(i)] += 1;
                r[static_cast<std::size_t>(j)] -= 1;
            }
            rows.push_back(std::move(r));
        }
}

struct NormalBasis {
    grp::DiagForm df;
    GroupElt conj;   // eps = 0
    Mat u_part;      // matrix of a_u in the new basis
    int eps;
};

NormalBasis to_diagonal_basis(const GroupElt& a) {
    const auto jp = grp::jordan_decompose(a);
    auto df = grp::diagonalize_semisimple(jp.s, a.eps == 1);
    GroupElt conj{df.basis_inv, 0};
    GroupElt u1 = grp::conjugate(conj, grp::embed(jp.u, df.field_degree));
    return NormalBasis{std::move(df), std::move(conj), std::move(u1.mat), a.eps};
}

} // namespace

TorusData T_of(const GroupElt& a) {
    NormalBasis nb = to_diagonal_basis(a);
    const int n = a.n();
    intlat::Mat rows;
    run_constancy_rows(nb.df.runs, n, rows);
    centralizing_rows(nb.u_part, nb.eps, rows);
    rows.push_back(intlat::Row(static_cast<std::size_t>(n), 1));
    return TorusData{Subtorus{n, intlat::kernel(rows, n)}, nb.conj, nb.df.field_degree};
}

TorusData T_of_via_levi(const GroupElt& a) {
    TorusData first = T_of(a);
    const LeviDescriptor levi = levi_of(first.t);
    const int n = a.n();
    // Z(L)° conditions: v constant on the blocks of L
    intlat::Mat rows;
    for (const auto& block : levi.blocks)
        for (std::size_t k = 0; k + 1 < block.size(); ++k) {
            intlat::Row r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(block[k])] = 1;
            r[static_cast<std::size_t>(block[k + 1])] = -1;
            rows.push_back(std::move(r));
        }
    // centralize the whole element in the diagonal basis
    const GroupElt moved = grp::conjugate(first.conjugator, grp::embed(a, first.field_degree));
    centralizing_rows(moved.mat, a.eps, rows);
    rows.push_back(intlat::Row(static_cast<std::size_t>(n), 1));
    return TorusData{Subtorus{n, intlat::kernel(rows, n)}, first.conjugator, first.field_degree};
}

LeviDescriptor levi_of(const Subtorus& t) {
    const int n = t.n;
    std::map<intlat::Row, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) {
        intlat::Row col;
        for (const auto& row : t.basis) col.push_back(row[static_cast<std::size_t>(i)]);
        groups[col].push_back(i);
    }
    std::vector<std::vector<int>> blocks;
    for (auto& [col, pos] : groups) blocks.push_back(pos);
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    // tau-compatibility: block set invariant under i -> n-1-i
    bool tau_ok = true;
    for (const auto& b : blocks) {
        std::vector<int> mirror;
        for (int i : b) mirror.push_back(n - 1 - i);
        std::sort(mirror.begin(), mirror.end());
        if (std::find(blocks.begin(), blocks.end(), mirror) == blocks.end()) tau_ok = false;
    }
    return LeviDescriptor{n, std::move(blocks), tau_ok};
}

LeviDescriptor L_of(const GroupElt& a) { return levi_of(T_of(a).t); }

bool is_isolated(const GroupElt& a) { return T_of(a).t.rank() == 0; }

Mat point(const Subtorus& t, const std::vector<long long>& coords, int m) {
    const std::uint64_t q1 = (std::uint64_t{1} << m) - 1;
    std::vector<Fq> entries;
    for (int i = 0; i < t.n; ++i) {
        long long e = 0;
        for (std::size_t k = 0; k < t.basis.size(); ++k)
            e += coords[k] * t.basis[k][static_cast<std::size_t>(i)];
        long long r = e % static_cast<long long>(q1);
        if (r < 0) r += static_cast<long long>(q1);
        entries.push_back(gf::pow(gf::gen(m), static_cast<std::uint64_t>(r)));
    }
    return mat::diag(m, entries);
}

std::vector<std::vector<int>> diag_pattern(const Mat& d) {
    std::map<std::uint32_t, std::vector<int>> groups;
    for (int i = 0; i < d.n; ++i) groups[d.at(i, i).bits].push_back(i);
    std::vector<std::vector<int>> out;
    for (auto& [bits, pos] : groups) out.push_back(pos);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

bool semisimple_regular(const Subtorus& t, const std::vector<long long>& coords, const Mat& a_s_diag) {
    const int m = gf::common_degree(a_s_diag.deg, 8);
    const Mat z = point(t, coords, m);
    const Mat as = mat::embed(a_s_diag, m);
    return diag_pattern(mat::mul(z, as)) == diag_pattern(as);
}

} // namespace torus
} // namespace strata
