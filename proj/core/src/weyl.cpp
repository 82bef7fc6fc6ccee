#include "strata/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "strata/error.hpp"

namespace strata {

std::string IrrLabel::text() const {
    auto part = [](const Partition& p) {
        std::string s = "(";
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(p[i]);
        }
        return s + ")";
    };
    if (kind == Kind::Symmetric) return "S" + std::to_string(size) + ":" + part(lambda);
    return "B" + std::to_string(size) + ":[" + part(bip.alpha) + "," + part(bip.beta) + "]";
}

namespace weyl {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(std::string("internal invariant violated: ") + what);
}

std::vector<Partition> partitions(int n) {
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, int rest, int maxp) -> void {
        if (rest == 0) { out.push_back(cur); return; }
        for (int p = std::min(rest, maxp); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

long long factorial(int n) {
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long long z_of(const Partition& p) {
    long long z = 1;
    std::map<int, int> mult;
    for (int r : p) ++mult[r];
    for (const auto& [r, m] : mult) {
        for (int i = 0; i < m; ++i) z *= r;
        z *= factorial(m);
    }
    return z;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int n_stat(const Partition& p) {
    int s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<int>(i) * p[i];
    return s;
}

} // namespace

long long sym_character(const Partition& lambda, const Partition& rho) {
    // beta-set border-strip recursion
    int total = 0;
    for (int p : lambda) total += p;
    int rtotal = 0;
    for (int p : rho) rtotal += p;
    if (total != rtotal) return 0;
    const int len = std::max<int>(static_cast<int>(lambda.size()), 1);
    std::vector<int> beta;
    for (int i = 0; i < len; ++i)
        beta.push_back((i < static_cast<int>(lambda.size()) ? lambda[static_cast<std::size_t>(i)] : 0) + (len - 1 - i));
    std::sort(beta.begin(), beta.end());
    // strip longest parts first for fewer branches
    Partition sorted_rho = rho;
    std::sort(sorted_rho.begin(), sorted_rho.end(), std::greater<>());
    auto rec = [&](auto&& self, std::vector<int> b, std::size_t k) -> long long {
        if (k == sorted_rho.size()) return 1;
        const int r = sorted_rho[k];
        long long acc = 0;
        for (std::size_t i = 0; i < b.size(); ++i) {
            const int target = b[i] - r;
            if (target < 0) continue;
            if (std::find(b.begin(), b.end(), target) != b.end()) continue;
            std::vector<int> nb = b;
            nb[i] = target;
            // height = number of beta entries strictly between target and b[i]
            int crossings = 0;
            for (int v : b)
                if (v > target && v < b[i]) ++crossings;
            std::sort(nb.begin(), nb.end());
            const long long sign = (crossings % 2) ? -1 : 1;
            acc += sign * self(self, std::move(nb), k + 1);
        }
        return acc;
    };
    return rec(rec, beta, 0);
}

long long hyper_character(const Bipartition& irrep, const Bipartition& cls) {
    // chi^{(lam,mu)}(alpha,beta) from the expansion of
    // prod_{r in alpha}(p_r(X)+p_r(Y)) prod_{r in beta}(p_r(X)-p_r(Y))
    const int la = std::accumulate(irrep.alpha.begin(), irrep.alpha.end(), 0);
    const int lb = std::accumulate(irrep.beta.begin(), irrep.beta.end(), 0);
    std::map<int, std::pair<int, int>> mult;  // r -> (count in alpha, count in beta)
    for (int r : cls.alpha) ++mult[r].first;
    for (int r : cls.beta) ++mult[r].second;
    std::vector<std::tuple<int, int, int>> lengths;  // (r, m_alpha, m_beta)
    for (const auto& [r, mm] : mult) lengths.emplace_back(r, mm.first, mm.second);

    long long total = 0;
    Partition rho_x, rho_y;
    auto rec = [&](auto&& self, std::size_t idx, long long coeff) -> void {
        if (coeff == 0) return;
        if (idx == lengths.size()) {
            int sx = std::accumulate(rho_x.begin(), rho_x.end(), 0);
            if (sx != la) return;
            Partition px = rho_x, py = rho_y;
            std::sort(px.begin(), px.end(), std::greater<>());
            std::sort(py.begin(), py.end(), std::greater<>());
            total += coeff * sym_character(irrep.alpha, px) * sym_character(irrep.beta, py);
            return;
        }
        const auto [r, ma, mb] = lengths[idx];
        for (int j = 0; j <= ma; ++j)
            for (int i = 0; i <= mb; ++i) {
                const long long c =
                    binom(ma, j) * binom(mb, i) * (((mb - i) % 2) ? -1 : 1);
                for (int t = 0; t < j + i; ++t) rho_x.push_back(r);
                for (int t = 0; t < (ma - j) + (mb - i); ++t) rho_y.push_back(r);
                self(self, idx + 1, coeff * c);
                for (int t = 0; t < j + i; ++t) rho_x.pop_back();
                for (int t = 0; t < (ma - j) + (mb - i); ++t) rho_y.pop_back();
            }
    };
    rec(rec, 0, 1);
    (void)lb;
    return total;
}

int b_invariant(const IrrLabel& label) {
    if (label.kind == IrrLabel::Kind::Symmetric) return n_stat(label.lambda);
    return 2 * n_stat(label.bip.alpha) + 2 * n_stat(label.bip.beta) +
           std::accumulate(label.bip.beta.begin(), label.bip.beta.end(), 0);
}

WeylTable char_table_symmetric(int n) {
    if (n < 1 || n > 6) throw UnsupportedSize("symmetric tables limited to n <= 6");
    WeylTable t;
    t.kind = IrrLabel::Kind::Symmetric;
    t.size = n;
    t.order = static_cast<std::uint64_t>(factorial(n));
    t.sym_classes = partitions(n);
    for (const auto& c : t.sym_classes)
        t.class_sizes.push_back(static_cast<std::uint64_t>(factorial(n) / z_of(c)));
    for (const auto& lam : partitions(n)) {
        WCharacter row;
        row.label = IrrLabel{IrrLabel::Kind::Symmetric, n, lam, {}};
        for (const auto& c : t.sym_classes) row.values.push_back(sym_character(lam, c));
        row.b_invariant = b_invariant(row.label);
        t.rows.push_back(std::move(row));
    }
    return t;
}

WeylTable char_table_hyperoctahedral(int k) {
    if (k < 0 || k > 3) throw UnsupportedSize("hyperoctahedral tables limited to k <= 3");
    WeylTable t;
    t.kind = IrrLabel::Kind::Hyperoctahedral;
    t.size = k;
    std::uint64_t order = static_cast<std::uint64_t>(factorial(k));
    for (int i = 0; i < k; ++i) order *= 2;
    t.order = order;
    std::vector<Bipartition> bips;
    for (int a = k; a >= 0; --a)
        for (const auto& pa : partitions(a))
            for (const auto& pb : partitions(k - a)) bips.push_back(Bipartition{pa, pb});
    t.hyper_classes = bips;
    for (const auto& c : bips) {
        long long z = z_of(c.alpha) * z_of(c.beta);
        for (std::size_t i = 0; i < c.alpha.size() + c.beta.size(); ++i) z *= 2;
        t.class_sizes.push_back(order / static_cast<std::uint64_t>(z));
    }
    for (const auto& ir : bips) {
        WCharacter row;
        row.label = IrrLabel{IrrLabel::Kind::Hyperoctahedral, k, {}, ir};
        for (const auto& c : bips) row.values.push_back(hyper_character(ir, c));
        row.b_invariant = b_invariant(row.label);
        t.rows.push_back(std::move(row));
    }
    return t;
}

// --- fixed Weyl group -------------------------------------------------------

FixedWeylGroup fixed_weyl_group(int n) {
    if (n < 2 || n > 6) throw UnsupportedSize("fixed Weyl group limited to n <= 6");
    FixedWeylGroup fw;
    fw.n = n;
    fw.k = n / 2;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool fixed = true;
        for (int i = 0; i < n && fixed; ++i)
            if (perm[static_cast<std::size_t>(n - 1 - i)] != n - 1 - perm[static_cast<std::size_t>(i)]) fixed = false;
        if (!fixed) continue;
        fw.elements.push_back(perm);
        // signed permutation on the pairs {i, n-1-i}, i < k
        const int k = fw.k;
        std::vector<int> pi(static_cast<std::size_t>(k));
        std::vector<int> sign(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
            const int im = perm[static_cast<std::size_t>(i)];
            if (im < k) {
                pi[static_cast<std::size_t>(i)] = im;
                sign[static_cast<std::size_t>(i)] = +1;
            } else {
                pi[static_cast<std::size_t>(i)] = n - 1 - im;
                sign[static_cast<std::size_t>(i)] = -1;
            }
        }
        // signed cycle type
        Bipartition type;
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        for (int i = 0; i < k; ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            int len = 0, cur = i, s = +1;
            while (!seen[static_cast<std::size_t>(cur)]) {
                seen[static_cast<std::size_t>(cur)] = true;
                s *= sign[static_cast<std::size_t>(cur)];
                cur = pi[static_cast<std::size_t>(cur)];
                ++len;
            }
            (s > 0 ? type.alpha : type.beta).push_back(len);
        }
        std::sort(type.alpha.begin(), type.alpha.end(), std::greater<>());
        std::sort(type.beta.begin(), type.beta.end(), std::greater<>());
        fw.signed_types.push_back(std::move(type));
        // S_n fusion: plain cycle type
        Partition fus;
        std::vector<bool> seen2(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i) {
            if (seen2[static_cast<std::size_t>(i)]) continue;
            int len = 0, cur = i;
            while (!seen2[static_cast<std::size_t>(cur)]) {
                seen2[static_cast<std::size_t>(cur)] = true;
                cur = perm[static_cast<std::size_t>(cur)];
                ++len;
            }
            fus.push_back(len);
        }
        std::sort(fus.begin(), fus.end(), std::greater<>());
        fw.fusion.push_back(std::move(fus));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return fw;
}

// --- ambient groups ----------------------------------------------------------

int AmbientGroup::mul(int a, int b) const {
    const auto& pa = elements[static_cast<std::size_t>(a)];
    const auto& pb = elements[static_cast<std::size_t>(b)];
    std::vector<int> c(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) c[i] = pa[static_cast<std::size_t>(pb[i])];
    return index.at(c);
}

int AmbientGroup::inv(int a) const {
    const auto& pa = elements[static_cast<std::size_t>(a)];
    std::vector<int> c(pa.size());
    for (std::size_t i = 0; i < pa.size(); ++i) c[static_cast<std::size_t>(pa[i])] = static_cast<int>(i);
    return index.at(c);
}

namespace {

Partition cycle_type(const std::vector<int>& perm) {
    Partition p;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t cur = i;
        while (!seen[cur]) {
            seen[cur] = true;
            cur = static_cast<std::size_t>(perm[cur]);
            ++len;
        }
        p.push_back(len);
    }
    std::sort(p.begin(), p.end(), std::greater<>());
    return p;
}

// signed type of a B_k element in the {0..2k-1} encoding (i+k = -i)
Bipartition signed_type(const std::vector<int>& perm, int k) {
    Bipartition type;
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int i = 0; i < k; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0, cur = i, sign = +1;
        while (!seen[static_cast<std::size_t>(cur)]) {
            seen[static_cast<std::size_t>(cur)] = true;
            int im = perm[static_cast<std::size_t>(cur)];
            if (im >= k) {
                sign = -sign;
                im -= k;
            }
            cur = im;
            ++len;
        }
        (sign > 0 ? type.alpha : type.beta).push_back(len);
    }
    std::sort(type.alpha.begin(), type.alpha.end(), std::greater<>());
    std::sort(type.beta.begin(), type.beta.end(), std::greater<>());
    return type;
}

} // namespace

AmbientGroup make_symmetric(int n) {
    AmbientGroup g;
    g.table = char_table_symmetric(n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        g.index.emplace(perm, static_cast<int>(g.elements.size()));
        g.elements.push_back(perm);
        const Partition ct = cycle_type(perm);
        int cls = -1;
        for (std::size_t c = 0; c < g.table.sym_classes.size(); ++c)
            if (g.table.sym_classes[c] == ct) cls = static_cast<int>(c);
        g.class_index.push_back(cls);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return g;
}

AmbientGroup make_hyperoctahedral(int k) {
    AmbientGroup g;
    g.table = char_table_hyperoctahedral(k);
    // enumerate signed permutations in the {0..2k-1} encoding
    std::vector<int> base(static_cast<std::size_t>(k));
    std::iota(base.begin(), base.end(), 0);
    do {
        for (int signs = 0; signs < (1 << k); ++signs) {
            std::vector<int> perm(static_cast<std::size_t>(2 * k));
            for (int i = 0; i < k; ++i) {
                int im = base[static_cast<std::size_t>(i)];
                if ((signs >> i) & 1) im += k;
                perm[static_cast<std::size_t>(i)] = im;
                perm[static_cast<std::size_t>(i + k)] = im >= k ? im - k : im + k;
            }
            g.index.emplace(perm, static_cast<int>(g.elements.size()));
            g.elements.push_back(perm);
            const Bipartition st = signed_type(perm, k);
            int cls = -1;
            for (std::size_t c = 0; c < g.table.hyper_classes.size(); ++c)
                if (g.table.hyper_classes[c] == st) cls = static_cast<int>(c);
            g.class_index.push_back(cls);
        }
    } while (std::next_permutation(base.begin(), base.end()));
    if (k == 0) {
        g.index.emplace(std::vector<int>{}, 0);
        g.elements.push_back({});
        g.class_index.push_back(0);
    }
    return g;
}

std::vector<Constituent> induce_decompose(const AmbientGroup& w, const std::vector<int>& sub,
                                          const std::function<long long(int)>& chi) {
    const std::size_t nclasses = w.table.class_sizes.size();
    const long long order = static_cast<long long>(w.table.order);
    const long long sub_order = static_cast<long long>(sub.size());
    std::set<int> sub_set(sub.begin(), sub.end());

    // induced character values per class
    std::vector<long long> ind(nclasses, 0);
    std::vector<int> class_rep(nclasses, -1);
    for (std::size_t e = 0; e < w.elements.size(); ++e)
        if (class_rep[static_cast<std::size_t>(w.class_index[e])] < 0)
            class_rep[static_cast<std::size_t>(w.class_index[e])] = static_cast<int>(e);
    for (std::size_t c = 0; c < nclasses; ++c) {
        const int gidx = class_rep[c];
        long long acc = 0;
        for (std::size_t x = 0; x < w.elements.size(); ++x) {
            const int conj = w.mul(w.mul(w.inv(static_cast<int>(x)), gidx), static_cast<int>(x));
            if (sub_set.count(conj)) acc += chi(conj);
        }
        require(acc % sub_order == 0, "induced character is not integral");
        ind[c] = acc / sub_order;
    }
    // inner products against the rows
    std::vector<Constituent> out;
    for (const auto& row : w.table.rows) {
        long long acc = 0;
        for (std::size_t c = 0; c < nclasses; ++c)
            acc += static_cast<long long>(w.table.class_sizes[c]) * ind[c] * row.values[c];
        require(acc % order == 0, "inner product is not integral");
        const long long mult = acc / order;
        if (mult != 0) out.push_back(Constituent{row.label, mult});
    }
    return out;
}

IrrLabel j_induce(const AmbientGroup& w, const std::vector<int>& sub,
                  const std::function<long long(int)>& chi, int b_sub) {
    const auto cons = induce_decompose(w, sub, chi);
    const Constituent* hit = nullptr;
    for (const auto& c : cons) {
        if (b_invariant(c.label) != b_sub) continue;
        if (hit) throw NonUniqueTruncation("two constituents attain the subgroup b-invariant");
        hit = &c;
    }
    if (!hit) throw NonUniqueTruncation("no constituent attains the subgroup b-invariant");
    if (hit->multiplicity != 1)
        throw NonUniqueTruncation("the b-minimal constituent has multiplicity > 1");
    return hit->label;
}

// --- E-map -------------------------------------------------------------------

IrrLabel twisted_base_label(int h, const std::string& cls) {
    const int k = h / 2;
    if (k == 0) return IrrLabel{IrrLabel::Kind::Hyperoctahedral, 0, {}, Bipartition{{}, {}}};
    if (k == 1) {
        // forced by the truncation identity: the induced (regular) class
        // carries the trivial character, the minimal class the sign
        if (cls == "reg") return IrrLabel{IrrLabel::Kind::Hyperoctahedral, 1, {}, Bipartition{{1}, {}}};
        if (cls == "min") return IrrLabel{IrrLabel::Kind::Hyperoctahedral, 1, {}, Bipartition{{}, {1}}};
        throw Error("unknown twisted class id for the base table: " + cls);
    }
    if (k == 2) {
        // pinned by closure order against ascending b-invariant; the top
        // class is forced to the trivial character, the minimal class to
        // the b-maximal one
        const auto ids = jordan::twisted_unip_class_ids(4);
        std::vector<Bipartition> by_b = {
            {{2}, {}},      // b = 0
            {{1}, {1}},     // b = 1
            {{1, 1}, {}},   // b = 2
            {{}, {2}},      // b = 2
            {{}, {1, 1}},   // b = 4
        };
        if (ids.size() > by_b.size())
            throw ConsistencyFailure("more size-4 twisted classes than Irr(B_2) entries");
        for (std::size_t i = 0; i < ids.size(); ++i) {
            if (ids[i] != cls) continue;
            // ids ascend in closure order; the top (induced) class is forced
            // to the trivial character, lower classes walk up in b
            return IrrLabel{IrrLabel::Kind::Hyperoctahedral, 2, {}, by_b[ids.size() - 1 - i]};
        }
        throw Error("unknown twisted class id for the base table: " + cls);
    }
    throw UnsupportedRank("base table limited to blocks of size <= 4");
}

namespace {

// subgroup W' = prod_i S_{h_i} (diagonal on pair coordinates) x B_{mid}
// realized inside B_k, with the product character from the factor labels
struct CentralizerWeyl {
    std::vector<int> elements;                      // ambient indices
    std::function<long long(int)> chi;
    int b_sub = 0;
};

CentralizerWeyl centralizer_weyl(const AmbientGroup& bk, int k,
                                 const std::vector<std::pair<int, Partition>>& pair_data,
                                 int mid_size, const IrrLabel& mid_label) {
    // pair block i occupies the next h_i pair coordinates; the middle block
    // occupies the last floor(mid/2)
    std::vector<std::vector<int>> pair_coords;
    int pos = 0;
    for (const auto& [h, lam] : pair_data) {
        std::vector<int> coords;
        for (int c = 0; c < h; ++c) coords.push_back(pos + c);
        pos += h;
        pair_coords.push_back(std::move(coords));
    }
    const int mid_k = mid_size / 2;
    std::vector<int> mid_coords;
    for (int c = 0; c < mid_k; ++c) mid_coords.push_back(k - mid_k + c);
    require(pos == k - mid_k, "pair coordinates do not fill the fixed Weyl group");

    CentralizerWeyl cw;
    // enumerate: unsigned permutations of each pair block x signed
    // permutations of the middle coordinates
    std::vector<int> id(static_cast<std::size_t>(2 * k));
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> perms{id};
    for (const auto& coords : pair_coords) {
        std::vector<std::vector<int>> next;
        std::vector<int> arrange(coords.size());
        std::iota(arrange.begin(), arrange.end(), 0);
        do {
            for (const auto& base : perms) {
                std::vector<int> p = base;
                for (std::size_t i = 0; i < coords.size(); ++i) {
                    const int src = coords[i], dst = coords[static_cast<std::size_t>(arrange[i])];
                    p[static_cast<std::size_t>(src)] = dst;
                    p[static_cast<std::size_t>(src + k)] = dst + k;
                }
                next.push_back(std::move(p));
            }
        } while (std::next_permutation(arrange.begin(), arrange.end()));
        perms = std::move(next);
    }
    if (mid_k > 0) {
        std::vector<std::vector<int>> next;
        std::vector<int> arrange(mid_coords.size());
        std::iota(arrange.begin(), arrange.end(), 0);
        do {
            for (int signs = 0; signs < (1 << mid_k); ++signs) {
                for (const auto& base : perms) {
                    std::vector<int> p = base;
                    for (std::size_t i = 0; i < mid_coords.size(); ++i) {
                        const int src = mid_coords[i];
                        int dst = mid_coords[static_cast<std::size_t>(arrange[i])];
                        int dstm = dst + k;
                        if ((signs >> i) & 1) std::swap(dst, dstm);
                        p[static_cast<std::size_t>(src)] = dst;
                        p[static_cast<std::size_t>(src + k)] = dstm;
                    }
                    next.push_back(std::move(p));
                }
            }
        } while (std::next_permutation(arrange.begin(), arrange.end()));
        perms = std::move(next);
    }

    for (const auto& p : perms) cw.elements.push_back(bk.index.at(p));

    // character: product over factors of the factor characters
    const auto pair_data_copy = pair_data;
    const auto mid_copy = mid_label;
    const auto pair_coords_copy = pair_coords;
    const auto mid_coords_copy = mid_coords;
    cw.chi = [&bk, pair_coords_copy, pair_data_copy, mid_coords_copy, mid_copy, k](int idx) -> long long {
        const auto& p = bk.elements[static_cast<std::size_t>(idx)];
        long long val = 1;
        for (std::size_t blk = 0; blk < pair_coords_copy.size(); ++blk) {
            // cycle type of the restriction to this block
            const auto& coords = pair_coords_copy[blk];
            std::map<int, int> local;
            for (std::size_t i = 0; i < coords.size(); ++i) local[coords[i]] = static_cast<int>(i);
            std::vector<int> sub(coords.size());
            for (std::size_t i = 0; i < coords.size(); ++i)
                sub[i] = local.at(p[static_cast<std::size_t>(coords[i])]);
            val *= sym_character(pair_data_copy[blk].second, cycle_type(sub));
            if (val == 0) return 0;
        }
        if (!mid_coords_copy.empty()) {
            const int mk = static_cast<int>(mid_coords_copy.size());
            std::map<int, int> local;
            for (int i = 0; i < mk; ++i) local[mid_coords_copy[static_cast<std::size_t>(i)]] = i;
            std::vector<int> sub(static_cast<std::size_t>(2 * mk));
            for (int i = 0; i < mk; ++i) {
                int im = p[static_cast<std::size_t>(mid_coords_copy[static_cast<std::size_t>(i)])];
                const bool flip = im >= k;
                if (flip) im -= k;
                const int dst = local.at(im);
                sub[static_cast<std::size_t>(i)] = flip ? dst + mk : dst;
                sub[static_cast<std::size_t>(i + mk)] = flip ? dst : dst + mk;
            }
            val *= hyper_character(mid_copy.bip, signed_type(sub, mk));
        }
        return val;
    };
    int b = 0;
    for (const auto& [h, lam] : pair_data) b += n_stat(lam);
    b += b_invariant(mid_label);
    cw.b_sub = b;
    return cw;
}

} // namespace

IrrLabel e_map(const GroupElt& a) {
    if (a.eps != 1) throw Error("e_map is defined on the tau coset");
    const int n = a.n();
    if (n > 4) throw UnsupportedRank("e_map limited to n <= 4");
    const int k = n / 2;

    const auto jp = grp::jordan_decompose(a);
    const auto df = grp::diagonalize_semisimple(jp.s, true);
    const Mat v = grp::conjugate(GroupElt{df.basis_inv, 0}, grp::embed(jp.u, df.field_degree)).mat;

    const int nb = df.runs.count();
    const bool has_middle = (nb % 2) == 1;
    const int npairs = nb / 2;

    // central semisimple part: the base case applies to the whole element
    if (npairs == 0 && has_middle && df.runs.size(0) == n) {
        return twisted_base_label(n, jordan::twisted_unip_class(v));
    }

    std::vector<std::pair<int, Partition>> pair_data;
    for (int b = 0; b < npairs; ++b) {
        const int a0 = df.runs.begin[static_cast<std::size_t>(b)], a1 = df.runs.begin[static_cast<std::size_t>(b + 1)];
        const int b1 = df.runs.begin[static_cast<std::size_t>(nb - b)], b0 = df.runs.begin[static_cast<std::size_t>(nb - b - 1)];
        const Mat atop = mat::block(v, a0, a1, a0, a1);
        const Mat abot = mat::block(v, b0, b1, b0, b1);
        pair_data.emplace_back(a1 - a0, jordan::jordan_partition(mat::mul(abot, grp::tau_twist(atop))));
    }
    int mid_size = 0;
    IrrLabel mid_label = twisted_base_label(0, "-");
    if (has_middle) {
        const int m0 = df.runs.begin[static_cast<std::size_t>(npairs)], m1 = df.runs.begin[static_cast<std::size_t>(npairs + 1)];
        mid_size = m1 - m0;
        mid_label = twisted_base_label(mid_size, jordan::twisted_unip_class(mat::block(v, m0, m1, m0, m1)));
    }

    static std::map<int, AmbientGroup> ambients;
    auto it = ambients.find(k);
    if (it == ambients.end()) it = ambients.emplace(k, make_hyperoctahedral(k)).first;
    const AmbientGroup& bk = it->second;
    const auto cw = centralizer_weyl(bk, k, pair_data, mid_size, mid_label);
    return j_induce(bk, cw.elements, cw.chi, cw.b_sub);
}

std::vector<StratumDescriptor> strata_partition(int n, const InduceConfig& cfg) {
    if (n < 2 || n > 4) throw UnsupportedRank("strata supported for 2 <= n <= 4");
    const auto fams = jordan::enumerate_classes(n);
    std::vector<IrrLabel> labels;
    for (const auto& f : fams) labels.push_back(e_map(f.representative));

    // group the families by the E label
    std::vector<StratumDescriptor> strata;
    for (std::size_t i = 0; i < fams.size(); ++i) {
        bool placed = false;
        for (auto& st : strata)
            if (st.e_label == labels[i]) {
                st.members.push_back(i);
                placed = true;
            }
        if (!placed) strata.push_back(StratumDescriptor{labels[i], {i}, 0, {}});
    }

    for (auto& st : strata) {
        // members share one orbit dimension
        st.orbit_dimension = fams[st.members.front()].orbit_dimension;
        for (std::size_t m : st.members)
            if (fams[m].orbit_dimension != st.orbit_dimension)
                throw ConsistencyFailure("stratum members have different orbit dimensions");
        // stratum = union of the regular closures of its members
        std::set<std::size_t> closure_union;
        std::set<std::size_t> member_set(st.members.begin(), st.members.end());
        std::set<std::size_t> closed;
        for (std::size_t m : st.members) {
            for (std::size_t f : induce::regular_closure(fams, m, cfg)) closure_union.insert(f);
            for (std::size_t f : induce::full_closure(fams, m, cfg)) closed.insert(f);
        }
        if (closure_union != member_set)
            throw ConsistencyFailure("E-fibers disagree with the regular-closure saturation");
        st.closed_witness.assign(closed.begin(), closed.end());
    }
    return strata;
}

} // namespace weyl
} // namespace strata
