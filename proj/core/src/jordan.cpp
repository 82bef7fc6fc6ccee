#include "strata/jordan.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "strata/dimension.hpp"
#include "strata/error.hpp"

namespace strata::jordan {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(std::string("internal invariant violated: ") + what);
}

Mat jordan_block_matrix(int deg, const std::vector<int>& lambda) {
    int h = 0;
    for (int p : lambda) h += p;
    Mat u = Mat::identity(h, deg);
    int off = 0;
    for (int p : lambda) {
        for (int i = 0; i + 1 < p; ++i) u.at(off + i, off + i + 1) = gf::one(deg);
        off += p;
    }
    return u;
}

} // namespace

std::vector<int> jordan_partition(const Mat& u) {
    const int h = u.n;
    Mat nil = u;
    for (int i = 0; i < h; ++i) nil.at(i, i) = gf::add(nil.at(i, i), gf::one(u.deg));
    std::vector<int> kdim{0};
    Mat p = Mat::identity(h, u.deg);
    for (int k = 1; k <= h; ++k) {
        p = mat::mul(p, nil);
        kdim.push_back(static_cast<int>(mat::kernel(p).size()));
        if (kdim.back() == h) break;
    }
    require(kdim.back() == h, "matrix is not unipotent");
    // number of blocks of size >= k is kdim[k] - kdim[k-1]
    std::vector<int> ge;
    for (std::size_t k = 1; k < kdim.size(); ++k) ge.push_back(kdim[k] - kdim[k - 1]);
    std::vector<int> lambda;
    for (int i = 0; i < h; ++i) {
        int parts = 0;
        for (std::size_t k = 0; k < ge.size(); ++k)
            if (ge[k] > i) ++parts;
        if (parts == 0) break;
        lambda.push_back(parts);
    }
    return lambda;  // descending by construction
}

int gl_unip_centralizer_dim(const std::vector<int>& lambda) {
    // sum of squares of the conjugate partition
    int dim = 0;
    for (std::size_t i = 0;; ++i) {
        int conj = 0;
        for (int p : lambda)
            if (p > static_cast<int>(i)) ++conj;
        if (conj == 0) break;
        dim += conj * conj;
    }
    return dim;
}

std::string partition_string(const std::vector<int>& lambda) {
    std::string s;
    for (int p : lambda) s += std::to_string(p);
    return s.empty() ? "0" : s;
}

// --- twisted unipotent table ----------------------------------------------

namespace {

struct Tw4Class {
    std::string id;
    Mat rep;  // over GF(2)
    int cent_dim = 0;
    std::uint64_t size_q2 = 0;
    std::string signature;
};

std::string tw_signature(const Mat& z) {
    // invariants of (z, tau): element order, Jordan type of the square,
    // and the congruence type of z*J when the element is an involution
    GroupElt y{z, 1};
    const std::uint64_t ord = grp::order(y);
    const Mat nsq = mat::mul(z, grp::tau_twist(z));
    const std::vector<int> jt = jordan_partition(nsq);
    int alt = 2;
    if (ord <= 2) {
        const Mat m = mat::mul(z, mat::antidiag_identity(z.n, z.deg));
        alt = 1;
        for (int i = 0; i < z.n && alt; ++i)
            if (!gf::is_zero(m.at(i, i))) alt = 0;
    }
    return "o" + std::to_string(ord) + ":jt" + partition_string(jt) + ":a" + std::to_string(alt);
}

const std::vector<Tw4Class>& tw4_table() {
    static std::vector<Tw4Class> table;
    static std::once_flag flag;
    std::call_once(flag, [] {
        // enumerate SL(4,2) and partition the unipotent coset elements by
        // twisted conjugacy
        std::vector<Mat> sl;
        for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
            Mat m = Mat::zero(4, 1);
            for (int i = 0; i < 16; ++i)
                m.e[static_cast<std::size_t>(i)] = gf::make(1, (bits >> i) & 1);
            if (mat::det(m) == gf::one(1)) sl.push_back(std::move(m));
        }
        std::unordered_map<std::uint64_t, int> cls;  // packed key -> class idx
        std::vector<Tw4Class> raw;
        for (const Mat& v : sl) {
            const GroupElt y{v, 1};
            const std::uint64_t o = grp::order(y);
            if (o & (o - 1)) continue;  // unipotent only
            const std::uint64_t key = grp::pack_key(y);
            if (cls.count(key)) continue;
            // BFS the twisted class
            std::vector<Mat> frontier{v};
            cls[key] = static_cast<int>(raw.size());
            std::uint64_t size = 1;
            Mat best = v;
            std::uint64_t bestkey = key;
            while (!frontier.empty()) {
                std::vector<Mat> next;
                for (const Mat& z : frontier)
                    for (int i = 0; i < 4; ++i)
                        for (int j = 0; j < 4; ++j) {
                            if (i == j) continue;
                            Mat e = Mat::identity(4, 1);
                            e.at(i, j) = gf::one(1);
                            const GroupElt w = grp::conjugate(GroupElt{e, 0}, GroupElt{z, 1});
                            const std::uint64_t wk = grp::pack_key(w);
                            if (cls.emplace(wk, cls[key]).second) {
                                next.push_back(w.mat);
                                ++size;
                                if (wk < bestkey) { bestkey = wk; best = w.mat; }
                            }
                        }
                frontier = std::move(next);
            }
            raw.push_back(Tw4Class{"", best, 0, size, tw_signature(v)});
        }
        // geometric merge: rational classes sharing all invariants
        std::map<std::string, Tw4Class> merged;
        for (const Tw4Class& c : raw) {
            auto it = merged.find(c.signature);
            if (it == merged.end()) {
                merged.emplace(c.signature, c);
            } else {
                it->second.size_q2 += c.size_q2;
                if (grp::pack_key(GroupElt{c.rep, 1}) < grp::pack_key(GroupElt{it->second.rep, 1}))
                    it->second.rep = c.rep;
            }
        }
        for (auto& [sig, c] : merged) {
            c.cent_dim = dims::tangent_dim_bound(GroupElt{c.rep, 1});
            table.push_back(c);
        }
        // ascending orbit size = ascending closure order proxy; the minimal
        // quasi-semisimple class (the one containing tau) comes first
        std::sort(table.begin(), table.end(), [](const Tw4Class& a, const Tw4Class& b) {
            return std::make_pair(a.size_q2, a.signature) < std::make_pair(b.size_q2, b.signature);
        });
        for (std::size_t i = 0; i < table.size(); ++i)
            table[i].id = i == 0 ? "min" : ("c" + std::to_string(i));
    });
    return table;
}

} // namespace

std::string twisted_unip_class(const Mat& z) {
    const int h = z.n;
    if (h == 0) return "-";
    if (h == 1) return "min";
    if (h == 2) {
        // normalize into SL(2): theta(m) = m / det(m) for 2x2 in char 2, so
        // z0 = z / sqrt(det z) is the plain-conjugacy invariant
        const Fq scale = gf::inv(gf::sqrt(mat::det(z)));
        Mat z0 = z;
        for (Fq& v : z0.e) v = gf::mul(v, scale);
        require(!jordan_partition(z0).empty(), "twisted h=2 part is not unipotent");
        return z0 == Mat::identity(2, z.deg) ? "min" : "reg";
    }
    if (h == 3) {
        const Mat nsq = mat::mul(z, grp::tau_twist(z));
        return nsq == Mat::identity(3, z.deg) ? "min" : "reg";
    }
    if (h == 4) {
        const std::string sig = tw_signature(z);
        for (const Tw4Class& c : tw4_table())
            if (c.signature == sig) return c.id;
        throw Error("unipotent signature missing from the size-4 twisted table");
    }
    throw UnsupportedRank("twisted classification limited to blocks of size <= 4");
}

std::vector<std::string> twisted_unip_class_ids(int h) {
    switch (h) {
        case 0: return {"-"};
        case 1: return {"min"};
        case 2:
        case 3: return {"min", "reg"};
        case 4: {
            std::vector<std::string> ids;
            for (const Tw4Class& c : tw4_table()) ids.push_back(c.id);
            return ids;
        }
        default: throw UnsupportedRank("twisted classification limited to blocks of size <= 4");
    }
}

int twisted_unip_centralizer_dim(int h, const std::string& id) {
    if (h == 0) return 0;
    if (h == 1) return 0;
    if (h == 2) return id == "min" ? 3 : 1;  // Sp(2) = SL(2), else a regular unipotent
    if (h == 3) return id == "min" ? 3 : 1;  // Sp(2), else dim-1 stabilizer
    if (h == 4) {
        for (const Tw4Class& c : tw4_table())
            if (c.id == id) return c.cent_dim;
    }
    throw Error("unknown twisted class id: " + id);
}

Mat twisted_unip_rep(int h, const std::string& id) {
    if (h == 1) return Mat::identity(1, 1);
    if (h == 2 || h == 3) {
        Mat m = Mat::identity(h, 1);
        if (id == "reg") m.at(0, 1) = gf::one(1);
        return m;
    }
    if (h == 4) {
        for (const Tw4Class& c : tw4_table())
            if (c.id == id) return c.rep;
    }
    throw Error("unknown twisted class id: " + id);
}

// --- class labels ----------------------------------------------------------

namespace {

struct BlockData {
    std::vector<std::pair<int, int>> pair_runs;  // (top run idx, bottom run idx)
    int mid_run = -1;
};

BlockData split_runs(const grp::EigenRuns& runs, bool has_middle) {
    BlockData bd;
    const int nb = runs.count();
    const int npairs = nb / 2;
    for (int k = 0; k < npairs; ++k) bd.pair_runs.emplace_back(k, nb - 1 - k);
    if (has_middle) bd.mid_run = npairs;
    return bd;
}

Subtorus lattice_from_parts(int n, const grp::EigenRuns& runs, const Mat& u_part, int eps) {
    intlat::Mat rows;
    for (int k = 0; k < runs.count(); ++k)
        for (int p = runs.begin[static_cast<std::size_t>(k)]; p + 1 < runs.begin[static_cast<std::size_t>(k + 1)]; ++p) {
            intlat::Row r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(p)] = 1;
            r[static_cast<std::size_t>(p + 1)] = -1;
            rows.push_back(std::move(r));
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gf::is_zero(u_part.at(i, j))) continue;
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
    rows.push_back(intlat::Row(static_cast<std::size_t>(n), 1));
    return Subtorus{n, intlat::kernel(rows, n)};
}

} // namespace

ClassInfo classify(const GroupElt& a) {
    const int n = a.n();
    if (a.eps == 1 && n > 4)
        throw UnsupportedRank("coset classification limited to n <= 4");
    const auto jp = grp::jordan_decompose(a);
    const auto df = grp::diagonalize_semisimple(jp.s, a.eps == 1);
    const int L = df.field_degree;
    const GroupElt conj{df.basis_inv, 0};
    const Mat v = grp::conjugate(conj, grp::embed(jp.u, L)).mat;

    JordanClassLabel label;
    label.n = n;
    label.eps = a.eps;
    label.t_lattice = lattice_from_parts(n, df.runs, v, a.eps);
    label.levi = torus::levi_of(label.t_lattice);
    int cent_dim = 0;

    if (a.eps == 1) {
        const bool has_middle = (df.runs.count() % 2) == 1;
        const BlockData bd = split_runs(df.runs, has_middle);
        std::string unip;
        for (const auto& [top, bot] : bd.pair_runs) {
            const int a0 = df.runs.begin[static_cast<std::size_t>(top)], a1 = df.runs.begin[static_cast<std::size_t>(top + 1)];
            const int b0 = df.runs.begin[static_cast<std::size_t>(bot)], b1 = df.runs.begin[static_cast<std::size_t>(bot + 1)];
            label.eigen_pattern.push_back({a1 - a0, PairingType::Paired});
            const Mat atop = mat::block(v, a0, a1, a0, a1);
            const Mat abot = mat::block(v, b0, b1, b0, b1);
            const Mat norm = mat::mul(abot, grp::tau_twist(atop));
            const auto lam = jordan_partition(norm);
            cent_dim += gl_unip_centralizer_dim(lam);
            if (!unip.empty()) unip += ",";
            unip += partition_string(lam);
        }
        if (has_middle) {
            const int m0 = df.runs.begin[static_cast<std::size_t>(bd.mid_run)], m1 = df.runs.begin[static_cast<std::size_t>(bd.mid_run + 1)];
            label.eigen_pattern.push_back({m1 - m0, PairingType::CentralOne});
            const std::string mid = twisted_unip_class(mat::block(v, m0, m1, m0, m1));
            cent_dim += twisted_unip_centralizer_dim(m1 - m0, mid);
            unip += unip.empty() ? mid : (";" + mid);
        }
        label.unip_class = unip;
    } else {
        // connected case: runs sorted by the canonical eigenvalue key
        const Fq one = gf::one(L);
        std::string unip;
        for (int k = 0; k < df.runs.count(); ++k) {
            const int r0 = df.runs.begin[static_cast<std::size_t>(k)], r1 = df.runs.begin[static_cast<std::size_t>(k + 1)];
            const Fq lam = df.d.at(r0, r0);
            PairingType pt = PairingType::SelfInverse;
            if (lam == one) {
                pt = PairingType::CentralOne;
            } else {
                const Fq li = gf::inv(lam);
                for (int k2 = 0; k2 < df.runs.count(); ++k2) {
                    const int p0 = df.runs.begin[static_cast<std::size_t>(k2)];
                    if (df.d.at(p0, p0) == li &&
                        df.runs.size(k2) == df.runs.size(k)) {
                        pt = PairingType::Paired;
                        break;
                    }
                }
            }
            label.eigen_pattern.push_back({r1 - r0, pt});
            const auto lamp = jordan_partition(mat::block(v, r0, r1, r0, r1));
            cent_dim += gl_unip_centralizer_dim(lamp);
            if (!unip.empty()) unip += ",";
            unip += partition_string(lamp);
        }
        cent_dim -= 1;  // det-1 cuts the scalar center
        label.unip_class = unip;
    }
    return ClassInfo{std::move(label), (n * n - 1) - cent_dim};
}

JordanClassLabel class_of(const GroupElt& a) { return classify(a).label; }

bool same_class(const GroupElt& a, const GroupElt& b) {
    if (a.n() != b.n()) throw RankMismatch();
    return class_of(a) == class_of(b);
}

// --- enumeration -----------------------------------------------------------

namespace {

std::vector<std::vector<int>> partitions(int h) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) { out.push_back(cur); return; }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, h, h);
    return out;
}

// the first k canonical pair representatives (nonzero, not 1, min of the
// inverse pair, distinct pair classes), over the smallest usable degree
std::pair<int, std::vector<Fq>> pair_values(int k) {
    if (k == 0) return {1, {}};
    for (int m = 2; m <= 8; ++m) {
        std::vector<Fq> picked;
        std::vector<std::pair<std::pair<int, std::uint32_t>, Fq>> cands;
        for (const Fq& e : gf::all_elements(m)) {
            if (gf::is_zero(e) || e == gf::one(m)) continue;
            const Fq inv = gf::inv(e);
            if (inv.bits < e.bits) continue;  // keep the minimal representative
            cands.push_back({{gf::absolute_degree(e), e.bits}, e});
        }
        std::sort(cands.begin(), cands.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [key, e] : cands) {
            if (static_cast<int>(picked.size()) == k) break;
            picked.push_back(e);
        }
        if (static_cast<int>(picked.size()) == k) return {m, picked};
    }
    throw UnsupportedRank("could not place the required pair values in the tower");
}

struct Shape {
    std::vector<int> pair_sizes;
    int mid = 0;
};

std::vector<Shape> shapes_for(int n) {
    // pair sizes h_1 >= ... plus middle h_r with 2*sum + h_r = n; h_r has the
    // parity of n
    std::vector<Shape> out;
    for (int mid = n % 2; mid <= n; mid += 2) {
        const int rest = (n - mid) / 2;
        for (const auto& ps : partitions(rest)) out.push_back(Shape{ps, mid});
        if (rest == 0) { /* partitions(0) = {{}} already appended */ }
    }
    return out;
}

std::string family_name(int n, const Shape& sh, const std::vector<std::vector<int>>& lambdas,
                        const std::string& midcls) {
    if (n <= 3) {
        if (!sh.pair_sizes.empty()) return "J(t.tau)";
        return midcls == "min" ? "J(tau)" : "J(u1.tau)";
    }
    std::string s = "J[";
    for (std::size_t i = 0; i < sh.pair_sizes.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(sh.pair_sizes[i]) + ":" + partition_string(lambdas[i]);
    }
    s += ";m" + std::to_string(sh.mid);
    if (sh.mid > 0) s += ":" + midcls;
    s += "]";
    return s;
}

} // namespace

std::vector<ClassDescription> enumerate_classes(int n) {
    if (n < 2 || n > 4) throw UnsupportedRank("enumeration supported for 2 <= n <= 4");
    std::vector<ClassDescription> out;
    for (const Shape& sh : shapes_for(n)) {
        const int k = static_cast<int>(sh.pair_sizes.size());
        const auto [mt, vals] = pair_values(k);

        // all unipotent choices on the pairs
        std::vector<std::vector<std::vector<int>>> pair_lams{{}};
        for (int i = 0; i < k; ++i) {
            std::vector<std::vector<std::vector<int>>> next;
            for (const auto& sofar : pair_lams)
                for (const auto& lam : partitions(sh.pair_sizes[i])) {
                    auto ext = sofar;
                    ext.push_back(lam);
                    next.push_back(std::move(ext));
                }
            pair_lams = std::move(next);
        }
        for (const auto& lambdas : pair_lams) {
            for (const std::string& midcls : twisted_unip_class_ids(sh.mid)) {
                // representative: t diagonal in canonical order, u block upper
                const Mat midrep = sh.mid > 0 ? twisted_unip_rep(sh.mid, midcls) : Mat::zero(0, 1);
                const int deg = sh.mid > 0 ? gf::common_degree(mt, midrep.deg) : mt;
                std::vector<Fq> tdiag;
                for (int i = 0; i < k; ++i)
                    for (int c = 0; c < sh.pair_sizes[i]; ++c) tdiag.push_back(gf::embed(vals[static_cast<std::size_t>(i)], deg));
                for (int c = 0; c < sh.mid; ++c) tdiag.push_back(gf::one(deg));
                for (int i = k - 1; i >= 0; --i)
                    for (int c = 0; c < sh.pair_sizes[i]; ++c) tdiag.push_back(gf::inv(gf::embed(vals[static_cast<std::size_t>(i)], deg)));
                const Mat t = mat::diag(deg, tdiag);

                Mat u = Mat::identity(n, deg);
                int off_top = 0, off_bot = n;
                for (int i = 0; i < k; ++i) off_bot -= sh.pair_sizes[i];
                // bottom blocks carry the pair unipotent parts (tops stay Id)
                int pos = n;
                for (int i = 0; i < k; ++i) {
                    pos -= sh.pair_sizes[i];
                    mat::set_block(u, pos, pos, mat::embed(jordan_block_matrix(1, lambdas[static_cast<std::size_t>(i)]), deg));
                }
                if (sh.mid > 0) {
                    int mid0 = 0;
                    for (int i = 0; i < k; ++i) mid0 += sh.pair_sizes[i];
                    mat::set_block(u, mid0, mid0, mat::embed(midrep, deg));
                }
                (void)off_top; (void)off_bot;

                ClassDescription cd;
                cd.representative = GroupElt{mat::mul(t, u), 1};
                cd.label = class_of(cd.representative);
                cd.name = family_name(n, sh, lambdas, midcls);
                int cdim = 0;
                for (const auto& lam : lambdas) cdim += gl_unip_centralizer_dim(lam);
                cdim += sh.mid > 0 ? twisted_unip_centralizer_dim(sh.mid, midcls) : 0;
                cd.orbit_dimension = (n * n - 1) - cdim;
                cd.dimension = cd.orbit_dimension + cd.label.t_lattice.rank();
                cd.isolated = cd.label.t_lattice.rank() == 0;
                for (int i = 0; i < k; ++i) {
                    cd.regular_slice.push_back("z" + std::to_string(i + 1) + " != 1");
                    for (int j = i + 1; j < k; ++j) {
                        cd.regular_slice.push_back("z" + std::to_string(i + 1) + " != z" + std::to_string(j + 1));
                        cd.regular_slice.push_back("z" + std::to_string(i + 1) + " != z" + std::to_string(j + 1) + "^-1");
                    }
                }
                out.push_back(std::move(cd));
            }
        }
    }
    return out;
}

std::optional<std::size_t> family_index(const std::vector<ClassDescription>& fams, const JordanClassLabel& label) {
    for (std::size_t i = 0; i < fams.size(); ++i)
        if (fams[i].label == label) return i;
    return std::nullopt;
}

IsolatedStructure isolated_class_structure(const GroupElt& a) {
    auto td = torus::T_of(a);
    if (td.t.rank() != 0) throw NotIsolated("element is not isolated in the ambient group");
    return IsolatedStructure{td.t, a};
}

IsolatedStructure isolated_class_structure(const GroupElt& a, const LeviDescriptor& levi) {
    // inside N_G(L) the class of a is isolated; its torus part is
    // (Z(L)° ∩ C(a))°
    const auto td = torus::T_of(a);
    const int n = a.n();
    intlat::Mat rows;
    for (const auto& block : levi.blocks)
        for (std::size_t kk = 0; kk + 1 < block.size(); ++kk) {
            intlat::Row r(static_cast<std::size_t>(n), 0);
            r[static_cast<std::size_t>(block[kk])] = 1;
            r[static_cast<std::size_t>(block[kk + 1])] = -1;
            rows.push_back(std::move(r));
        }
    const GroupElt moved = grp::conjugate(td.conjugator, grp::embed(a, td.field_degree));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (gf::is_zero(moved.mat.at(i, j))) continue;
            intlat::Row r(static_cast<std::size_t>(n), 0);
            if (a.eps) {
                r[static_cast<std::size_t>(i)] += 1;
                r[static_cast<std::size_t>(n - 1 - j)] += 1;
            } else {
                if (i == j) continue;
                r[static_cast<std::size_t>(i)] += 1;
                r[static_cast<std::size_t>(j)] -= 1;
            }
            rows.push_back(std::move(r));
        }
    rows.push_back(intlat::Row(static_cast<std::size_t>(n), 1));
    return IsolatedStructure{Subtorus{n, intlat::kernel(rows, n)}, a};
}

std::vector<std::string> sstar_constraints_sl3() {
    // semisimple part of diag(alpha, beta, (alpha beta)^-1) tau is
    // diag(alpha sqrt(beta), 1, ...); regularity away from the locus below
    return {"alpha != sqrt(beta)^-1"};
}

} // namespace strata::jordan
