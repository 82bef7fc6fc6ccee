#include "strata/induction.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "strata/error.hpp"

namespace strata::induce {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw Error(std::string("internal invariant violated: ") + what);
}

// standard parabolic data: needs contiguous blocks
std::vector<std::pair<int, int>> contiguous_blocks(const LeviDescriptor& levi) {
    std::vector<std::pair<int, int>> spans;
    for (const auto& b : levi.blocks) {
        for (std::size_t k = 0; k + 1 < b.size(); ++k)
            if (b[k + 1] != b[k] + 1) throw Error("Levi blocks are not contiguous; no standard parabolic");
        spans.emplace_back(b.front(), b.back() + 1);
    }
    std::sort(spans.begin(), spans.end());
    return spans;
}

// block index of a position
int block_of(const std::vector<std::pair<int, int>>& spans, int p) {
    for (std::size_t k = 0; k < spans.size(); ++k)
        if (p >= spans[k].first && p < spans[k].second) return static_cast<int>(k);
    throw Error("position outside the block structure");
}

Mat sample_radical(const std::vector<std::pair<int, int>>& spans, int n, int deg,
                   std::mt19937_64& rng, const Mat* s_diag = nullptr) {
    // Id + random entries strictly above the block diagonal; when s_diag is
    // given, restrict to entries inside the centralizer of s (equal diagonal
    // values)
    Mat v = Mat::identity(n, deg);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (block_of(spans, i) == block_of(spans, j)) continue;
            if (s_diag && !(s_diag->at(i, i) == s_diag->at(j, j))) continue;
            v.at(i, j) = gf::make(deg, static_cast<std::uint32_t>(rng() & ((1u << deg) - 1)));
        }
    return v;
}

std::vector<std::pair<std::string, int>> ss_invariant_of(const GroupElt& x, int& field_degree) {
    const auto jp = grp::jordan_decompose(x);
    const auto rl = gf::split_poly(mat::char_poly(jp.s.mat));
    field_degree = rl.field_degree_used;
    std::vector<std::pair<std::string, int>> out;
    for (const auto& [root, mult] : rl.roots) out.emplace_back(gf::to_string(root), mult);
    return out;
}

struct SampleResult {
    int dim = -1;
    jordan::ClassInfo info;
    GroupElt rep;
};

// max-dimension sample among the radical translates of g, certified across
// independent seeds
SampleResult certified_max(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg,
                           const Mat* restrict_to_cent_of = nullptr) {
    const auto spans = contiguous_blocks(levi);
    const int n = g.n();
    const int deg = gf::common_degree(g.deg(), cfg.sample_degree);
    const GroupElt gd = grp::embed(g, deg);
    Mat s_diag;
    const Mat* restrict_ptr = nullptr;
    if (restrict_to_cent_of) {
        s_diag = mat::embed(*restrict_to_cent_of, deg);
        restrict_ptr = &s_diag;
    }

    SampleResult best;
    for (int sd = 0; sd < cfg.seeds; ++sd) {
        std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(sd));
        SampleResult seed_best;
        for (int it = 0; it < cfg.samples; ++it) {
            const Mat v = sample_radical(spans, n, deg, rng, restrict_ptr);
            const GroupElt x = grp::compose(gd, GroupElt{v, 0});
            auto info = jordan::classify(x);
            if (info.orbit_dim > seed_best.dim) {
                seed_best = SampleResult{info.orbit_dim, std::move(info), x};
            }
        }
        if (sd == 0) {
            best = std::move(seed_best);
        } else if (seed_best.dim != best.dim || !(seed_best.info.label == best.info.label)) {
            throw SamplingInconclusive("independent seeds disagree on the induced orbit");
        }
    }
    return best;
}

} // namespace

OrbitDescriptor induce_orbit(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg) {
    SampleResult best = certified_max(levi, g, cfg);
    OrbitDescriptor od;
    od.representative = best.rep;
    od.dimension = best.dim;
    od.unip_class = best.info.label.unip_class;
    od.label = std::move(best.info.label);
    od.ss_invariant = ss_invariant_of(od.representative, od.ss_field_degree);
    return od;
}

UnipotentReduction reduce_to_unipotent(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg) {
    const auto jp = grp::jordan_decompose(g);
    require(mat::is_diagonal(jp.s.mat), "reduce_to_unipotent expects a representative with diagonal semisimple part");
    SampleResult best = certified_max(levi, g, cfg, &jp.s.mat);
    UnipotentReduction red;
    red.s = jp.s;
    red.unip.representative = best.rep;
    red.unip.dimension = best.dim;
    red.unip.unip_class = best.info.label.unip_class;
    red.unip.label = std::move(best.info.label);
    red.unip.ss_invariant = ss_invariant_of(red.unip.representative, red.unip.ss_field_degree);
    return red;
}

namespace {

// dim of the centralizer of g inside the Levi block subgroup
int levi_centralizer_dim(const LeviDescriptor& levi, const GroupElt& g) {
    bool all_singleton = true;
    for (const auto& b : levi.blocks)
        if (b.size() != 1) all_singleton = false;
    if (all_singleton) {
        // centralizer inside the diagonal torus is a lattice kernel
        const auto td = torus::T_of(g);
        const GroupElt moved = grp::conjugate(td.conjugator, grp::embed(g, td.field_degree));
        const int n = g.n();
        intlat::Mat rows;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (gf::is_zero(moved.mat.at(i, j))) continue;
                intlat::Row r(static_cast<std::size_t>(n), 0);
                if (g.eps) {
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
        return static_cast<int>(intlat::kernel(rows, n).size());
    }
    // when the semisimple centralizer sits inside the Levi the full and
    // relative centralizers share the identity component
    const auto info = jordan::classify(g);
    const auto cent_blocks = torus::levi_of(info.label.t_lattice);
    for (const auto& cb : info.label.levi.blocks) {
        bool inside = false;
        for (const auto& lb : levi.blocks)
            if (std::includes(lb.begin(), lb.end(), cb.begin(), cb.end())) inside = true;
        if (!inside) throw Error("unsupported Levi shape for the codimension check");
    }
    (void)cent_blocks;
    return (g.n() * g.n() - 1) - info.orbit_dim;
}

} // namespace

CodimPair codim_check(const LeviDescriptor& levi, const GroupElt& g, const InduceConfig& cfg) {
    CodimPair cp;
    cp.codim_levi = levi_centralizer_dim(levi, g);
    const auto od = induce_orbit(levi, g, cfg);
    cp.codim_coset = (g.n() * g.n() - 1) - od.dimension;
    cp.equal = cp.codim_levi == cp.codim_coset;
    return cp;
}

std::vector<PatternStratum> pattern_strata(const std::vector<ClassDescription>& fams,
                                           std::size_t idx, const InduceConfig& cfg) {
    const ClassDescription& cd = fams[idx];
    const GroupElt& rep = cd.representative;
    const auto jp = grp::jordan_decompose(rep);
    require(mat::is_diagonal(jp.s.mat), "family representative must have diagonal semisimple part");
    const Subtorus& lattice = cd.label.t_lattice;
    const int r = lattice.rank();

    // enumerate coincidence patterns of z·s over an exhaustive coordinate
    // sweep; small ranks only (n <= 4 gives r <= 2)
    const int zdeg = r >= 2 ? 4 : 8;
    const long long q1 = (1LL << zdeg) - 1;
    std::map<std::vector<std::vector<int>>, std::vector<long long>> patterns;
    std::vector<long long> coords(static_cast<std::size_t>(r), 0);
    const int m = gf::common_degree(rep.deg(), zdeg);
    const Mat sd = mat::embed(jp.s.mat, m);
    auto sweep = [&](auto&& self, int pos) -> void {
        if (pos == r) {
            const Mat z = torus::point(lattice, coords, m);
            auto pat = torus::diag_pattern(mat::mul(z, sd));
            if (!patterns.count(pat)) patterns.emplace(std::move(pat), coords);
            return;
        }
        for (long long c = 0; c < q1; ++c) {
            coords[static_cast<std::size_t>(pos)] = c;
            self(self, pos + 1);
        }
    };
    sweep(sweep, 0);

    std::vector<PatternStratum> out;
    for (const auto& [pat, crd] : patterns) {
        PatternStratum st;
        st.pattern = pat;
        st.coords = crd;
        const Mat z = torus::point(lattice, crd, m);
        const GroupElt zg = grp::compose(GroupElt{z, 0}, grp::embed(rep, m));
        const auto od = induce_orbit(cd.label.levi, zg, cfg);
        const auto fi = jordan::family_index(fams, od.label);
        if (!fi) throw ConsistencyFailure("induced orbit is not among the enumerated families");
        st.induced_family = *fi;
        st.induced_rep = od.representative;
        out.push_back(std::move(st));
    }
    return out;
}

std::vector<std::size_t> regular_closure(const std::vector<ClassDescription>& fams,
                                         std::size_t idx, const InduceConfig& cfg) {
    std::set<std::size_t> acc;
    for (const auto& st : pattern_strata(fams, idx, cfg)) acc.insert(st.induced_family);
    return {acc.begin(), acc.end()};
}

namespace {

bool dominates(const std::vector<int>& lo, const std::vector<int>& hi) {
    // lo <= hi in dominance order (same total)
    int slo = 0, shi = 0;
    for (int p : lo) slo += p;
    for (int p : hi) shi += p;
    if (slo != shi) return false;
    int plo = 0, phi = 0;
    for (std::size_t i = 0; i < std::max(lo.size(), hi.size()); ++i) {
        plo += i < lo.size() ? lo[i] : 0;
        phi += i < hi.size() ? hi[i] : 0;
        if (plo > phi) return false;
    }
    return true;
}

std::vector<int> parse_partition(const std::string& s) {
    std::vector<int> out;
    for (char c : s) out.push_back(c - '0');
    return out;
}

// split "11,2;reg" into pair partitions and the middle id
std::pair<std::vector<std::vector<int>>, std::string> parse_unip(const std::string& s) {
    std::string pairs = s, mid;
    const auto semi = s.find(';');
    if (semi != std::string::npos) {
        pairs = s.substr(0, semi);
        mid = s.substr(semi + 1);
    } else if (s.find(',') == std::string::npos && !s.empty() && !isdigit(static_cast<unsigned char>(s[0]))) {
        pairs.clear();
        mid = s;
    }
    std::vector<std::vector<int>> out;
    std::size_t pos = 0;
    while (pos < pairs.size()) {
        auto next = pairs.find(',', pos);
        if (next == std::string::npos) next = pairs.size();
        out.push_back(parse_partition(pairs.substr(pos, next - pos)));
        pos = next + 1;
    }
    return {out, mid};
}

// is fam_lo's unipotent data below fam_hi's in the componentwise closure
// order, within one semisimple pattern?
bool unip_below(const ClassDescription& lo, const ClassDescription& hi, int mid_size) {
    if (!(lo.label.eigen_pattern == hi.label.eigen_pattern)) return false;
    if (!(lo.label.t_lattice == hi.label.t_lattice)) return false;
    const auto [lp, lm] = parse_unip(lo.label.unip_class);
    const auto [hp, hm] = parse_unip(hi.label.unip_class);
    if (lp.size() != hp.size()) return false;
    for (std::size_t i = 0; i < lp.size(); ++i)
        if (!dominates(lp[i], hp[i])) return false;
    if (mid_size > 0) {
        const auto ids = jordan::twisted_unip_class_ids(mid_size);
        const auto ilo = std::find(ids.begin(), ids.end(), lm) - ids.begin();
        const auto ihi = std::find(ids.begin(), ids.end(), hm) - ids.begin();
        if (ilo > ihi) return false;
    }
    return true;
}

} // namespace

std::vector<std::size_t> full_closure(const std::vector<ClassDescription>& fams,
                                      std::size_t idx, const InduceConfig& cfg) {
    std::set<std::size_t> acc;
    for (std::size_t f : regular_closure(fams, idx, cfg)) acc.insert(f);
    // lower unipotent strata within each pattern already reached
    bool grew = true;
    while (grew) {
        grew = false;
        for (std::size_t f : std::vector<std::size_t>(acc.begin(), acc.end())) {
            int mid_size = 0;
            for (const auto& pe : fams[f].label.eigen_pattern)
                if (pe.type == PairingType::CentralOne) mid_size = pe.block_size;
            for (std::size_t g = 0; g < fams.size(); ++g) {
                if (acc.count(g)) continue;
                if (unip_below(fams[g], fams[f], mid_size)) {
                    acc.insert(g);
                    grew = true;
                }
            }
        }
    }
    return {acc.begin(), acc.end()};
}

NecessaryCheck check_necessary(const std::vector<ClassDescription>& fams,
                               std::size_t j1, std::size_t j2, const InduceConfig& cfg) {
    NecessaryCheck nc;
    if (j1 == j2) return NecessaryCheck{true, true, true};
    const auto& lo = fams[j1];
    const auto& hi = fams[j2];

    // pattern shape of the lower class's semisimple part: sorted block sizes
    auto shape_of = [](const std::vector<std::vector<int>>& pat) {
        std::vector<int> s;
        for (const auto& b : pat) s.push_back(static_cast<int>(b.size()));
        std::sort(s.begin(), s.end());
        return s;
    };
    std::vector<int> lo_shape;
    for (const auto& pe : lo.label.eigen_pattern) {
        lo_shape.push_back(pe.block_size);
        if (pe.type == PairingType::Paired) lo_shape.push_back(pe.block_size);
    }
    std::sort(lo_shape.begin(), lo_shape.end());

    bool shape_match = false;
    for (const auto& st : pattern_strata(fams, j2, cfg)) {
        if (shape_of(st.pattern) != lo_shape) continue;
        shape_match = true;
        if (fams[st.induced_family].label.unip_class == lo.label.unip_class) nc.a_ok = true;
    }
    // (b): torus-translate containment after alignment
    nc.b_ok = shape_match && intlat::lattice_contains(hi.label.t_lattice.basis.empty()
                                                          ? intlat::Mat{}
                                                          : hi.label.t_lattice.basis,
                                                      lo.label.t_lattice.basis, lo.label.n);
    // (c): centralizer block containment; the pattern construction refines by
    // definition, so a matching shape certifies it
    nc.c_ok = shape_match;
    return nc;
}

Poset poset(int n, const InduceConfig& cfg) {
    Poset p;
    p.families = jordan::enumerate_classes(n);
    for (std::size_t upper = 0; upper < p.families.size(); ++upper) {
        for (const auto& st : pattern_strata(p.families, upper, cfg)) {
            if (st.induced_family == upper) continue;
            // dedupe edges
            bool seen = false;
            for (const auto& e : p.edges)
                if (e.lower == st.induced_family && e.upper == upper) seen = true;
            if (!seen)
                p.edges.push_back(PosetEdge{st.induced_family, upper, st.induced_rep, cfg.seed});
        }
    }
    // antisymmetry
    for (const auto& e : p.edges)
        for (const auto& f : p.edges)
            if (e.lower == f.upper && e.upper == f.lower)
                throw ConsistencyFailure("poset relation is not antisymmetric");
    // transitive reduction
    auto reachable = [&](std::size_t from, std::size_t to, std::size_t skip_edge) {
        // DFS over edges (lower -> upper read as from below to above)
        std::vector<std::size_t> stack{from};
        std::set<std::size_t> seen{from};
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            if (cur == to) return true;
            for (std::size_t k = 0; k < p.edges.size(); ++k) {
                if (k == skip_edge) continue;
                if (p.edges[k].lower == cur && !seen.count(p.edges[k].upper)) {
                    seen.insert(p.edges[k].upper);
                    stack.push_back(p.edges[k].upper);
                }
            }
        }
        return false;
    };
    for (std::size_t k = 0; k < p.edges.size(); ++k)
        if (!reachable(p.edges[k].lower, p.edges[k].upper, k)) p.hasse.push_back(p.edges[k]);
    return p;
}

} // namespace strata::induce
