#include <doctest.h>

#include "strata/dimension.hpp"
#include "strata/induction.hpp"

using namespace strata;

namespace {

const std::vector<ClassDescription>& fams3() {
    static const auto f = jordan::enumerate_classes(3);
    return f;
}

std::size_t by_name(const std::vector<ClassDescription>& fams, const std::string& name) {
    for (std::size_t i = 0; i < fams.size(); ++i)
        if (fams[i].name == name) return i;
    FAIL("family not found: ", name);
    return 0;
}

LeviDescriptor torus_levi(int n) {
    std::vector<std::vector<int>> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back({i});
    return LeviDescriptor{n, blocks, true};
}

} // namespace

TEST_CASE("induce from the full group is the orbit itself") {
    const LeviDescriptor full{3, {{0, 1, 2}}, true};
    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    const GroupElt x{u1, 1};
    const auto od = induce::induce_orbit(full, x);
    CHECK(od.dimension == 7);
    CHECK(od.label == jordan::class_of(x));
}

TEST_CASE("induction from (T, tau) lands on the subregular unipotent class") {
    const auto od = induce::induce_orbit(torus_levi(3), grp::tau(3, 1));
    CHECK(od.dimension == 7);
    CHECK(od.unip_class == "reg");
    // tau itself is not in the induced orbit
    CHECK_FALSE(od.label == jordan::class_of(grp::tau(3, 1)));
    // the sampled representative really lies in the u1 tau class
    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    CHECK(od.label == jordan::class_of(GroupElt{u1, 1}));
}

TEST_CASE("two runs of induce agree (single-orbit property)") {
    InduceConfig c1;
    c1.seed = 0x1111;
    InduceConfig c2;
    c2.seed = 0x2222;
    const auto o1 = induce::induce_orbit(torus_levi(3), grp::tau(3, 1), c1);
    const auto o2 = induce::induce_orbit(torus_levi(3), grp::tau(3, 1), c2);
    CHECK(o1.dimension == o2.dimension);
    CHECK(o1.ss_invariant == o2.ss_invariant);
    CHECK(o1.unip_class == o2.unip_class);
}

TEST_CASE("semisimple parts are rigid along the radical coset") {
    // all samples share the eigenvalue multiset of g_s
    const auto& fams = fams3();
    const auto& ttau = fams[by_name(fams, "J(t.tau)")];
    const auto od = induce::induce_orbit(ttau.label.levi, ttau.representative);
    int fd = 1;
    const auto jp = grp::jordan_decompose(ttau.representative);
    const auto rl = gf::split_poly(mat::char_poly(jp.s.mat));
    std::vector<std::pair<std::string, int>> expect;
    for (const auto& [r, m] : rl.roots) expect.emplace_back(gf::to_string(r), m);
    CHECK(od.ss_invariant == expect);
    (void)fd;
}

TEST_CASE("reduce_to_unipotent factors the induction") {
    const auto red = induce::reduce_to_unipotent(torus_levi(3), grp::tau(3, 1));
    CHECK(red.s == grp::identity(3, 1));
    CHECK(red.unip.dimension == 7);
    CHECK(red.unip.unip_class == "reg");
    const auto od = induce::induce_orbit(torus_levi(3), grp::tau(3, 1));
    CHECK(red.unip.label == od.label);
    CHECK(red.unip.dimension == od.dimension);
}

TEST_CASE("reduce_to_unipotent on a mixed class") {
    const auto& fams = fams3();
    const auto& ttau = fams[by_name(fams, "J(t.tau)")];
    const auto red = induce::reduce_to_unipotent(ttau.label.levi, ttau.representative);
    const auto od = induce::induce_orbit(ttau.label.levi, ttau.representative);
    CHECK(red.unip.dimension == od.dimension);
    CHECK(red.unip.label == od.label);
    // the semisimple part is the diagonal part of the representative's
    // Jordan decomposition
    const auto jp = grp::jordan_decompose(ttau.representative);
    CHECK(red.s == jp.s);
}

TEST_CASE("codimension preservation on the n=3 classification pairs") {
    // (T, tau): codim 1 on both sides
    const auto c1 = induce::codim_check(torus_levi(3), grp::tau(3, 1));
    CHECK(c1.codim_levi == 1);
    CHECK(c1.codim_coset == 1);
    CHECK(c1.equal);

    // (T, t tau) for the regular family: codim 1
    const auto& fams = fams3();
    const auto& ttau = fams[by_name(fams, "J(t.tau)")];
    const auto c2 = induce::codim_check(ttau.label.levi, ttau.representative);
    CHECK(c2.codim_levi == 1);
    CHECK(c2.equal);

    // isolated families: L = G°, codim = codim of the orbit, trivially equal
    const LeviDescriptor full{3, {{0, 1, 2}}, true};
    const auto c3 = induce::codim_check(full, grp::tau(3, 1));
    CHECK(c3.codim_levi == 3);
    CHECK(c3.equal);
    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    const auto c4 = induce::codim_check(full, GroupElt{u1, 1});
    CHECK(c4.codim_levi == 1);
    CHECK(c4.equal);

    // codim 0 occurs for the inner unipotent induction of the regular family:
    // G^{s°} = T = L^{s°}, a trivial induction
    const auto jp = grp::jordan_decompose(ttau.representative);
    const auto c5 = induce::codim_check(torus_levi(3), jp.u);
    CHECK(c5.codim_levi == c5.codim_coset);
}

TEST_CASE("regular closures of the three SL(3) families") {
    const auto& fams = fams3();
    const std::size_t i_t = by_name(fams, "J(t.tau)");
    const std::size_t i_u = by_name(fams, "J(u1.tau)");
    const std::size_t i_tau = by_name(fams, "J(tau)");

    const auto rc_t = induce::regular_closure(fams, i_t);
    CHECK(rc_t == std::vector<std::size_t>{std::min(i_t, i_u), std::max(i_t, i_u)});
    CHECK(induce::regular_closure(fams, i_u) == std::vector<std::size_t>{i_u});
    CHECK(induce::regular_closure(fams, i_tau) == std::vector<std::size_t>{i_tau});
}

TEST_CASE("full closure of the regular family covers the coset") {
    const auto& fams = fams3();
    const std::size_t i_t = by_name(fams, "J(t.tau)");
    const auto fc = induce::full_closure(fams, i_t);
    CHECK(fc.size() == 3);
    CHECK(induce::full_closure(fams, by_name(fams, "J(tau)")) ==
          std::vector<std::size_t>{by_name(fams, "J(tau)")});
}

TEST_CASE("closure members: regular ones share the dimension, extras drop") {
    const auto& fams = fams3();
    const std::size_t i_t = by_name(fams, "J(t.tau)");
    const auto rc = induce::regular_closure(fams, i_t);
    for (std::size_t f : rc) CHECK(fams[f].orbit_dimension == fams[i_t].orbit_dimension);
    for (std::size_t f : induce::full_closure(fams, i_t))
        if (std::find(rc.begin(), rc.end(), f) == rc.end())
            CHECK(fams[f].orbit_dimension < fams[i_t].orbit_dimension);
}

TEST_CASE("necessary conditions for the order") {
    const auto& fams = fams3();
    const std::size_t i_t = by_name(fams, "J(t.tau)");
    const std::size_t i_u = by_name(fams, "J(u1.tau)");
    const std::size_t i_tau = by_name(fams, "J(tau)");

    const auto n1 = induce::check_necessary(fams, i_u, i_t);
    CHECK(n1.a_ok);
    CHECK(n1.b_ok);
    CHECK(n1.c_ok);

    const auto n2 = induce::check_necessary(fams, i_tau, i_t);
    CHECK_FALSE(n2.a_ok);

    const auto n3 = induce::check_necessary(fams, i_t, i_t);
    CHECK(n3.a_ok);
    CHECK(n3.b_ok);
    CHECK(n3.c_ok);
}

TEST_CASE("poset for n = 3: exactly one strict relation") {
    const auto p = induce::poset(3);
    REQUIRE(p.edges.size() == 1);
    CHECK(p.families[p.edges[0].lower].name == "J(u1.tau)");
    CHECK(p.families[p.edges[0].upper].name == "J(t.tau)");
    CHECK(p.hasse.size() == 1);
    // the witness element lies in the lower family
    CHECK(jordan::class_of(p.edges[0].witness) == p.families[p.edges[0].lower].label);
}

TEST_CASE("poset for n = 2 mirrors the n = 3 picture") {
    const auto p = induce::poset(2);
    REQUIRE(p.edges.size() == 1);
    CHECK(p.families[p.edges[0].lower].name == "J(u1.tau)");
    CHECK(p.families[p.edges[0].upper].name == "J(t.tau)");
}
