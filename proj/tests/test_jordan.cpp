#include <doctest.h>

#include <random>

#include "strata/jordan.hpp"

using namespace strata;

namespace {

GroupElt reg_ttau(int m = 2) {
    const Fq a = gf::gen(m);
    return GroupElt{mat::diag(m, {a, gf::one(m), gf::inv(a)}), 1};
}

GroupElt u1tau() {
    Mat u = Mat::identity(3, 1);
    u.at(0, 1) = gf::one(1);
    return GroupElt{u, 1};
}

Mat random_sl(int n, int m, std::mt19937_64& rng, int steps = 24) {
    Mat x = Mat::identity(n, m);
    for (int s = 0; s < steps; ++s) {
        const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
        int j = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (i == j) j = (j + 1) % n;
        Mat e = Mat::identity(n, m);
        e.at(i, j) = gf::make(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
        x = mat::mul(x, e);
    }
    return x;
}

} // namespace

TEST_CASE("jordan_partition") {
    Mat u = Mat::identity(3, 1);
    u.at(0, 1) = gf::one(1);
    CHECK(jordan::jordan_partition(u) == std::vector<int>{2, 1});
    u.at(1, 2) = gf::one(1);
    CHECK(jordan::jordan_partition(u) == std::vector<int>{3});
    CHECK(jordan::jordan_partition(Mat::identity(4, 1)) == std::vector<int>{1, 1, 1, 1});
}

TEST_CASE("gl unipotent centralizer dims") {
    CHECK(jordan::gl_unip_centralizer_dim({1}) == 1);
    CHECK(jordan::gl_unip_centralizer_dim({2}) == 2);
    CHECK(jordan::gl_unip_centralizer_dim({1, 1}) == 4);
    CHECK(jordan::gl_unip_centralizer_dim({3}) == 3);
    CHECK(jordan::gl_unip_centralizer_dim({2, 1}) == 5);
}

TEST_CASE("twisted unipotent classes for small blocks") {
    CHECK(jordan::twisted_unip_class(Mat::identity(3, 1)) == "min");
    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    CHECK(jordan::twisted_unip_class(u1) == "reg");
    // the paper's criterion: a1 == a3 separates the two classes on U tau
    for (int a1 = 0; a1 < 2; ++a1)
        for (int a2 = 0; a2 < 2; ++a2)
            for (int a3 = 0; a3 < 2; ++a3) {
                Mat v = Mat::identity(3, 1);
                v.at(0, 1) = gf::make(1, static_cast<std::uint32_t>(a1));
                v.at(0, 2) = gf::make(1, static_cast<std::uint32_t>(a2));
                v.at(1, 2) = gf::make(1, static_cast<std::uint32_t>(a3));
                CHECK(jordan::twisted_unip_class(v) == ((a1 == a3) ? "min" : "reg"));
            }
}

TEST_CASE("class_of: the three SL(3) coset families") {
    const auto l1 = jordan::class_of(reg_ttau());
    CHECK(l1.t_lattice.basis == intlat::Mat{{1, 0, -1}});
    CHECK(l1.eigen_pattern.size() == 2);
    CHECK(l1.eigen_pattern[0] == EigenPatternEntry{1, PairingType::Paired});
    CHECK(l1.eigen_pattern[1] == EigenPatternEntry{1, PairingType::CentralOne});
    CHECK(l1.unip_class == "1;min");
    CHECK(l1.eps == 1);

    const auto l2 = jordan::class_of(u1tau());
    CHECK(l2.t_lattice.rank() == 0);
    CHECK(l2.levi.blocks == std::vector<std::vector<int>>{{0, 1, 2}});
    CHECK(l2.unip_class == "reg");

    const auto l3 = jordan::class_of(grp::tau(3, 1));
    CHECK(l3.t_lattice.rank() == 0);
    CHECK(l3.unip_class == "min");
    CHECK_FALSE(l2 == l3);
    CHECK_FALSE(l1 == l2);
}

TEST_CASE("class_of is conjugation invariant") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 50; ++it) {
        const GroupElt x{random_sl(3, 2, rng), 1};
        const GroupElt g{random_sl(3, 2, rng), 0};
        CHECK(jordan::class_of(x) == jordan::class_of(grp::conjugate(g, x)));
    }
}

TEST_CASE("same_class on the spec instances") {
    CHECK(jordan::same_class(reg_ttau(), reg_ttau()));
    // two regular translates from the same family
    const int m = 4;
    const Fq a = gf::gen(m), b = gf::pow(gf::gen(m), 7);
    const GroupElt x{mat::diag(m, {a, gf::one(m), gf::inv(a)}), 1};
    const GroupElt y{mat::diag(m, {b, gf::one(m), gf::inv(b)}), 1};
    CHECK(jordan::same_class(x, y));
    CHECK_FALSE(jordan::same_class(grp::tau(3, 1), u1tau()));
}

TEST_CASE("class labels are insensitive to the ambient field") {
    const GroupElt x = reg_ttau();
    const GroupElt y = grp::embed(x, 6);
    CHECK(jordan::class_of(x) == jordan::class_of(y));
}

TEST_CASE("enumerate_classes(3): the paper's three families") {
    const auto fams = jordan::enumerate_classes(3);
    REQUIRE(fams.size() == 3);
    int n_isolated = 0;
    for (const auto& f : fams) {
        CHECK(jordan::class_of(f.representative) == f.label);
        if (f.isolated) ++n_isolated;
    }
    CHECK(n_isolated == 2);
    // named families with the right invariants
    for (const auto& f : fams) {
        if (f.name == "J(t.tau)") {
            CHECK(f.label.t_lattice.rank() == 1);
            CHECK(f.orbit_dimension == 7);
            CHECK(f.dimension == 8);
            CHECK(f.regular_slice == std::vector<std::string>{"z1 != 1"});
        } else if (f.name == "J(u1.tau)") {
            CHECK(f.orbit_dimension == 7);
            CHECK(f.isolated);
        } else if (f.name == "J(tau)") {
            CHECK(f.orbit_dimension == 5);
            CHECK(f.isolated);
        } else {
            FAIL("unexpected family name ", f.name);
        }
    }
}

TEST_CASE("enumerate_classes(2)") {
    const auto fams = jordan::enumerate_classes(2);
    REQUIRE(fams.size() == 3);
    for (const auto& f : fams) CHECK(jordan::class_of(f.representative) == f.label);
    // SL(2): tau acts trivially; dims: regular family 2, u1 2, tau 0
    for (const auto& f : fams) {
        if (f.name == "J(t.tau)") CHECK(f.orbit_dimension == 2);
        if (f.name == "J(u1.tau)") CHECK(f.orbit_dimension == 2);
        if (f.name == "J(tau)") CHECK(f.orbit_dimension == 0);
    }
}

TEST_CASE("enumerate_classes(4) is self consistent") {
    const auto fams = jordan::enumerate_classes(4);
    CHECK(fams.size() >= 5);
    for (const auto& f : fams) {
        CHECK(jordan::class_of(f.representative) == f.label);
        CHECK(f.orbit_dimension >= 0);
        CHECK(f.orbit_dimension <= 15);
    }
    // labels are pairwise distinct
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = i + 1; j < fams.size(); ++j)
            CHECK_FALSE(fams[i].label == fams[j].label);
}

TEST_CASE("members of one family share invariants with the representative") {
    std::mt19937_64 rng(88);
    const auto fams = jordan::enumerate_classes(3);
    // conjugate representatives land on their own family
    for (const auto& f : fams) {
        for (int it = 0; it < 5; ++it) {
            const int m = f.representative.deg();
            const GroupElt g{random_sl(3, m, rng), 0};
            const auto lab = jordan::class_of(grp::conjugate(g, f.representative));
            CHECK(lab == f.label);
        }
    }
}

TEST_CASE("isolated class structure") {
    const auto st = jordan::isolated_class_structure(grp::tau(3, 1));
    CHECK(st.torus_part.rank() == 0);
    CHECK_THROWS_AS(jordan::isolated_class_structure(reg_ttau()), NotIsolated);

    // relative to L = T: the isolated class of t tau in N_G(T) is T(t tau)(T·t tau),
    // with torus part T^tau of rank 1
    const LeviDescriptor torus_levi{3, {{0}, {1}, {2}}, true};
    const auto rel = jordan::isolated_class_structure(reg_ttau(), torus_levi);
    CHECK(rel.torus_part.basis == intlat::Mat{{1, 0, -1}});

    CHECK(jordan::sstar_constraints_sl3() == std::vector<std::string>{"alpha != sqrt(beta)^-1"});
}
