#include <doctest.h>

#include <random>

#include "strata/group.hpp"

using namespace strata;

namespace {

Mat elementary(int n, int deg, int i, int j, const Fq& c) {
    Mat e = Mat::identity(n, deg);
    e.at(i, j) = c;
    return e;
}

Mat random_sl(int n, int m, std::mt19937_64& rng, int steps = 24) {
    Mat x = Mat::identity(n, m);
    for (int s = 0; s < steps; ++s) {
        const int i = static_cast<int>(rng() % static_cast<unsigned>(n));
        int j = static_cast<int>(rng() % static_cast<unsigned>(n));
        if (i == j) j = (j + 1) % n;
        const Fq c = gf::make(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
        x = mat::mul(x, elementary(n, m, i, j, c));
    }
    return x;
}

GroupElt coset_elt(Mat m) { return GroupElt{std::move(m), 1}; }

} // namespace

TEST_CASE("tau_twist basics") {
    const Mat id3 = Mat::identity(3, 1);
    CHECK(grp::tau_twist(id3) == id3);

    // diag(a,b,c) -> diag(c^-1, b^-1, a^-1)
    const int m = 4;
    const Fq a = gf::gen(m), b = gf::pow(gf::gen(m), 3), c = gf::inv(gf::mul(a, b));
    const Mat d = mat::diag(m, {a, b, c});
    const Mat td = grp::tau_twist(d);
    CHECK(td == mat::diag(m, {gf::inv(c), gf::inv(b), gf::inv(a)}));

    // I + E12 -> I + E23 over GF(2)
    Mat u = Mat::identity(3, 1);
    u.at(0, 1) = gf::one(1);
    Mat expect = Mat::identity(3, 1);
    expect.at(1, 2) = gf::one(1);
    CHECK(grp::tau_twist(u) == expect);
}

TEST_CASE("tau_twist is an involutive automorphism, randomized") {
    std::mt19937_64 rng(31);
    for (int it = 0; it < 1000; ++it) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const Mat x = random_sl(n, 2, rng), y = random_sl(n, 2, rng);
        CHECK(grp::tau_twist(grp::tau_twist(x)) == x);
        CHECK(grp::tau_twist(mat::mul(x, y)) == mat::mul(grp::tau_twist(x), grp::tau_twist(y)));
    }
}

TEST_CASE("semidirect product law") {
    const GroupElt t = grp::tau(3, 1);
    CHECK(grp::compose(t, t) == grp::identity(3, 1));

    std::mt19937_64 rng(5);
    const GroupElt x{random_sl(3, 2, rng), 0}, y{random_sl(3, 2, rng), 0};
    CHECK(grp::compose(x, y).mat == mat::mul(x.mat, y.mat));
    CHECK(grp::compose(x, y).eps == 0);

    // associativity across the twist
    const GroupElt z{random_sl(3, 2, rng), 1};
    CHECK(grp::compose(grp::compose(x, z), y) == grp::compose(x, grp::compose(z, y)));
    CHECK(grp::compose(z, grp::inverse(z)) == grp::identity(3, 2));
}

TEST_CASE("(u1 tau)^2 over GF(2)") {
    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    const GroupElt x = coset_elt(u1);
    const GroupElt sq = grp::compose(x, x);
    Mat expect = Mat::identity(3, 1);
    expect.at(0, 1) = gf::one(1);
    expect.at(1, 2) = gf::one(1);
    expect.at(0, 2) = gf::one(1);
    CHECK(sq.eps == 0);
    CHECK(sq.mat == expect);
    CHECK(grp::order(x) == 8);
}

TEST_CASE("jordan decomposition: semisimple and unipotent extremes") {
    const int m = 2;
    const Fq a = gf::gen(m);
    const GroupElt x{mat::diag(m, {a, gf::one(m), gf::inv(a)}), 0};
    const auto jp = grp::jordan_decompose(x);
    CHECK(jp.s == x);
    CHECK(jp.u == grp::identity(3, m));

    Mat u1 = Mat::identity(3, 1);
    u1.at(0, 1) = gf::one(1);
    const GroupElt y = coset_elt(u1);
    const auto jy = grp::jordan_decompose(y);
    CHECK(jy.s == grp::identity(3, 1));
    CHECK(jy.u == y);
}

TEST_CASE("jordan decomposition matches the closed form for diagonal coset elements") {
    // (diag(a,b,(ab)^-1), 1): s = diag(a sqrt(b), 1, (a sqrt(b))^-1),
    //                         u = (diag(sqrt(b)^-1, b, sqrt(b)^-1), 1)
    std::mt19937_64 rng(77);
    for (int it = 0; it < 100; ++it) {
        const int m = 1 + static_cast<int>(rng() % 8);
        const auto r = [&] {
            while (true) {
                const Fq v = gf::make(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
                if (!gf::is_zero(v)) return v;
            }
        };
        const Fq a = r(), b = r();
        const Fq sb = gf::sqrt(b);
        const GroupElt x = coset_elt(mat::diag(m, {a, b, gf::inv(gf::mul(a, b))}));
        const auto jp = grp::jordan_decompose(x);
        const Fq asb = gf::mul(a, sb);
        CHECK(jp.s.mat == mat::diag(m, {asb, gf::one(m), gf::inv(asb)}));
        CHECK(jp.s.eps == 0);
        CHECK(jp.u.mat == mat::diag(m, {gf::inv(sb), b, gf::inv(sb)}));
        CHECK(jp.u.eps == 1);
        CHECK(gf::pow(b, std::uint64_t{1} << (m - 1)) == sb);  // sqrt is b^(2^(m-1))
    }
}

TEST_CASE("jordan decomposition properties, randomized") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 120; ++it) {
        const int m = 1 + static_cast<int>(rng() % 2);
        const int eps = static_cast<int>(rng() & 1);
        const GroupElt x{random_sl(3, m, rng), eps};
        const auto jp = grp::jordan_decompose(x);
        // uniqueness via idempotence
        const auto js = grp::jordan_decompose(jp.s);
        const auto ju = grp::jordan_decompose(jp.u);
        CHECK(js.s == jp.s);
        CHECK(js.u == grp::identity(3, m));
        CHECK(ju.s == grp::identity(3, m));
        CHECK(ju.u == jp.u);
        // no semisimple elements in the tau coset
        CHECK(jp.s.eps == 0);
        CHECK(jp.u.eps == x.eps);
        CHECK((grp::order(jp.s) & 1) == 1);
        const auto ou = grp::order(jp.u);
        CHECK((ou & (ou - 1)) == 0);
        // conjugation equivariance
        const GroupElt g{random_sl(3, m, rng), 0};
        const auto jc = grp::jordan_decompose(grp::conjugate(g, x));
        CHECK(jc.s == grp::conjugate(g, jp.s));
        CHECK(jc.u == grp::conjugate(g, jp.u));
    }
}

TEST_CASE("elements of U<tau> have 2-power order") {
    std::mt19937_64 rng(19);
    for (int it = 0; it < 200; ++it) {
        const int m = 1 + static_cast<int>(rng() % 2);
        Mat v = Mat::identity(3, m);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                v.at(i, j) = gf::make(m, static_cast<std::uint32_t>(rng() & ((1u << m) - 1)));
        const auto o = grp::order(coset_elt(v));
        CHECK((o & (o - 1)) == 0);
    }
}

TEST_CASE("normal form: tau itself") {
    const auto nf = grp::normal_form_tu_tau(grp::tau(3, 1));
    CHECK(nf.t == Mat::identity(3, 1));
    CHECK(nf.u == Mat::identity(3, 1));
    CHECK(nf.conj == grp::identity(3, 1));
}

TEST_CASE("normal form of a generic diagonal coset element") {
    // x = (diag(a, b, (ab)^-1), 1): semisimple part has eigenvalues
    // {a sqrt(b), 1, inverse}; the normal form is t tau with u = Id.
    const int m = 4;
    const Fq a = gf::gen(m), b = gf::pow(gf::gen(m), 5);
    const GroupElt x = coset_elt(mat::diag(m, {a, b, gf::inv(gf::mul(a, b))}));
    const auto nf = grp::normal_form_tu_tau(x);
    const Fq asb = gf::embed(gf::mul(a, gf::sqrt(b)), nf.field_degree);
    CHECK(mat::is_diagonal(nf.t));
    // middle entry 1, outer pair {asb, asb^-1}
    CHECK(nf.t.at(1, 1) == gf::one(nf.field_degree));
    const bool straight = nf.t.at(0, 0) == asb && nf.t.at(2, 2) == gf::inv(asb);
    const bool flipped = nf.t.at(0, 0) == gf::inv(asb) && nf.t.at(2, 2) == asb;
    CHECK((straight || flipped));
    CHECK(nf.u == Mat::identity(3, nf.field_degree));
    // round trip
    const GroupElt lhs = grp::conjugate(nf.conj, grp::embed(x, nf.field_degree));
    CHECK(lhs == grp::compose(GroupElt{nf.t, 0}, coset_elt(nf.u)));
}

TEST_CASE("normal form round trip on random coset elements") {
    std::mt19937_64 rng(101);
    for (int it = 0; it < 100; ++it) {
        const GroupElt x = coset_elt(random_sl(3, 4, rng));
        const auto nf = grp::normal_form_tu_tau(x);
        const GroupElt xl = grp::embed(x, nf.field_degree);
        const GroupElt lhs = grp::conjugate(nf.conj, xl);
        const GroupElt rhs = grp::compose(GroupElt{nf.t, 0}, GroupElt{nf.u, 1});
        CHECK(lhs == rhs);
        CHECK(mat::is_unitriangular(nf.u));
        CHECK(mat::is_diagonal(nf.t));
        CHECK(mat::mul(nf.t, nf.u) == mat::mul(nf.u, nf.t));
        CHECK(mat::det(nf.conj.mat) == gf::one(nf.field_degree));
    }
}

TEST_CASE("normal form round trip over GF(2) and n=2") {
    std::mt19937_64 rng(55);
    for (int it = 0; it < 120; ++it) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const GroupElt x = coset_elt(random_sl(n, 1, rng));
        const auto nf = grp::normal_form_tu_tau(x);
        const GroupElt lhs = grp::conjugate(nf.conj, grp::embed(x, nf.field_degree));
        const GroupElt rhs = grp::compose(GroupElt{nf.t, 0}, GroupElt{nf.u, 1});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("normal form fast path leaves canonical inputs alone") {
    // already-normal element: conjugator must be the identity
    const int m = 2;
    const Fq g = gf::gen(m);
    const Fq rep = g.bits <= gf::inv(g).bits ? g : gf::inv(g);
    const GroupElt x = coset_elt(mat::diag(m, {rep, gf::one(m), gf::inv(rep)}));
    const auto nf = grp::normal_form_tu_tau(x);
    CHECK(nf.conj == grp::identity(3, m));
    CHECK(nf.t == x.mat);
}
