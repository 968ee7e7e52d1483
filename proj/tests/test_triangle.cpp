#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "trigon/triangle.hpp"

using namespace trigon;

namespace {

double max_identity_residual(const SideTriple& sides) {
    double worst = 0.0;
    for (const auto& res : identity_residuals(sides)) worst = std::max(worst, res.residual);
    return worst;
}

}  // namespace

TEST_CASE("3-4-5 derived quantities match hand values") {
    const DerivedQuantities q = derive(SideTriple(3, 4, 5));
    CHECK(q.s == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(q.area == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(q.r == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.R == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(q.ra == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(q.rb == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(q.rc == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(q.ha == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(q.hb == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(q.hc == doctest::Approx(2.4).epsilon(1e-15));
    CHECK(q.C == doctest::Approx(std::acos(0.0)).epsilon(1e-14));  // right angle
    CHECK(q.A == doctest::Approx(std::atan2(3.0, 4.0)).epsilon(1e-14));
    CHECK(q.B == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-14));
    CHECK(q.tan_half_A == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(q.tan_half_C == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(q.degeneracy == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("angles always sum to pi") {
    const double pi = std::acos(-1.0);
    for (auto sides : {SideTriple(3, 4, 5), SideTriple(1, 1, 1), SideTriple(1, 1, 1.999),
                       SideTriple(0.2, 1.0, 1.1)}) {
        const DerivedQuantities q = derive(sides);
        CHECK(q.A + q.B + q.C == doctest::Approx(pi).epsilon(1e-12));
    }
}

TEST_CASE("construction rejects invalid sides with a named constraint") {
    CHECK_THROWS_WITH_AS(SideTriple(1, 1, 2), doctest::Contains("a + b > c"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(SideTriple(5, 1, 1), doctest::Contains("b + c > a"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(SideTriple(1, 5, 1), doctest::Contains("c + a > b"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(SideTriple(0, 1, 1), doctest::Contains("> 0"),
                         std::invalid_argument);
    CHECK_THROWS_WITH_AS(SideTriple(-3, 4, 5), doctest::Contains("invalid triangle"),
                         std::invalid_argument);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SideTriple(inf, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(RaviTriple(1, 0, 1), std::invalid_argument);
}

TEST_CASE("ravi coordinates round-trip through sides") {
    const RaviTriple rv(0.3, 1.7, 0.05);
    const SideTriple sides = sides_from_ravi(rv);
    const RaviTriple back = ravi_from_sides(sides);
    CHECK(back.m == doctest::Approx(rv.m).epsilon(1e-14));
    CHECK(back.n == doctest::Approx(rv.n).epsilon(1e-14));
    CHECK(back.p == doctest::Approx(rv.p).epsilon(1e-14));

    const SideTriple t(3, 4, 5);
    const SideTriple t2 = sides_from_ravi(ravi_from_sides(t));
    CHECK(t2.a == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(t2.b == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(t2.c == doctest::Approx(5.0).epsilon(1e-15));
}

TEST_CASE("perimeter normalization is exact and bitwise idempotent") {
    const SideTriple n1 = normalize_perimeter(SideTriple(3, 4, 5));
    CHECK(n1.a + n1.b + n1.c == doctest::Approx(2.0).epsilon(1e-15));
    const SideTriple n2 = normalize_perimeter(n1);
    CHECK(n2.a == n1.a);
    CHECK(n2.b == n1.b);
    CHECK(n2.c == n1.c);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.01, 1.0);
    for (int i = 0; i < 2000; ++i) {
        const double m = u(rng), n = u(rng), p = u(rng);
        const SideTriple first = normalize_perimeter(sides_from_ravi(RaviTriple(m, n, p)));
        const SideTriple second = normalize_perimeter(first);
        CHECK(first.a == second.a);
        CHECK(first.b == second.b);
        CHECK(first.c == second.c);
    }
}

TEST_CASE("derived quantities transform correctly under rescaling") {
    const DerivedQuantities q1 = derive(SideTriple(3, 4, 5));
    for (double k : {0.25, 2.0, 1000.0}) {
        const DerivedQuantities qk = derive(SideTriple(3 * k, 4 * k, 5 * k));
        CHECK(qk.s == doctest::Approx(k * q1.s).epsilon(1e-13));
        CHECK(qk.area == doctest::Approx(k * k * q1.area).epsilon(1e-13));
        CHECK(qk.R == doctest::Approx(k * q1.R).epsilon(1e-13));
        CHECK(qk.r == doctest::Approx(k * q1.r).epsilon(1e-13));
        CHECK(qk.ra == doctest::Approx(k * q1.ra).epsilon(1e-13));
        CHECK(qk.ha == doctest::Approx(k * q1.ha).epsilon(1e-13));
        CHECK(qk.A == doctest::Approx(q1.A).epsilon(1e-13));
        CHECK(qk.degeneracy == doctest::Approx(q1.degeneracy).epsilon(1e-13));
    }
}

TEST_CASE("identity ids are stable and statements exist") {
    const auto& ids = identity_ids();
    CHECK(ids.size() == 17);
    CHECK(ids.front() == "I1");
    CHECK(ids.back() == "I17");
    for (auto id : ids) CHECK(!identity_statement(id).empty());
    CHECK_THROWS_AS(identity_statement("I99"), std::invalid_argument);
}

// (2 sum ab - sum a^2)^2 = 48 S^2 + 4 (sum a^4 + abc sum a - sum ab(a^2+b^2)),
// checked with exact integer arithmetic at integer-sided triangles. The
// factor 4 is what ties the squared-difference terms to 16 S^2 later on.
TEST_CASE("side-polynomial identity has the integer factor 4") {
    struct Case { long long a, b, c; };
    for (const Case& tc : {Case{3, 4, 5}, Case{2, 3, 4}, Case{5, 5, 6}, Case{7, 8, 9}}) {
        const long long a = tc.a, b = tc.b, c = tc.c;
        const long long sum_sq = a * a + b * b + c * c;
        const long long sum_ab = a * b + b * c + c * a;
        const long long lhs = (2 * sum_ab - sum_sq) * (2 * sum_ab - sum_sq);
        // 16 S^2 = 2a^2b^2 + 2b^2c^2 + 2c^2a^2 - a^4 - b^4 - c^4 (Heron)
        const long long sixteen_s2 = 2 * (a * a * b * b + b * b * c * c + c * c * a * a) -
                                     (a * a * a * a + b * b * b * b + c * c * c * c);
        const long long quartic = a * a * a * a + b * b * b * b + c * c * c * c +
                                  a * b * c * (a + b + c) -
                                  (a * b * (a * a + b * b) + b * c * (b * b + c * c) +
                                   c * a * (c * c + a * a));
        CHECK(lhs == 3 * sixteen_s2 + 4 * quartic);
    }
}

TEST_CASE("identity residuals are tiny on hand points and random shapes") {
    CHECK(max_identity_residual(SideTriple(3, 4, 5)) <= 1e-13);
    CHECK(max_identity_residual(SideTriple(1, 1, 1)) <= 1e-13);
    CHECK(max_identity_residual(SideTriple(2, 3, 4)) <= 1e-13);

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> u(1e-3, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const SideTriple sides = sides_from_ravi(RaviTriple(u(rng), u(rng), u(rng)));
        worst = std::max(worst, max_identity_residual(sides));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("identity residuals stay tiny under extreme uniform scaling") {
    for (double k : {1e-6, 1e6}) {
        CHECK(max_identity_residual(SideTriple(3 * k, 4 * k, 5 * k)) <= 1e-11);
    }
}
