#include <doctest.h>

#include <cmath>

#include "ghnabla/error.hpp"
#include "ghnabla/fuzzy.hpp"
#include "gh_oracle.hpp"
#include "support.hpp"

using namespace ghnabla;
using namespace testing;

namespace {

FuzzyNumber tri(double a, double b, double c, int K = 100) { return triangular(a, b, c, K); }

}  // namespace

TEST_CASE("triangular numbers and levels") {
    const FuzzyNumber u = tri(0, 1, 2);
    CHECK(u.level(0.5).lo == 0.5);
    CHECK(u.level(0.5).hi == 1.5);
    CHECK(tri(1, 1, 1).is_crisp());
    const FuzzyNumber half = tri(0, 0.5, 1);
    for (int k = 0; k <= 100; ++k) {
        const double a = k / 100.0;
        CHECK(half.level(a).lo == doctest::Approx(a / 2).epsilon(1e-15));
        CHECK(half.level(a).hi == doctest::Approx(1 - a / 2).epsilon(1e-15));
    }
    const FuzzyNumber ten = tri(0, 1, 2, 10);
    CHECK(ten.level(0.3).lo == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(ten.level(0.3).hi == doctest::Approx(1.7).epsilon(1e-15));
    CHECK(ten.level(0.35).lo == doctest::Approx(0.35).epsilon(1e-15));
    CHECK_THROWS_AS(tri(1, 0, 2), Error);
    try {
        tri(2, 1, 0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OrderViolation);
    }
    CHECK_THROWS_AS(u.level(1.5), Error);
}

TEST_CASE("length at interpolated levels") {
    const FuzzyNumber u = tri(0, 1, 2);
    CHECK(len_alpha(u, 0) == 2);
    CHECK(len_alpha(u, 1) == 0);
    CHECK(len_alpha(u, 0.25) == doctest::Approx(1.5));
    try {
        len_alpha(u, -0.1);
        FAIL("expected AlphaOutOfRange");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AlphaOutOfRange);
    }
}

TEST_CASE("crisp numbers, addition and scaling") {
    CHECK(hausdorff(crisp(2.5, 10), crisp(-1, 10)) == 3.5);
    CHECK(hausdorff(add(tri(0, 1, 2), tri(1, 2, 3)), tri(1, 3, 5)) < 1e-15);
    CHECK(add(tri(0, 1, 2), crisp(0, 100)) == tri(0, 1, 2));
    CHECK(add(crisp(2, 5), crisp(3, 5)) == crisp(5, 5));
    CHECK(scalar_mul(-1, tri(0, 1, 2)) == tri(-2, -1, 0));
    CHECK(scalar_mul(0, tri(0, 1, 2)) == crisp(0, 100));
    CHECK(scalar_mul(2, tri(0, 1, 2)) == tri(0, 2, 4));
    CHECK_THROWS_AS(add(tri(0, 1, 2, 10), tri(0, 1, 2, 20)), Error);
}

TEST_CASE("validation rejects broken level arrays") {
    CHECK_THROWS_AS(FuzzyNumber({0, -1}, {2, 1}), Error);
    CHECK_THROWS_AS(FuzzyNumber({0, 1}, {2, 3}), Error);
    CHECK_THROWS_AS(FuzzyNumber({0, 2}, {2, 1}), Error);
    CHECK_THROWS_AS(FuzzyNumber({0}, {1, 2}), Error);
    CHECK_NOTHROW(FuzzyNumber({0}, {1}));
    CHECK(FuzzyNumber::repaired({0, 1e-15 * -1}, {1, 1}, 1e-12).has_value());
    CHECK_FALSE(FuzzyNumber::repaired({0, -1e-3}, {1, 1}, 1e-12).has_value());
}

TEST_CASE("gH-difference examples") {
    const auto a = gh_diff(tri(0, 2, 4), tri(0, 1, 2));
    CHECK(a.gh_case == GhCase::CaseI);
    CHECK(hausdorff(*a.value, tri(0, 1, 2)) < 1e-15);

    const FuzzyNumber u = tri(-1, 0.25, 3);
    const auto self = gh_diff(u, u);
    CHECK(self.gh_case == GhCase::Both);
    CHECK(*self.value == crisp(0, 100));

    const auto b = gh_diff(tri(0, 1, 2), tri(0, 2, 4));
    CHECK(b.gh_case == GhCase::CaseII);
    CHECK(hausdorff(*b.value, tri(-2, -1, 0)) < 1e-15);

    const auto none = gh_diff(tri(0, 1, 5), tri(0, 3, 4));
    CHECK(none.gh_case == GhCase::None);
    CHECK_FALSE(none.value.has_value());
    CHECK(none.diagnostics.find("lower endpoint") != std::string::npos);
}

TEST_CASE("H-difference examples") {
    CHECK(*h_diff(tri(0, 2, 4), tri(0, 1, 2)) == *gh_diff(tri(0, 2, 4), tri(0, 1, 2)).value);
    CHECK_FALSE(h_diff(tri(0, 1, 2), tri(0, 2, 4)).has_value());
    const FuzzyNumber u = tri(3, 4, 9);
    CHECK(*h_diff(u, u) == crisp(0, 100));
}

TEST_CASE("Hausdorff distance examples") {
    CHECK(hausdorff(tri(0, 1, 2, 4), tri(1, 2, 3, 4)) == 1);
    CHECK(hausdorff(tri(0, 1, 2), tri(0, 1, 2)) == 0);
    CHECK(hausdorff(crisp(0, 4), crisp(3, 4)) == 3);
    CHECK(norm(tri(-5, 0, 2)) == 5);
}

TEST_CASE("gH-difference matches the fine-grid oracle on random triangular pairs") {
    for (int i = 0; i < 500; ++i) {
        double u[3] = {uniform(-10, 10), uniform(-10, 10), uniform(-10, 10)};
        double v[3] = {uniform(-10, 10), uniform(-10, 10), uniform(-10, 10)};
        std::sort(u, u + 3);
        std::sort(v, v + 3);
        const int K = 20;
        const auto got = gh_diff(triangular(u[0], u[1], u[2], K), triangular(v[0], v[1], v[2], K));
        const auto want = oracle_gh(u, v, K);
        REQUIRE(got.gh_case == want.gh_case);
        if (want.gh_case == GhCase::None) continue;
        for (int k = 0; k <= K; ++k) {
            CHECK(std::abs(got.value->lower()[k] - want.lower[k]) <= 1e-10);
            CHECK(std::abs(got.value->upper()[k] - want.upper[k]) <= 1e-10);
        }
    }
}

TEST_CASE("gH and H consistency and reconstruction") {
    for (int i = 0; i < 500; ++i) {
        const FuzzyNumber u = random_triangular(-10, 10, 50);
        const FuzzyNumber v = random_triangular(-10, 10, 50);
        const auto gh = gh_diff(u, v);
        if (const auto h = h_diff(u, v)) {
            CHECK((gh.gh_case == GhCase::CaseI || gh.gh_case == GhCase::Both));
            CHECK(*h == *gh.value);
        }
        if (!gh.value) continue;
        CHECK(valid_levels(*gh.value));
        const double scale = 1.0 + std::max(u.magnitude(), v.magnitude());
        if (gh.gh_case == GhCase::CaseI) CHECK(hausdorff(add(v, *gh.value), u) <= 1e-12 * scale);
        if (gh.gh_case == GhCase::CaseII) {
            CHECK(hausdorff(add(u, scalar_mul(-1, *gh.value)), v) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("operation outputs satisfy the invariants") {
    for (int i = 0; i < 300; ++i) {
        const FuzzyNumber u = random_dyadic(16);
        const FuzzyNumber v = random_dyadic(16);
        CHECK(valid_levels(add(u, v)));
        CHECK(valid_levels(scalar_mul(uniform(-3, 3), u)));
        const auto d = gh_diff(u, v);
        if (d.value) CHECK(valid_levels(*d.value));
    }
}

TEST_CASE("metric axioms") {
    for (int i = 0; i < 300; ++i) {
        const FuzzyNumber u = random_dyadic(12), v = random_dyadic(12), w = random_dyadic(12), e = random_dyadic(12);
        CHECK(hausdorff(add(u, w), add(v, w)) == hausdorff(u, v));
        const double k = uniform(-5, 5);
        const double d = hausdorff(u, v);
        CHECK(std::abs(hausdorff(scalar_mul(k, u), scalar_mul(k, v)) - std::abs(k) * d) <= 1e-12 * (1 + std::abs(k) * d));
        CHECK(hausdorff(add(u, v), add(w, e)) <= hausdorff(u, w) + hausdorff(v, e) + 1e-12);
    }
}

TEST_CASE("interval arithmetic helpers") {
    CHECK(gh_diff(Interval{0, 4}, Interval{1, 2}) == Interval{-1, 2});
    CHECK(hausdorff(Interval{0, 1}, Interval{0.5, 3}) == 2);
    const FuzzyNumber iv = interval_number(1, 3);
    CHECK(iv.levels() == 0);
    CHECK(iv.len(0.7) == 2);
}
