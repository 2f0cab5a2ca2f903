#include <doctest.h>

#include <cmath>

#include "ghnabla/error.hpp"
#include "ghnabla/rules.hpp"
#include "support.hpp"

using namespace ghnabla;
using namespace ghnabla::rules;
using namespace testing;

namespace {

TimeScale grid(double a, double b, double h) { return TimeScale({ArithmeticGrid{a, b, h}}); }

FuzzyFunction times_tri(double (*s)(double), int K = 20) {
    return {[s, K](double t) { return scalar_mul(s(t), triangular(1, 2, 3, K)); }, K};
}

FuzzyFunction interval_fn(double (*lo)(double), double (*hi)(double)) {
    return {[lo, hi](double t) { return interval_number(lo(t), hi(t)); }, 0};
}

}  // namespace

TEST_CASE("(i)/(ii) tags") {
    const TimeScale z = grid(0, 10, 1);
    CHECK(tag_i_ii(times_tri([](double t) { return t; }), z, 3) == Tag::I);
    CHECK(tag_i_ii(constant_function(triangular(0, 1, 4, 10)), z, 3) == Tag::Both);
    const TimeScale small = grid(1, 4, 1);
    CHECK(tag_i_ii(times_tri([](double t) { return 5 - t; }), small, 3) == Tag::II);
}

TEST_CASE("tag needs endpoint derivatives") {
    const TimeScale sym({ClosedInterval{-1, 1}});
    const FuzzyFunction f{[](double t) { return triangular(-std::abs(t), 0, std::abs(t), 4); }, 4};
    try {
        tag_i_ii(f, sym, 0);
        FAIL("expected EndpointDerivativeMissing");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EndpointDerivativeMissing);
    }
}

TEST_CASE("length direction") {
    const TimeScale z = grid(0, 10, 1);
    CHECK(len_direction(interval_fn([](double t) { return t; }, [](double t) { return 2 * t; }), z, 3) ==
          LenDirection::Increasing);
    CHECK(len_direction(constant_function(interval_number(1, 2)), z, 3) == LenDirection::Constant);
    CHECK(len_direction(interval_fn([](double) { return 0.0; }, [](double t) { return 5 - t; }), grid(1, 4, 1), 3) ==
          LenDirection::Decreasing);
    const TimeScale unit({ClosedInterval{-1, 1}});
    CHECK(len_direction(interval_fn([](double t) { return -t * t; }, [](double t) { return t * t; }), unit, 0) ==
          LenDirection::Undetermined);
}

TEST_CASE("sum rule examples") {
    const TimeScale z = grid(0, 10, 1);
    const FuzzyFunction f = times_tri([](double t) { return t; });
    const RuleReport r = sum_rule(f, f, z, 4);
    CHECK(r.verdict == Verdict::Verified);
    CHECK(r.residual < 1e-12);

    const FuzzyFunction sq{[](double t) { return crisp(t * t, 5); }, 5};
    const FuzzyFunction lin{[](double t) { return crisp(t, 5); }, 5};
    for (double t = 1; t <= 10; ++t) {
        const RuleReport s = sum_rule(sq, lin, z, t);
        CHECK(s.verdict == Verdict::Verified);
        CHECK(hausdorff(*s.lhs, crisp(2 * t, 5)) < 1e-12);
    }
    const RuleReport c = sum_rule(constant_function(crisp(1, 5)), constant_function(triangular(0, 1, 2, 5)), z, 2);
    CHECK(norm(*c.lhs) == 0);
    CHECK(norm(*c.rhs) == 0);
}

TEST_CASE("sum rule with mismatched tags is never verified") {
    const TimeScale z = grid(0, 10, 1);
    const FuzzyFunction up = times_tri([](double t) { return t; });
    const FuzzyFunction down = times_tri([](double t) { return 20 - 3 * t; });
    const RuleReport r = sum_rule(up, down, z, 3);
    CHECK(r.verdict == Verdict::HypothesisFailed);
}

TEST_CASE("fuzzy product rule") {
    const TimeScale z = grid(0, 10, 1);
    const RuleReport r = product_fuzzy([](double t) { return t; }, constant_function(triangular(1, 2, 3, 20)), z, 3);
    CHECK(r.rule == "product1");
    CHECK(r.verdict == Verdict::Verified);
    CHECK(hausdorff(*r.lhs, triangular(1, 2, 3, 20)) < 1e-14);
    CHECK(r.residual < 1e-14);

    const TimeScale half = grid(0, 5, 0.5);
    const FuzzyFunction g{[](double t) { return triangular(t, t + 1, t + 3, 20); }, 20};
    const RuleReport h = product_fuzzy([](double t) { return t * t + 1; }, g, half, 2);
    CHECK(h.verdict == Verdict::Verified);
    CHECK(h.residual < 1e-9);
    CHECK(h.rhs_agreement < 1e-12);
    // Level-wise quotient oracle for the left side.
    for (int k = 0; k <= 20; ++k) {
        const double a = k / 20.0;
        const double lo = (5 * (2 + a) - 3.25 * (1.5 + a)) / 0.5;
        const double hi = (5 * (5 - 2 * a) - 3.25 * (4.5 - 2 * a)) / 0.5;
        CHECK(std::abs(h.lhs->lower()[k] - lo) < 1e-12);
        CHECK(std::abs(h.lhs->upper()[k] - hi) < 1e-12);
    }

    const RuleReport one = product_fuzzy([](double) { return 1.0; }, g, half, 2);
    CHECK(one.verdict == Verdict::HypothesisFailed);
    CHECK(one.residual == 0);
}

TEST_CASE("fuzzy product rule, case (ii) path") {
    const TimeScale z = grid(0, 10, 1);
    // f = 10 - t is positive and decreasing, so f nabla f < 0.
    const FuzzyFunction g = times_tri([](double t) { return 12 - t; });
    const RuleReport r = product_fuzzy([](double t) { return 10 - t; }, g, z, 4);
    CHECK(r.rule == "product2");
    CHECK(r.hypotheses_hold());
    CHECK(r.rhs_agreement < 1e-12);
    CHECK(r.residual < 1e-9);
    CHECK(r.verdict == Verdict::Verified);
}

TEST_CASE("interval product rules") {
    const TimeScale z = grid(1, 6, 1);
    const FuzzyFunction g = interval_fn([](double t) { return t; }, [](double t) { return 2 * t; });
    const auto fs = [](double t) { return 6 - t; };
    const RuleReport inc = product_interval(fs, g, z, 3);
    CHECK(inc.rule == "product11");
    CHECK(inc.equation == "nabla(f g) + (-1) nabla f g(rho) = f(t) nabla g");
    CHECK(inc.verdict == Verdict::Verified);
    CHECK(inc.residual < 1e-12);

    const RuleReport dec = product_interval(fs, g, z, 5);
    CHECK(dec.equation == "nabla(f g) + (-1) f(t) nabla g = nabla f g(rho)");
    CHECK(dec.verdict == Verdict::Verified);

    // Crisp interval: collapses to the scalar product rule.
    const FuzzyFunction c = interval_fn([](double t) { return t; }, [](double t) { return t; });
    const RuleReport s = product_interval(fs, c, z, 3);
    // nabla(f g) = nabla f g(rho) + f(t) nabla g = -2 + 3 = 1, so both sides equal f(t) nabla g = 3.
    CHECK(s.residual < 1e-12);
    CHECK(*s.rhs == interval_number(3, 3));

    CHECK_THROWS_AS(product_interval(fs, times_tri([](double t) { return t; }), z, 3), Error);
}

TEST_CASE("interval product rules, case (ii) path") {
    const TimeScale z = grid(1, 10, 1);
    // g = [0, 12 - t] has decreasing length; f = t has f nabla f > 0.
    const FuzzyFunction g = interval_fn([](double) { return 0.0; }, [](double t) { return 12 - t; });
    const auto fs = [](double t) { return t; };
    for (double t : {3.0, 9.0}) {
        const RuleReport r = product_interval(fs, g, z, t);
        CHECK(r.rule == "product11222");
        CHECK(r.hypotheses_hold());
        CHECK(r.residual < 1e-12);
    }
}

TEST_CASE("sign hypothesis falsification") {
    const TimeScale z = grid(0, 10, 1);
    for (int i = 0; i < 30; ++i) {
        const double c = uniform(1, 3);
        const FuzzyFunction g = times_tri([](double t) { return t; });
        // Constant scalar: nabla f = 0 violates both sign hypotheses.
        const RuleReport r = product_fuzzy([c](double) { return c; }, g, z, uniform_int(1, 10));
        CHECK(r.verdict == Verdict::HypothesisFailed);
    }
}
