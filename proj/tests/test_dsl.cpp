#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ast_gen.hpp"
#include "ghnabla/dsl.hpp"
#include "ghnabla/error.hpp"

using namespace ghnabla;
using namespace ghnabla::dsl;

namespace {

const char* kExampleScale = "union(recip(1,1000), recip(sqrt2,1000), points(0))";
const char* kExampleFn =
    "tri(piecewise(in recip(1) | points(0) => -2, in recip(sqrt2) => t - 2), (t^2+t-2)/2, "
    "piecewise(in recip(1) | points(0) => t^2+t, in recip(sqrt2) => t^2))";

Expr c(double v) { return Expr::constant(v); }
Expr t() { return Expr::var_t(); }

}  // namespace

TEST_CASE("triangular definition parses to the expected tree") {
    const FuzzyFuncDef def = parse_function("tri(-2, (t^2+t-2)/2, t^2+t)");
    REQUIRE(def.kind == FuzzyFuncDef::Kind::Triangular);
    const Expr a = Expr::unary(Op::Neg, c(2));
    const Expr b = Expr::binary(
        Op::Div,
        Expr::binary(Op::Sub, Expr::binary(Op::Add, Expr::pow(t(), 2), t()), c(2)),
        c(2));
    const Expr cc = Expr::binary(Op::Add, Expr::pow(t(), 2), t());
    CHECK(def.parts[0] == a);
    CHECK(def.parts[1] == b);
    CHECK(def.parts[2] == cc);

    const TimeScale z({ArithmeticGrid{0, 3, 1}});
    CHECK(eval_function(def, z, 1) == triangular(-2, 0, 2, 100));
}

TEST_CASE("constant definitions and validation") {
    const FuzzyFuncDef one = parse_function("tri(1,1,1)", 10);
    const TimeScale z({ArithmeticGrid{0, 3, 1}});
    CHECK(eval_function(one, z, 2) == crisp(1, 10));
    try {
        parse_function("tri(t, t-1, t+1)");
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
    }
    CHECK_THROWS_AS(parse_function("tri(alpha, 1, 2)"), Error);
    CHECK_THROWS_AS(parse_function("endpoints(alpha; -alpha)"), Error);
    const FuzzyFuncDef ep = parse_function("endpoints(t - 1 + alpha; t + 1 - alpha)", 4);
    CHECK(eval_function(ep, z, 2) == triangular(1, 2, 3, 4));
}

TEST_CASE("time-scale specs") {
    const TimeScale ex = parse_timescale(kExampleScale);
    CHECK(ex.pieces().size() == 3);
    CHECK(ex.rho(1) == doctest::Approx(std::numbers::sqrt2 / 2));
    CHECK(ex.classify(0).right == SideClass::Dense);
    const TimeScale z = parse_timescale("hgrid(0,10,1)");
    CHECK(z.discrete_points().size() == 11);
    const TimeScale unit = parse_timescale("interval(0,1)");
    CHECK(unit.classify(0.5).dense());
    const TimeScale q = parse_timescale("qgrid(2, -2, 3)");
    CHECK(q.min() == 0.25);
    CHECK(print(ex) == "union(recip(1, 1000), recip(sqrt2, 1000), points(0))");
    CHECK(print(parse_timescale(print(ex))) == print(ex));
    CHECK_THROWS_AS(parse_timescale("interval(1, 0)"), Error);
}

TEST_CASE("example function evaluation resolves generator membership") {
    const auto ts = std::make_shared<const TimeScale>(parse_timescale(kExampleScale));
    const FuzzyFuncDef def = parse_function(kExampleFn, 10);
    CHECK(eval_function(def, *ts, 1) == triangular(-2, 0, 2, 10));
    const double r = std::numbers::sqrt2;
    const FuzzyNumber at = eval_function(def, *ts, r);
    CHECK(hausdorff(at, triangular(r - 2, r / 2, 2, 10)) < 1e-15);
    const FuzzyFunction f = dsl::bind(def, ts);
    CHECK(f(0.5) == eval_function(def, *ts, 0.5));
    CHECK_THROWS_AS(eval_function(def, *ts, 0.3), Error);
}

TEST_CASE("evaluation is deterministic") {
    const auto ts = std::make_shared<const TimeScale>(parse_timescale(kExampleScale));
    const FuzzyFunction f = dsl::bind(parse_function(kExampleFn), ts);
    for (double x : ts->sample_points(20)) CHECK(f(x) == f(x));
}

TEST_CASE("piecewise arms must cover the bound time scale") {
    const auto ts = std::make_shared<const TimeScale>(parse_timescale("union(hgrid(0, 3, 1), points(10))"));
    const FuzzyFuncDef def = parse_function("tri(0, piecewise(in hgrid => t), 20)");
    try {
        dsl::bind(def, ts);
        FAIL("expected ValidationError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ValidationError);
    }
    const FuzzyFuncDef full = parse_function("tri(0, piecewise(in hgrid(0) => t, in points(10) => 1), 20)");
    CHECK_NOTHROW(dsl::bind(full, ts));
}

TEST_CASE("syntax errors carry positions") {
    struct Case {
        const char* src;
        int line;
        int column;
    };
    for (const Case& k : {Case{"tri(1,,2)", 1, 7}, Case{"tri(1, 2\n, 3", 2, 4}, Case{"tri(1, 2, 3) x", 1, 14},
                          Case{"foo(1)", 1, 1}, Case{"tri(1, 2 $ 3)", 1, 10}, Case{"tri(t^1.5, 2, 3)", 1, 7}}) {
        try {
            parse_function(k.src);
            FAIL("expected a syntax error for " << k.src);
        } catch (const SyntaxError& e) {
            CHECK(e.line() == k.line);
            CHECK(e.column() == k.column);
            CHECK_FALSE(e.expected().empty());
        }
    }
    CHECK_THROWS_AS(parse_timescale("union(recip(1, 10), )"), SyntaxError);
}

TEST_CASE("precedence and printing") {
    CHECK(print(parse_expr("-t^2")) == "-t^2");
    CHECK(parse_expr("-t^2") == Expr::unary(Op::Neg, Expr::pow(t(), 2)));
    CHECK(print(parse_expr("(1 - t) - (2 - t)")) == "1 - t - (2 - t)");
    CHECK(print(parse_expr("2*(t+1)/3")) == "2*(t + 1)/3");
    CHECK(print(parse_expr("(-t)^3")) == "(-t)^3");
    CHECK(print(parse_expr("t^-2")) == "t^-2");
    CHECK(eval(parse_expr("(2)^3"), {}) == 8);
    CHECK(eval(parse_expr("sqrt(2) - sqrt2"), {}) == 0);
    CHECK(eval(parse_expr("1 - 2 - 3"), {}) == -4);
    CHECK(eval(parse_expr("12/3/2"), {}) == 2);
    CHECK(eval(parse_expr("1.5e2 + .5"), {}) == 150.5);
}

TEST_CASE("generated trees round-trip through print and parse") {
    testing::AstGenerator gen(7);
    for (int i = 0; i < 2000; ++i) {
        const Expr e = gen.expr(6);
        const std::string text = print(e);
        const Expr back = parse_expr(text);
        CHECK_MESSAGE(back == e, text);
        CHECK(print(back) == text);
    }
}

TEST_CASE("definitions round-trip") {
    for (const char* src : {"tri(-2, (t^2+t-2)/2, t^2+t)", "tri(1,1,1)", kExampleFn, "endpoints(t - 1 + alpha; t + 1 - alpha)"}) {
        const FuzzyFuncDef def = parse_function(src);
        CHECK(parse_function(print(def)) == def);
    }
}
