#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "ghnabla/dsl.hpp"

namespace testing {

// Random expression trees over the whole grammar, depth <= max_depth.
class AstGenerator {
public:
    explicit AstGenerator(std::uint64_t seed) : rng_(seed) {}

    ghnabla::dsl::Expr expr(int max_depth) {
        using namespace ghnabla::dsl;
        if (max_depth <= 1 || pick(4) == 0) return leaf();
        switch (pick(8)) {
            case 0: return Expr::binary(Op::Add, expr(max_depth - 1), expr(max_depth - 1));
            case 1: return Expr::binary(Op::Sub, expr(max_depth - 1), expr(max_depth - 1));
            case 2: return Expr::binary(Op::Mul, expr(max_depth - 1), expr(max_depth - 1));
            case 3: return Expr::binary(Op::Div, expr(max_depth - 1), expr(max_depth - 1));
            case 4: return Expr::unary(Op::Neg, expr(max_depth - 1));
            case 5: return Expr::pow(expr(max_depth - 1), pick(9) - 3);
            case 6: return Expr::unary(Op::Sqrt, expr(max_depth - 1));
            default: {
                Expr pw;
                pw.op = Op::Piecewise;
                const int arms = 1 + pick(3);
                for (int i = 0; i < arms; ++i) {
                    std::vector<Selector> sels;
                    const int n = 1 + pick(2);
                    for (int j = 0; j < n; ++j) sels.push_back(selector());
                    pw.arms.push_back(sels);
                    pw.children.push_back(expr(max_depth - 1));
                }
                return pw;
            }
        }
    }

    double constant() {
        switch (pick(5)) {
            case 0: return pick(100);
            case 1: return pick(1000) / 8.0;
            case 2: return std::uniform_real_distribution<double>(0, 1000)(rng_);
            case 3: return std::ldexp(std::uniform_real_distribution<double>(0.5, 1)(rng_), pick(200) - 100);
            default: return std::uniform_real_distribution<double>(0, 1)(rng_) * 1e-7;
        }
    }

private:
    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    ghnabla::dsl::Expr leaf() {
        using namespace ghnabla::dsl;
        switch (pick(5)) {
            case 0: return Expr::var_t();
            case 1: return Expr::var_alpha();
            case 2: return Expr::named(pick(2) ? "sqrt2" : "pi");
            default: return Expr::constant(constant());
        }
    }

    ghnabla::dsl::Selector selector() {
        using namespace ghnabla::dsl;
        Selector s;
        s.kind = static_cast<PieceKind>(pick(5));
        if (pick(3) == 0) return s;
        s.has_key = true;
        switch (pick(3)) {
            case 0:
                s.key_symbol = pick(2) ? "sqrt2" : "-sqrt2";
                s.key = s.key_symbol[0] == '-' ? -std::numbers::sqrt2 : std::numbers::sqrt2;
                break;
            case 1: s.key = -1.0 - constant(); break;
            default: s.key = constant(); break;
        }
        return s;
    }

    std::mt19937_64 rng_;
};

}  // namespace testing
