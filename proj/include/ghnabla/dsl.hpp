#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ghnabla/fuzzy.hpp"
#include "ghnabla/nabla.hpp"
#include "ghnabla/timescale.hpp"

namespace ghnabla::dsl {

enum class PieceKind { Interval, Points, HGrid, QGrid, Recip };
std::string_view to_string(PieceKind k);

// Names a generator piece of the ambient time scale inside a piecewise arm.
// Without a key any piece of that kind matches. The key is compared with the
// recip scale, qgrid base, hgrid start, interval left end, or a member of a
// points piece.
struct Selector {
    PieceKind kind = PieceKind::Recip;
    bool has_key = false;
    double key = 0.0;
    std::string key_symbol;  // "sqrt2" or "-sqrt2" when written symbolically

    friend bool operator==(const Selector&, const Selector&) = default;
};

enum class Op { Const, T, Alpha, Named, Add, Sub, Mul, Div, Neg, Pow, Sqrt, Piecewise };

struct Expr {
    Op op = Op::Const;
    double value = 0.0;     // Const (never negative), Named (resolved value)
    int exponent = 0;       // Pow
    std::string name;       // Named: "sqrt2" or "pi"
    std::vector<Expr> children;
    std::vector<std::vector<Selector>> arms;  // Piecewise: selectors of arm i guard children[i]

    friend bool operator==(const Expr&, const Expr&) = default;

    static Expr constant(double v);
    static Expr var_t();
    static Expr var_alpha();
    static Expr named(std::string_view id);
    static Expr unary(Op op, Expr a);
    static Expr binary(Op op, Expr a, Expr b);
    static Expr pow(Expr base, int exponent);
};

struct FuzzyFuncDef {
    enum class Kind { Triangular, Endpoints };
    Kind kind = Kind::Triangular;
    std::vector<Expr> parts;  // a, b, c  or  lower, upper
    int levels = 100;

    friend bool operator==(const FuzzyFuncDef& x, const FuzzyFuncDef& y) {
        return x.kind == y.kind && x.parts == y.parts;
    }
};

bool uses_alpha(const Expr& e);

// Evaluation context. Piecewise arms need the time scale to resolve which
// generator realizes t.
struct EvalContext {
    double t = 0.0;
    double alpha = 0.0;
    const TimeScale* ts = nullptr;
};

double eval(const Expr& e, const EvalContext& ctx);

Expr parse_expr(std::string_view src);
FuzzyFuncDef parse_function(std::string_view src, int levels = 100);
TimeScale parse_timescale(std::string_view src);

FuzzyNumber eval_function(const FuzzyFuncDef& def, const TimeScale& ts, double t);

// Validates the definition on sampled points of `ts` and returns a callable
// function bound to it.
FuzzyFunction bind(const FuzzyFuncDef& def, std::shared_ptr<const TimeScale> ts, std::size_t samples = 64);
RealFunction bind_scalar(const Expr& e, std::shared_ptr<const TimeScale> ts);

std::string print(const Expr& e);
std::string print(const FuzzyFuncDef& def);
std::string print(const TimeScale& ts);
std::string print(const Piece& p);

}  // namespace ghnabla::dsl
