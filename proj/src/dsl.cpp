#include "ghnabla/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "ghnabla/error.hpp"

namespace ghnabla::dsl {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

enum class Tok { Num, Ident, LParen, RParen, Comma, Semi, Plus, Minus, Star, Slash, Caret, Bar, Arrow, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

std::string describe(const Token& tok) {
    if (tok.kind == Tok::End) return "end of input";
    return "'" + tok.text + "'";
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;
        if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() && src[j] == '.') {
                ++j;
                while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
                if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
                    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
                    j = k;
                }
            }
            tok.kind = Tok::Num;
            tok.text = std::string(src.substr(i, j - i));
            // from_chars rejects a leading '.'
            const std::string padded = tok.text.front() == '.' ? "0" + tok.text : tok.text;
            auto res = std::from_chars(padded.data(), padded.data() + padded.size(), tok.number);
            if (res.ec != std::errc() || !std::isfinite(tok.number)) {
                throw SyntaxError(line, col, "finite number", "'" + tok.text + "'");
            }
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            tok.kind = Tok::Ident;
            tok.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else {
            tok.text = std::string(1, c);
            switch (c) {
                case '(': tok.kind = Tok::LParen; break;
                case ')': tok.kind = Tok::RParen; break;
                case ',': tok.kind = Tok::Comma; break;
                case ';': tok.kind = Tok::Semi; break;
                case '+': tok.kind = Tok::Plus; break;
                case '-': tok.kind = Tok::Minus; break;
                case '*': tok.kind = Tok::Star; break;
                case '/': tok.kind = Tok::Slash; break;
                case '^': tok.kind = Tok::Caret; break;
                case '|': tok.kind = Tok::Bar; break;
                case '=':
                    if (i + 1 < src.size() && src[i + 1] == '>') {
                        tok.kind = Tok::Arrow;
                        tok.text = "=>";
                        break;
                    }
                    [[fallthrough]];
                default: throw SyntaxError(line, col, "token", "'" + tok.text + "'");
            }
            advance(tok.text.size());
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

std::optional<PieceKind> piece_kind(std::string_view id) {
    if (id == "interval") return PieceKind::Interval;
    if (id == "points") return PieceKind::Points;
    if (id == "hgrid") return PieceKind::HGrid;
    if (id == "qgrid") return PieceKind::QGrid;
    if (id == "recip") return PieceKind::Recip;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view src) : toks_(lex(src)) {}

    Expr expression_only() {
        Expr e = expr();
        expect(Tok::End, "end of input");
        return e;
    }

    FuzzyFuncDef fundef() {
        FuzzyFuncDef def;
        const Token head = peek();
        if (accept_ident("tri")) {
            def.kind = FuzzyFuncDef::Kind::Triangular;
            expect(Tok::LParen, "'('");
            def.parts.push_back(expr());
            expect(Tok::Comma, "','");
            def.parts.push_back(expr());
            expect(Tok::Comma, "','");
            def.parts.push_back(expr());
            expect(Tok::RParen, "')'");
            for (const auto& p : def.parts) {
                if (uses_alpha(p)) throw Error(ErrorKind::ValidationError, "alpha is not allowed inside tri()");
            }
        } else if (accept_ident("endpoints")) {
            def.kind = FuzzyFuncDef::Kind::Endpoints;
            expect(Tok::LParen, "'('");
            def.parts.push_back(expr());
            expect(Tok::Semi, "';'");
            def.parts.push_back(expr());
            expect(Tok::RParen, "')'");
        } else {
            fail(head, "'tri' or 'endpoints'");
        }
        expect(Tok::End, "end of input");
        return def;
    }

    std::vector<Piece> timescale() {
        std::vector<Piece> pieces;
        if (accept_ident("union")) {
            expect(Tok::LParen, "'('");
            pieces.push_back(piece());
            while (accept(Tok::Comma)) pieces.push_back(piece());
            expect(Tok::RParen, "')'");
        } else {
            pieces.push_back(piece());
        }
        expect(Tok::End, "end of input");
        return pieces;
    }

private:
    const Token& peek() const { return toks_[pos_]; }

    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }

    bool accept_ident(std::string_view id) {
        if (peek().kind != Tok::Ident || peek().text != id) return false;
        ++pos_;
        return true;
    }

    [[noreturn]] void fail(const Token& tok, const std::string& expected) const {
        throw SyntaxError(tok.line, tok.column, expected, describe(tok));
    }

    Token expect(Tok k, const std::string& expected) {
        if (peek().kind != k) fail(peek(), expected);
        return next();
    }

    double signed_number() {
        const bool neg = accept(Tok::Minus);
        const Token tok = expect(Tok::Num, "number");
        return neg ? -tok.number : tok.number;
    }

    int signed_int() {
        const bool neg = accept(Tok::Minus);
        const Token tok = peek();
        expect(Tok::Num, "integer");
        if (tok.number != std::floor(tok.number) || std::abs(tok.number) > 1e6 ||
            tok.text.find_first_of(".eE") != std::string::npos) {
            fail(tok, "integer");
        }
        const int v = static_cast<int>(tok.number);
        return neg ? -v : v;
    }

    // num | "sqrt2", optionally negated.
    std::pair<double, std::string> scale() {
        const bool neg = accept(Tok::Minus);
        if (accept_ident("sqrt2")) return {neg ? -kSqrt2 : kSqrt2, neg ? "-sqrt2" : "sqrt2"};
        const Token tok = expect(Tok::Num, "number or 'sqrt2'");
        return {neg ? -tok.number : tok.number, ""};
    }

    Piece piece() {
        const Token head = peek();
        if (head.kind != Tok::Ident) fail(head, "time-scale piece");
        const auto kind = piece_kind(head.text);
        if (!kind) fail(head, "time-scale piece");
        next();
        expect(Tok::LParen, "'('");
        Piece p;
        switch (*kind) {
            case PieceKind::Interval: {
                const double a = signed_number();
                expect(Tok::Comma, "','");
                const double b = signed_number();
                p = ClosedInterval{a, b};
                break;
            }
            case PieceKind::Points: {
                ExplicitPoints pts;
                pts.values.push_back(signed_number());
                while (accept(Tok::Comma)) pts.values.push_back(signed_number());
                p = pts;
                break;
            }
            case PieceKind::HGrid: {
                const double a = signed_number();
                expect(Tok::Comma, "','");
                const double b = signed_number();
                expect(Tok::Comma, "','");
                const double h = signed_number();
                p = ArithmeticGrid{a, b, h};
                break;
            }
            case PieceKind::QGrid: {
                const double q = signed_number();
                expect(Tok::Comma, "','");
                const int kmin = signed_int();
                expect(Tok::Comma, "','");
                const int kmax = signed_int();
                p = GeometricGrid{q, kmin, kmax};
                break;
            }
            case PieceKind::Recip: {
                auto [c, symbol] = scale();
                expect(Tok::Comma, "','");
                const int n = signed_int();
                p = ReciprocalGrid{c, n, true, symbol};
                break;
            }
        }
        expect(Tok::RParen, "')'");
        return p;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (accept(Tok::Plus)) {
                lhs = Expr::binary(Op::Add, std::move(lhs), term());
            } else if (accept(Tok::Minus)) {
                lhs = Expr::binary(Op::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (accept(Tok::Star)) {
                lhs = Expr::binary(Op::Mul, std::move(lhs), unary());
            } else if (accept(Tok::Slash)) {
                lhs = Expr::binary(Op::Div, std::move(lhs), unary());
            } else {
                return lhs;
            }
        }
    }

    Expr unary() {
        if (accept(Tok::Minus)) return Expr::unary(Op::Neg, unary());
        return factor();
    }

    Expr factor() {
        Expr base = atom();
        if (accept(Tok::Caret)) return Expr::pow(std::move(base), signed_int());
        return base;
    }

    Selector selector() {
        const Token head = peek();
        if (head.kind != Tok::Ident) fail(head, "piece name");
        const auto kind = piece_kind(head.text);
        if (!kind) fail(head, "piece name");
        next();
        Selector s;
        s.kind = *kind;
        if (accept(Tok::LParen)) {
            auto [key, symbol] = scale();
            s.has_key = true;
            s.key = key;
            s.key_symbol = symbol;
            expect(Tok::RParen, "')'");
        }
        return s;
    }

    Expr atom() {
        const Token tok = peek();
        if (tok.kind == Tok::Num) {
            next();
            return Expr::constant(tok.number);
        }
        if (accept(Tok::LParen)) {
            Expr e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (tok.kind == Tok::Ident) {
            if (tok.text == "t") {
                next();
                return Expr::var_t();
            }
            if (tok.text == "alpha") {
                next();
                return Expr::var_alpha();
            }
            if (tok.text == "sqrt2" || tok.text == "pi") {
                next();
                return Expr::named(tok.text);
            }
            if (tok.text == "sqrt") {
                next();
                expect(Tok::LParen, "'('");
                Expr e = expr();
                expect(Tok::RParen, "')'");
                return Expr::unary(Op::Sqrt, std::move(e));
            }
            if (tok.text == "piecewise") {
                next();
                expect(Tok::LParen, "'('");
                Expr pw;
                pw.op = Op::Piecewise;
                do {
                    if (!accept_ident("in")) fail(peek(), "'in'");
                    std::vector<Selector> sels{selector()};
                    while (accept(Tok::Bar)) sels.push_back(selector());
                    expect(Tok::Arrow, "'=>'");
                    pw.arms.push_back(std::move(sels));
                    pw.children.push_back(expr());
                } while (accept(Tok::Comma));
                expect(Tok::RParen, "')'");
                return pw;
            }
        }
        fail(tok, "expression");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

bool matches(const Selector& s, const Piece& piece) {
    return std::visit(
        [&](const auto& p) -> bool {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ClosedInterval>) {
                return s.kind == PieceKind::Interval && (!s.has_key || close(s.key, p.a));
            } else if constexpr (std::is_same_v<P, ExplicitPoints>) {
                if (s.kind != PieceKind::Points) return false;
                if (!s.has_key) return true;
                return std::any_of(p.values.begin(), p.values.end(), [&](double x) { return close(s.key, x); });
            } else if constexpr (std::is_same_v<P, ArithmeticGrid>) {
                return s.kind == PieceKind::HGrid && (!s.has_key || close(s.key, p.start));
            } else if constexpr (std::is_same_v<P, GeometricGrid>) {
                return s.kind == PieceKind::QGrid && (!s.has_key || close(s.key, p.q));
            } else {
                return s.kind == PieceKind::Recip && (!s.has_key || close(s.key, p.scale));
            }
        },
        piece);
}

std::string number(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string print_key(const Selector& s) {
    if (!s.key_symbol.empty()) return s.key_symbol;
    return number(s.key);
}

int precedence(const Expr& e) {
    switch (e.op) {
        case Op::Add:
        case Op::Sub: return 1;
        case Op::Mul:
        case Op::Div: return 2;
        case Op::Neg: return 3;
        case Op::Pow: return 4;
        default: return 5;
    }
}

void print_to(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print_to(e, out);
    if (wrap) out += ')';
}

void print_to(const Expr& e, std::string& out) {
    switch (e.op) {
        case Op::Const: out += number(e.value); return;
        case Op::T: out += 't'; return;
        case Op::Alpha: out += "alpha"; return;
        case Op::Named: out += e.name; return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div: {
            const int p = precedence(e);
            print_wrapped(e.children[0], precedence(e.children[0]) < p, out);
            out += e.op == Op::Add ? " + " : e.op == Op::Sub ? " - " : e.op == Op::Mul ? "*" : "/";
            print_wrapped(e.children[1], precedence(e.children[1]) <= p, out);
            return;
        }
        case Op::Neg:
            out += '-';
            print_wrapped(e.children[0], precedence(e.children[0]) < 3, out);
            return;
        case Op::Pow:
            print_wrapped(e.children[0], precedence(e.children[0]) < 5, out);
            out += '^';
            out += std::to_string(e.exponent);
            return;
        case Op::Sqrt:
            out += "sqrt(";
            print_to(e.children[0], out);
            out += ')';
            return;
        case Op::Piecewise:
            out += "piecewise(";
            for (std::size_t i = 0; i < e.children.size(); ++i) {
                if (i) out += ", ";
                out += "in ";
                for (std::size_t j = 0; j < e.arms[i].size(); ++j) {
                    const Selector& s = e.arms[i][j];
                    if (j) out += " | ";
                    out += to_string(s.kind);
                    if (s.has_key) out += "(" + print_key(s) + ")";
                }
                out += " => ";
                print_to(e.children[i], out);
            }
            out += ')';
            return;
    }
}

double eval_piecewise(const Expr& e, const EvalContext& ctx) {
    if (!ctx.ts) throw Error(ErrorKind::ValidationError, "piecewise() needs a time scale to resolve generator membership");
    const auto owners = ctx.ts->provenance(ctx.t);
    if (owners.empty()) throw Error(ErrorKind::NotInTimeScale, "t = " + number(ctx.t) + " is not in the time scale");
    const auto& pieces = ctx.ts->pieces();
    for (std::size_t i = 0; i < e.arms.size(); ++i) {
        for (const auto& sel : e.arms[i]) {
            for (auto o : owners) {
                if (matches(sel, pieces[o])) return eval(e.children[i], ctx);
            }
        }
    }
    throw Error(ErrorKind::ValidationError, "no piecewise arm covers t = " + number(ctx.t));
}

FuzzyNumber eval_at(const FuzzyFuncDef& def, const TimeScale* ts, double t) {
    const int K = def.levels;
    if (K < 0) throw Error(ErrorKind::InvalidArgument, "levels must be non-negative");
    EvalContext ctx{t, 0.0, ts};
    if (def.kind == FuzzyFuncDef::Kind::Triangular) {
        const double a = eval(def.parts[0], ctx);
        const double b = eval(def.parts[1], ctx);
        const double c = eval(def.parts[2], ctx);
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
            throw Error(ErrorKind::ValidationError, "non-finite triangle vertex at t = " + number(t));
        }
        if (!(a <= b && b <= c)) {
            throw Error(ErrorKind::ValidationError, "triangle order a <= b <= c fails at t = " + number(t) + " (" +
                                                        number(a) + ", " + number(b) + ", " + number(c) + ")");
        }
        if (K == 0) return FuzzyNumber({a}, {c});
        return triangular(a, b, c, K);
    }
    std::vector<double> lower(K + 1), upper(K + 1);
    double mag = 0.0;
    for (int k = 0; k <= K; ++k) {
        ctx.alpha = K == 0 ? 0.0 : static_cast<double>(k) / K;
        lower[k] = eval(def.parts[0], ctx);
        upper[k] = eval(def.parts[1], ctx);
        mag = std::max({mag, std::abs(lower[k]), std::abs(upper[k])});
    }
    const std::string why = FuzzyNumber::check_levels(lower, upper);
    if (why.empty()) return FuzzyNumber(std::move(lower), std::move(upper));
    if (auto fixed = FuzzyNumber::repaired(lower, upper, 1e-12 * (1.0 + mag))) return *fixed;
    throw Error(ErrorKind::ValidationError, why + " at t = " + number(t));
}

bool has_piecewise(const Expr& e) {
    if (e.op == Op::Piecewise) return true;
    return std::any_of(e.children.begin(), e.children.end(), has_piecewise);
}

}  // namespace

std::string_view to_string(PieceKind k) {
    switch (k) {
        case PieceKind::Interval: return "interval";
        case PieceKind::Points: return "points";
        case PieceKind::HGrid: return "hgrid";
        case PieceKind::QGrid: return "qgrid";
        case PieceKind::Recip: return "recip";
    }
    return "?";
}

Expr Expr::constant(double v) {
    Expr e;
    e.op = Op::Const;
    e.value = v;
    return e;
}

Expr Expr::var_t() {
    Expr e;
    e.op = Op::T;
    return e;
}

Expr Expr::var_alpha() {
    Expr e;
    e.op = Op::Alpha;
    return e;
}

Expr Expr::named(std::string_view id) {
    Expr e;
    e.op = Op::Named;
    e.name = std::string(id);
    if (id == "sqrt2") {
        e.value = kSqrt2;
    } else if (id == "pi") {
        e.value = std::numbers::pi;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown constant " + e.name);
    }
    return e;
}

Expr Expr::unary(Op op, Expr a) {
    Expr e;
    e.op = op;
    e.children.push_back(std::move(a));
    return e;
}

Expr Expr::binary(Op op, Expr a, Expr b) {
    Expr e;
    e.op = op;
    e.children.push_back(std::move(a));
    e.children.push_back(std::move(b));
    return e;
}

Expr Expr::pow(Expr base, int exponent) {
    Expr e = unary(Op::Pow, std::move(base));
    e.exponent = exponent;
    return e;
}

bool uses_alpha(const Expr& e) {
    if (e.op == Op::Alpha) return true;
    return std::any_of(e.children.begin(), e.children.end(), [](const Expr& c) { return uses_alpha(c); });
}

double eval(const Expr& e, const EvalContext& ctx) {
    switch (e.op) {
        case Op::Const:
        case Op::Named: return e.value;
        case Op::T: return ctx.t;
        case Op::Alpha: return ctx.alpha;
        case Op::Add: return eval(e.children[0], ctx) + eval(e.children[1], ctx);
        case Op::Sub: return eval(e.children[0], ctx) - eval(e.children[1], ctx);
        case Op::Mul: return eval(e.children[0], ctx) * eval(e.children[1], ctx);
        case Op::Div: return eval(e.children[0], ctx) / eval(e.children[1], ctx);
        case Op::Neg: return -eval(e.children[0], ctx);
        case Op::Pow: {
            const double base = eval(e.children[0], ctx);
            double r = 1.0;
            for (int k = 0; k < std::abs(e.exponent); ++k) r *= base;
            return e.exponent < 0 ? 1.0 / r : r;
        }
        case Op::Sqrt: return std::sqrt(eval(e.children[0], ctx));
        case Op::Piecewise: return eval_piecewise(e, ctx);
    }
    return 0.0;
}

Expr parse_expr(std::string_view src) { return Parser(src).expression_only(); }

FuzzyFuncDef parse_function(std::string_view src, int levels) {
    FuzzyFuncDef def = Parser(src).fundef();
    def.levels = levels;
    // Without a time scale only definitions that fail at every default sample
    // are rejected; binding to a time scale validates properly.
    if (std::any_of(def.parts.begin(), def.parts.end(), has_piecewise)) return def;
    std::string last;
    for (double t : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        try {
            eval_at(def, nullptr, t);
            return def;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ValidationError) throw;
            last = e.what();
        }
    }
    throw Error(ErrorKind::ValidationError, "definition invalid at every sample point; last: " + last);
}

TimeScale parse_timescale(std::string_view src) { return TimeScale(Parser(src).timescale()); }

FuzzyNumber eval_function(const FuzzyFuncDef& def, const TimeScale& ts, double t) {
    if (!ts.contains(t)) throw Error(ErrorKind::NotInTimeScale, "t = " + number(t) + " is not in the time scale");
    return eval_at(def, &ts, t);
}

FuzzyFunction bind(const FuzzyFuncDef& def, std::shared_ptr<const TimeScale> ts, std::size_t samples) {
    for (double t : ts->sample_points(samples)) eval_at(def, ts.get(), t);
    return {[def, ts](double t) { return eval_at(def, ts.get(), t); }, def.levels};
}

RealFunction bind_scalar(const Expr& e, std::shared_ptr<const TimeScale> ts) {
    if (uses_alpha(e)) throw Error(ErrorKind::ValidationError, "a scalar function cannot use alpha");
    return [e, ts](double t) { return eval(e, EvalContext{t, 0.0, ts.get()}); };
}

std::string print(const Expr& e) {
    std::string out;
    print_to(e, out);
    return out;
}

std::string print(const FuzzyFuncDef& def) {
    if (def.kind == FuzzyFuncDef::Kind::Triangular) {
        return "tri(" + print(def.parts[0]) + ", " + print(def.parts[1]) + ", " + print(def.parts[2]) + ")";
    }
    return "endpoints(" + print(def.parts[0]) + "; " + print(def.parts[1]) + ")";
}

std::string print(const Piece& piece) {
    return std::visit(
        [](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ClosedInterval>) {
                return "interval(" + number(p.a) + ", " + number(p.b) + ")";
            } else if constexpr (std::is_same_v<P, ExplicitPoints>) {
                std::string s = "points(";
                for (std::size_t i = 0; i < p.values.size(); ++i) s += (i ? ", " : "") + number(p.values[i]);
                return s + ")";
            } else if constexpr (std::is_same_v<P, ArithmeticGrid>) {
                return "hgrid(" + number(p.start) + ", " + number(p.stop) + ", " + number(p.step) + ")";
            } else if constexpr (std::is_same_v<P, GeometricGrid>) {
                return "qgrid(" + number(p.q) + ", " + std::to_string(p.kmin) + ", " + std::to_string(p.kmax) + ")";
            } else {
                const std::string c = p.scale_symbol.empty() ? number(p.scale) : p.scale_symbol;
                return "recip(" + c + ", " + std::to_string(p.count) + ")";
            }
        },
        piece);
}

std::string print(const TimeScale& ts) {
    const auto& pieces = ts.pieces();
    if (pieces.size() == 1) return print(pieces.front());
    std::string s = "union(";
    for (std::size_t i = 0; i < pieces.size(); ++i) s += (i ? ", " : "") + print(pieces[i]);
    return s + ")";
}

}  // namespace ghnabla::dsl
