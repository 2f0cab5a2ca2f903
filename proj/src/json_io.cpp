#include "ghnabla/json_io.hpp"

#include <sstream>

#include "ghnabla/error.hpp"

namespace ghnabla::io {

namespace {

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json existence_flag(Existence e) {
    switch (e) {
        case Existence::Exists: return true;
        case Existence::DoesNotExist: return false;
        default: return nullptr;
    }
}

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::ValidationError, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ValidationError, std::string("field '") + key + "': " + e.what());
    }
}

}  // namespace

json to_json(const FuzzyNumber& u) {
    return {{"K", u.levels()},
            {"lower", std::vector<double>(u.lower().begin(), u.lower().end())},
            {"upper", std::vector<double>(u.upper().begin(), u.upper().end())}};
}

FuzzyNumber fuzzy_from_json(const json& j, int K) {
    if (!j.is_object()) throw Error(ErrorKind::ValidationError, "fuzzy number must be a JSON object");
    if (j.contains("tri")) {
        const auto abc = field<std::vector<double>>(j, "tri");
        if (abc.size() != 3) throw Error(ErrorKind::ValidationError, "'tri' needs exactly three numbers");
        return triangular(abc[0], abc[1], abc[2], K);
    }
    auto lower = field<std::vector<double>>(j, "lower");
    auto upper = field<std::vector<double>>(j, "upper");
    if (j.contains("K") && field<int>(j, "K") + 1 != static_cast<int>(lower.size())) {
        throw Error(ErrorKind::ValidationError, "K does not match the number of levels");
    }
    return FuzzyNumber(std::move(lower), std::move(upper));
}

json to_json(const Piece& piece) {
    return std::visit(
        [](const auto& p) -> json {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, ClosedInterval>) {
                return {{"kind", "interval"}, {"a", p.a}, {"b", p.b}};
            } else if constexpr (std::is_same_v<P, ExplicitPoints>) {
                return {{"kind", "points"}, {"values", p.values}};
            } else if constexpr (std::is_same_v<P, ArithmeticGrid>) {
                return {{"kind", "hgrid"}, {"start", p.start}, {"stop", p.stop}, {"step", p.step}};
            } else if constexpr (std::is_same_v<P, GeometricGrid>) {
                return {{"kind", "qgrid"}, {"q", p.q}, {"kmin", p.kmin}, {"kmax", p.kmax}};
            } else {
                json j = {{"kind", "recip"}, {"scale", p.scale}, {"count", p.count}, {"accumulates", p.accumulates}};
                if (!p.scale_symbol.empty()) j["scale_symbol"] = p.scale_symbol;
                return j;
            }
        },
        piece);
}

json to_json(const TimeScale& ts) {
    json pieces = json::array();
    for (const auto& p : ts.pieces()) pieces.push_back(to_json(p));
    return {{"pieces", pieces}};
}

TimeScale timescale_from_json(const json& j) {
    std::vector<Piece> pieces;
    for (const auto& p : field<json>(j, "pieces")) {
        const auto kind = field<std::string>(p, "kind");
        if (kind == "interval") {
            pieces.push_back(ClosedInterval{field<double>(p, "a"), field<double>(p, "b")});
        } else if (kind == "points") {
            pieces.push_back(ExplicitPoints{field<std::vector<double>>(p, "values")});
        } else if (kind == "hgrid") {
            pieces.push_back(ArithmeticGrid{field<double>(p, "start"), field<double>(p, "stop"), field<double>(p, "step")});
        } else if (kind == "qgrid") {
            pieces.push_back(GeometricGrid{field<double>(p, "q"), field<int>(p, "kmin"), field<int>(p, "kmax")});
        } else if (kind == "recip") {
            pieces.push_back(ReciprocalGrid{field<double>(p, "scale"), field<int>(p, "count"),
                                            p.value("accumulates", true), p.value("scale_symbol", std::string())});
        } else {
            throw Error(ErrorKind::ValidationError, "unknown piece kind '" + kind + "'");
        }
    }
    return TimeScale(std::move(pieces));
}

json to_json(const DerivativeResult& r) {
    json levels = json::array();
    for (const auto& lvl : r.endpoint_report.levels) {
        json subs = json::array();
        for (const auto& s : lvl.subsequence_limits) {
            subs.push_back({{"side", s.side == Side::Left ? "left" : "right"},
                            {"generator", s.generator},
                            {"lower", s.lower},
                            {"upper", s.upper},
                            {"residual", s.residual}});
        }
        levels.push_back({{"alpha", lvl.alpha},
                          {"dminus_lower", optional_number(lvl.minus_lower.value)},
                          {"dplus_lower", optional_number(lvl.plus_lower.value)},
                          {"dminus_upper", optional_number(lvl.minus_upper.value)},
                          {"dplus_upper", optional_number(lvl.plus_upper.value)},
                          {"exists",
                           {{"dminus_lower", existence_flag(lvl.minus_lower.existence)},
                            {"dplus_lower", existence_flag(lvl.plus_lower.existence)},
                            {"dminus_upper", existence_flag(lvl.minus_upper.existence)},
                            {"dplus_upper", existence_flag(lvl.plus_upper.existence)}}},
                          {"subsequence_limits", subs}});
    }
    json evidence = json::array();
    for (const auto& e : r.evidence) evidence.push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
    json j = {{"value", r.value ? to_json(*r.value) : json(nullptr)},
              {"case", std::string(to_string(r.diff_case))},
              {"residual", r.residual},
              {"endpoint_report", levels},
              {"evidence", evidence}};
    if (r.left_scattered) j["gh_case"] = std::string(to_string(r.gh_case));
    if (!r.value) j["failure"] = r.failure;
    return j;
}

json to_json(const rules::RuleReport& r) {
    json checks = json::array();
    for (const auto& h : r.hypothesis_checks) {
        checks.push_back({{"name", h.name}, {"passed", h.passed}, {"evidence", h.evidence}});
    }
    auto opt = [](const std::optional<FuzzyNumber>& u) { return u ? to_json(*u) : json(nullptr); };
    json j = {{"rule", r.rule},
              {"equation", r.equation},
              {"t", r.t},
              {"hypothesis_checks", checks},
              {"lhs", opt(r.lhs)},
              {"rhs", opt(r.rhs)},
              {"residual", r.residual},
              {"tolerance", r.tolerance},
              {"verdict", std::string(to_string(r.verdict))}};
    if (r.rhs_alt) {
        j["rhs_alt"] = to_json(*r.rhs_alt);
        j["rhs_agreement"] = r.rhs_agreement;
    }
    return j;
}

std::string level_csv(const FuzzyNumber& u) {
    std::ostringstream os;
    os.precision(17);
    os << "alpha,lower,upper\n";
    for (int k = 0; k <= u.levels(); ++k) os << u.alpha(k) << ',' << u.lower()[k] << ',' << u.upper()[k] << '\n';
    return os.str();
}

}  // namespace ghnabla::io
