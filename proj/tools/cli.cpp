#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ghnabla/dsl.hpp"
#include "ghnabla/error.hpp"
#include "ghnabla/json_io.hpp"
#include "ghnabla/nabla.hpp"
#include "ghnabla/rules.hpp"

namespace ghnabla::cli {

namespace {

using io::json;

struct Options {
    std::string timescale;
    std::string fn;
    std::string gn;
    std::string scalar;
    std::string u;
    std::string v;
    std::string points;
    std::string format = "csv";
    std::string out;
    std::string theorem;
    double agreement_tol = 1e-6;
    double residual_tol = 0.0;
    int levels = 100;
    int probes = 8;
    bool no_richardson = false;
    bool no_split = false;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::GhNonexistent:
        case ErrorKind::LimitDisagreement:
        case ErrorKind::EndpointDerivativeMissing:
        case ErrorKind::LengthDirectionUndetermined: return kNotDifferentiable;
        case ErrorKind::SignHypothesisFailed: return kHypothesisFailed;
        default: return kConfigError;
    }
}

std::string num(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string load(const std::string& text) {
    if (text.empty() || text.front() != '@') return text;
    std::ifstream in(text.substr(1));
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + text.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw Error(ErrorKind::InvalidArgument, std::string(flag) + " is required");
}

std::shared_ptr<const TimeScale> timescale_of(const Options& o) {
    require(o.timescale, "--timescale");
    return std::make_shared<const TimeScale>(dsl::parse_timescale(load(o.timescale)));
}

FuzzyFunction function_of(const std::string& src, const char* flag, const Options& o,
                          const std::shared_ptr<const TimeScale>& ts) {
    require(src, flag);
    return dsl::bind(dsl::parse_function(load(src), o.levels), ts);
}

// A constant fuzzy number: JSON ({"K",...} or {"tri": [...]}) or a DSL definition without t.
FuzzyNumber number_of(const std::string& src, const char* flag, const Options& o) {
    require(src, flag);
    const std::string text = load(src);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j;
        try {
            j = json::parse(text);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::SyntaxError, e.what());
        }
        return io::fuzzy_from_json(j, o.levels);
    }
    const TimeScale origin({ExplicitPoints{{0.0}}});
    return dsl::eval_function(dsl::parse_function(text, o.levels), origin, 0.0);
}

ProbeConfig probe_of(const Options& o) {
    ProbeConfig cfg;
    cfg.probe_count = o.probes;
    cfg.agreement_tol = o.agreement_tol;
    cfg.richardson = !o.no_richardson;
    cfg.subsequence_split = !o.no_split;
    cfg.validate();
    return cfg;
}

// Explicit list "a,b,c", "all" (every discrete point in T_kappa) or "samples:N".
std::vector<double> points_of(const Options& o, const TimeScale& ts) {
    require(o.points, "--points");
    std::vector<double> pts;
    const bool selector = o.points == "all" || o.points.rfind("samples:", 0) == 0;
    if (o.points == "all") {
        pts = ts.discrete_points();
    } else if (o.points.rfind("samples:", 0) == 0) {
        const std::string n = o.points.substr(8);
        std::size_t count = 0;
        auto res = std::from_chars(n.data(), n.data() + n.size(), count);
        if (res.ec != std::errc() || res.ptr != n.data() + n.size() || count == 0) {
            throw Error(ErrorKind::InvalidArgument, "--points samples:N needs a positive integer");
        }
        pts = ts.sample_points(count);
    } else {
        std::stringstream ss(o.points);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::string text = item == "sqrt2" ? "1.4142135623730951" : item;
            double x = 0.0;
            auto res = std::from_chars(text.data(), text.data() + text.size(), x);
            if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
                // Allow simple expressions such as sqrt2/2.
                x = dsl::eval(dsl::parse_expr(item), dsl::EvalContext{});
            }
            pts.push_back(x);
        }
    }
    if (selector) {
        std::erase_if(pts, [&](double t) { return !ts.in_kappa(t); });
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty()) throw Error(ErrorKind::InvalidArgument, "--points selects no point of the time scale");
    return pts;
}

class Output {
public:
    Output(const Options& o, std::ostream& fallback) : target_(o.out), fallback_(fallback) {}

    std::ostream& stream() { return buffer_; }

    void flush() {
        if (target_.empty()) {
            fallback_ << buffer_.str();
            return;
        }
        std::ofstream f(target_, std::ios::binary);
        if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + target_);
        f << buffer_.str();
    }

private:
    std::string target_;
    std::ostream& fallback_;
    std::ostringstream buffer_;
};

bool json_format(const Options& o) {
    if (o.format != "csv" && o.format != "json") throw Error(ErrorKind::InvalidArgument, "--format must be csv or json");
    return o.format == "json";
}

int cmd_diff(const Options& o, std::ostream& out, std::ostream& err) {
    const auto ts = timescale_of(o);
    const FuzzyFunction f = function_of(o.fn, "--fn", o, ts);
    const ProbeConfig cfg = probe_of(o);
    const bool as_json = json_format(o);
    Output sink(o, out);
    int code = kOk;
    json rows = json::array();
    if (!as_json) sink.stream() << "t,alpha,d_lower,d_upper,case,residual\n";
    for (double t : points_of(o, *ts)) {
        const DerivativeResult r = analyze(f, *ts, t, cfg);
        if (!r.value || r.diff_case == DiffCase::NotDifferentiable) {
            err << "t = " << num(t) << ": not differentiable"
                << (r.failure.empty() ? std::string() : " (" + r.failure + ")") << '\n';
            code = kNotDifferentiable;
        }
        if (as_json) {
            rows.push_back({{"t", t}, {"result", io::to_json(r)}});
            continue;
        }
        if (!r.value) continue;
        for (int k = 0; k <= r.value->levels(); ++k) {
            sink.stream() << num(t) << ',' << num(r.value->alpha(k)) << ',' << num(r.value->lower()[k]) << ','
                          << num(r.value->upper()[k]) << ',' << to_string(r.diff_case) << ',' << num(r.residual)
                          << '\n';
        }
    }
    if (as_json) sink.stream() << rows.dump(2) << '\n';
    sink.flush();
    return code;
}

int cmd_tabulate(const Options& o, std::ostream& out) {
    const auto ts = timescale_of(o);
    const FuzzyFunction f = function_of(o.fn, "--fn", o, ts);
    const bool as_json = json_format(o);
    Output sink(o, out);
    json rows = json::array();
    if (!as_json) sink.stream() << "t,alpha,lower,upper\n";
    for (double t : points_of(o, *ts)) {
        if (!ts->contains(t)) throw Error(ErrorKind::NotInTimeScale, "t = " + num(t) + " is not in the time scale");
        const FuzzyNumber v = f(t);
        if (as_json) {
            rows.push_back({{"t", t}, {"value", io::to_json(v)}});
            continue;
        }
        for (int k = 0; k <= v.levels(); ++k) {
            sink.stream() << num(t) << ',' << num(v.alpha(k)) << ',' << num(v.lower()[k]) << ',' << num(v.upper()[k])
                          << '\n';
        }
    }
    if (as_json) sink.stream() << rows.dump(2) << '\n';
    sink.flush();
    return kOk;
}

int cmd_ghdiff(const Options& o, std::ostream& out) {
    const FuzzyNumber u = number_of(o.u, "--u", o);
    const FuzzyNumber v = number_of(o.v, "--v", o);
    const GhDiffResult r = gh_diff(u, v);
    Output sink(o, out);
    if (json_format(o)) {
        json j = {{"case", std::string(to_string(r.gh_case))}, {"value", r.value ? io::to_json(*r.value) : json(nullptr)}};
        if (!r.exists()) j["diagnostics"] = r.diagnostics;
        sink.stream() << j.dump(2) << '\n';
    } else {
        sink.stream() << "case," << to_string(r.gh_case) << '\n';
        if (r.value) {
            sink.stream() << "alpha,lower,upper\n";
            for (int k = 0; k <= r.value->levels(); ++k) {
                sink.stream() << num(r.value->alpha(k)) << ',' << num(r.value->lower()[k]) << ','
                              << num(r.value->upper()[k]) << '\n';
            }
        } else {
            sink.stream() << "diagnostics," << r.diagnostics << '\n';
        }
    }
    sink.flush();
    return r.exists() ? kOk : kNotDifferentiable;
}

int cmd_metric(const Options& o, std::ostream& out) {
    const double d = hausdorff(number_of(o.u, "--u", o), number_of(o.v, "--v", o));
    Output sink(o, out);
    if (json_format(o)) {
        sink.stream() << json{{"distance", d}}.dump() << '\n';
    } else {
        sink.stream() << "distance\n" << num(d) << '\n';
    }
    sink.flush();
    return kOk;
}

// One line of the check table.
struct CheckRow {
    double t = 0.0;
    std::string rule;
    std::string verdict;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
    json report;
};

double tolerance_for(const Options& o, const TimeScale& ts, double t) {
    if (o.residual_tol > 0.0) return o.residual_tol;
    return ts.classify(t).left_scattered() ? rules::kScatteredResidualTol : rules::kDenseResidualTol;
}

CheckRow from_report(const rules::RuleReport& r) {
    CheckRow row{r.t, r.rule, std::string(to_string(r.verdict)), r.residual, r.tolerance, r.equation, io::to_json(r)};
    for (const auto& h : r.hypothesis_checks) {
        if (!h.passed) row.detail = "failed: " + h.name + " (" + h.evidence + ")";
    }
    return row;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const auto ts = timescale_of(o);
    const ProbeConfig cfg = probe_of(o);
    const bool as_json = json_format(o);
    const std::string& th = o.theorem;
    std::vector<CheckRow> rows;

    for (double t : points_of(o, *ts)) {
        if (th == "rho-identity" || th == "level-consistency") {
            const FuzzyFunction f = function_of(o.fn, "--fn", o, ts);
            const double res = th == "rho-identity" ? check_rho_identity(f, *ts, t, cfg)
                                                    : check_level_consistency(f, *ts, t, cfg);
            const double tol = tolerance_for(o, *ts, t);
            CheckRow row{t, th, res <= tol ? "Verified" : "ResidualExceeded", res, tol, "", nullptr};
            row.report = {{"rule", th}, {"t", t}, {"residual", res}, {"tolerance", tol}, {"verdict", row.verdict}};
            rows.push_back(std::move(row));
        } else if (th == "characterize") {
            const FuzzyFunction f = function_of(o.fn, "--fn", o, ts);
            const DerivativeResult r = analyze(f, *ts, t, cfg);
            CheckRow row{t, th, std::string(to_string(r.diff_case)), r.residual, cfg.agreement_tol, r.failure, nullptr};
            row.report = io::to_json(r);
            rows.push_back(std::move(row));
        } else if (th == "sum") {
            const FuzzyFunction f = function_of(o.fn, "--fn", o, ts);
            const FuzzyFunction g = function_of(o.gn, "--gn", o, ts);
            rows.push_back(from_report(rules::sum_rule(f, g, *ts, t, cfg, o.residual_tol)));
        } else if (th == "product1" || th == "product2" || th == "product-interval") {
            require(o.scalar, "--scalar");
            const RealFunction fs = dsl::bind_scalar(dsl::parse_expr(load(o.scalar)), ts);
            if (th == "product-interval") {
                require(o.fn, "--fn");
                const FuzzyFunction g = dsl::bind(dsl::parse_function(load(o.fn), 0), ts);
                rows.push_back(from_report(rules::product_interval(fs, g, *ts, t, cfg, o.residual_tol)));
            } else {
                const FuzzyFunction g = function_of(o.fn, "--fn", o, ts);
                rules::RuleReport r = rules::product_fuzzy(fs, g, *ts, t, cfg, o.residual_tol);
                if (r.rule != th) {
                    r.hypothesis_checks.push_back({"sign selects " + th, false, "sign selects " + r.rule});
                    r.verdict = rules::Verdict::HypothesisFailed;
                }
                rows.push_back(from_report(r));
            }
        } else {
            throw Error(ErrorKind::InvalidArgument, "unknown theorem '" + th + "'");
        }
    }

    int code = kOk;
    for (const auto& r : rows) {
        if (r.verdict == "HypothesisFailed") {
            code = std::max(code, kHypothesisFailed);
        } else if (r.verdict == "ResidualExceeded" || r.verdict == "NotDifferentiable") {
            code = std::max(code, kNotDifferentiable);
        }
    }

    Output sink(o, out);
    if (as_json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(r.report);
        sink.stream() << arr.dump(2) << '\n';
    } else {
        sink.stream() << "t,rule,verdict,residual,tolerance,detail\n";
        for (const auto& r : rows) {
            std::string detail = r.detail;
            std::replace(detail.begin(), detail.end(), ',', ';');
            sink.stream() << num(r.t) << ',' << r.rule << ',' << r.verdict << ',' << num(r.residual) << ','
                          << num(r.tolerance) << ',' << detail << '\n';
        }
    }
    sink.flush();
    if (code != kOk) err << "check " << th << ": not all points verified\n";
    return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gH nabla calculus for fuzzy-number-valued functions on time scales", "ghnabla"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", o.out, "write output to this file");
        sub->add_option("--levels", o.levels, "alpha grid size K")->check(CLI::NonNegativeNumber);
    };
    auto calculus = [&](CLI::App* sub) {
        common(sub);
        sub->add_option("--timescale", o.timescale, "time scale spec or @file")->required();
        sub->add_option("--fn", o.fn, "fuzzy function definition or @file");
        sub->add_option("--points", o.points, "comma list, 'all' or 'samples:N'")->required();
        sub->add_option("--agreement-tol", o.agreement_tol, "one-sided limit agreement tolerance");
        sub->add_option("--residual-tol", o.residual_tol, "theorem residual tolerance");
        sub->add_option("--probes", o.probes, "probe points per side");
        sub->add_flag("--no-richardson", o.no_richardson, "disable extrapolation on interval sides");
        sub->add_flag("--no-split", o.no_split, "merge discrete generators into one approach sequence");
    };

    auto* diff = app.add_subcommand("diff", "gH nabla derivative at each point");
    calculus(diff);
    auto* tab = app.add_subcommand("tabulate", "evaluate the function at each point");
    calculus(tab);
    auto* gh = app.add_subcommand("ghdiff", "gH-difference u - v");
    common(gh);
    gh->add_option("--u", o.u, "fuzzy number (DSL, JSON or @file)")->required();
    gh->add_option("--v", o.v, "fuzzy number (DSL, JSON or @file)")->required();
    auto* metric = app.add_subcommand("metric", "Hausdorff distance D(u, v)");
    common(metric);
    metric->add_option("--u", o.u, "fuzzy number (DSL, JSON or @file)")->required();
    metric->add_option("--v", o.v, "fuzzy number (DSL, JSON or @file)")->required();
    auto* check = app.add_subcommand("check", "run a theorem checker over the points");
    calculus(check);
    check->add_option("theorem", o.theorem, "theorem to check")
        ->required()
        ->check(CLI::IsMember({"rho-identity", "level-consistency", "sum", "product1", "product2", "product-interval",
                               "characterize"}));
    check->add_option("--gn", o.gn, "second fuzzy function (sum rule)");
    check->add_option("--scalar", o.scalar, "real function expression (product rules)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (*diff) return cmd_diff(o, out, err);
        if (*tab) return cmd_tabulate(o, out);
        if (*gh) return cmd_ghdiff(o, out);
        if (*metric) return cmd_metric(o, out);
        return cmd_check(o, out, err);
    } catch (const Error& e) {
        err << e.what() << '\n';
        return exit_code(e.kind());
    }
}

}  // namespace ghnabla::cli
