#include "ghnabla/nabla.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ghnabla {

namespace {

// One approach path used for limit probing.
struct ProbePath {
    Side side;
    ApproachSubsequence sub;
};

struct Estimate {
    std::vector<double> value;
    double residual = 0.0;
};

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(10);
    os << x;
    return os.str();
}

// Limit of a vector-valued sequence sampled at distances `steps` (far to near).
// With extrapolation the diagonal of the Neville tableau in the step variable
// is used; the estimate is the last entry and the residual the largest spread
// over the tail half.
Estimate estimate_limit(const std::vector<std::vector<double>>& seq, const std::vector<double>& steps,
                        bool extrapolate) {
    const std::size_t n = seq.size();
    const std::size_t dim = seq.front().size();
    std::vector<std::vector<double>> diag;
    if (extrapolate && n >= 2) {
        std::vector<std::vector<double>> column = seq;
        diag.push_back(column[0]);
        for (std::size_t j = 1; j < n; ++j) {
            std::vector<std::vector<double>> next(n);
            for (std::size_t k = j; k < n; ++k) {
                next[k].resize(dim);
                const double w = steps[k] / (steps[k - j] - steps[k]);
                for (std::size_t d = 0; d < dim; ++d) {
                    next[k][d] = column[k][d] + (column[k][d] - column[k - 1][d]) * w;
                }
            }
            column = std::move(next);
            diag.push_back(column[j]);
        }
    } else {
        diag = seq;
    }
    Estimate est;
    est.value = diag.back();
    for (std::size_t d = 0; d < dim; ++d) {
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t k = n / 2; k < n; ++k) {
            lo = std::min(lo, diag[k][d]);
            hi = std::max(hi, diag[k][d]);
        }
        est.residual = std::max(est.residual, hi - lo);
    }
    return est;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

void require_domain(const TimeScale& ts, double t) {
    if (!ts.contains(t)) throw Error(ErrorKind::NotInDomain, "t = " + fmt(t) + " is not in the time scale");
    if (!ts.in_kappa(t)) {
        throw Error(ErrorKind::NotInDomain, "t = " + fmt(t) + " is a right-scattered minimum (outside T_kappa)");
    }
}

std::vector<ProbePath> plan_paths(const TimeScale& ts, double t, const PointClass& pc, const ProbeConfig& cfg) {
    std::vector<ProbePath> paths;
    for (Side side : {Side::Left, Side::Right}) {
        const SideClass sc = side == Side::Left ? pc.left : pc.right;
        if (sc != SideClass::Dense) continue;
        auto subs = ts.approach_subsequences(t, side, cfg.probe_count, cfg.approach);
        if (!cfg.subsequence_split && subs.size() > 1) {
            ApproachSubsequence merged;
            merged.generator = subs.front().generator;
            merged.points = ts.approach_sequence(t, side, cfg.probe_count, cfg.approach);
            subs = {merged};
        }
        for (auto& s : subs) paths.push_back({side, std::move(s)});
    }
    if (paths.empty()) {
        throw Error(ErrorKind::NotInDomain, "t = " + fmt(t) + " has no dense side to probe");
    }
    return paths;
}

std::vector<double> steps_of(const ProbePath& path, double t) {
    std::vector<double> h;
    for (double s : path.sub.points) h.push_back(std::abs(s - t));
    return h;
}

// Combines the one-sided estimates along the subsequences of one side.
OneSided combine(const std::vector<double>& estimates, double residual, double tol) {
    if (estimates.empty()) return {};
    const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
    const double spread = *hi - *lo;
    if (spread > 10.0 * tol) return {std::nullopt, Existence::DoesNotExist};
    if (spread <= tol && residual <= tol) {
        double mean = 0.0;
        for (double e : estimates) mean += e;
        return {mean / static_cast<double>(estimates.size()), Existence::Exists};
    }
    return {std::nullopt, Existence::Inconclusive};
}

std::optional<double> two_sided(const OneSided& minus, const OneSided& plus, double tol) {
    std::vector<double> vals;
    for (const auto* side : {&minus, &plus}) {
        if (side->existence == Existence::NotApplicable) continue;
        if (side->existence != Existence::Exists) return std::nullopt;
        vals.push_back(*side->value);
    }
    if (vals.empty()) return std::nullopt;
    if (vals.size() == 2 && std::abs(vals[0] - vals[1]) > tol) return std::nullopt;
    double mean = 0.0;
    for (double v : vals) mean += v;
    return mean / static_cast<double>(vals.size());
}

void add_continuity_evidence(DerivativeResult& out, const FuzzyFunction& f, const FuzzyNumber& ft,
                             const std::vector<ProbePath>& paths) {
    bool ok = true;
    double nearest = 0.0;
    for (const auto& p : paths) {
        const double far = hausdorff(f(p.sub.points.front()), ft);
        const double near = hausdorff(f(p.sub.points.back()), ft);
        nearest = std::max(nearest, near);
        if (near > far * (1.0 + 1e-9) + 1e-12) ok = false;
    }
    out.evidence.push_back({"continuity", ok, "max D(f(s), f(t)) at nearest probes = " + fmt(nearest)});
}

// Hypothesis of the characterization theorem at the sampled left-scattered
// probe points s: the H-differences against f(t) exist in one orientation for
// both f(s) and f(rho(s)).
void add_h_difference_evidence(DerivativeResult& out, const FuzzyFunction& f, const TimeScale& ts,
                               const FuzzyNumber& ft, const std::vector<ProbePath>& paths) {
    int checked = 0;
    int failed = 0;
    for (const auto& p : paths) {
        if (p.sub.continuous) continue;
        for (double s : p.sub.points) {
            if (!ts.classify(s).left_scattered()) continue;
            ++checked;
            const FuzzyNumber fs = f(s);
            const FuzzyNumber frs = f(ts.rho(s));
            const bool from_t = h_diff(ft, fs) && h_diff(ft, frs);
            const bool to_t = h_diff(fs, ft) && h_diff(frs, ft);
            if (!from_t && !to_t) ++failed;
        }
    }
    if (checked == 0) return;
    out.evidence.push_back({"h-difference-existence", failed == 0,
                            std::to_string(checked - failed) + "/" + std::to_string(checked) +
                                " sampled left-scattered points satisfy the H-difference hypothesis"});
}

DerivativeResult analyze_scattered(const FuzzyFunction& f, const TimeScale& ts, double t, const PointClass& pc,
                                   const FuzzyNumber& ft, const ProbeConfig& cfg) {
    DerivativeResult out;
    out.left_scattered = true;
    out.agreement_tol = cfg.agreement_tol;
    const double r = ts.rho(t);
    const double nu = t - r;
    const FuzzyNumber fr = f(r);

    for (int k = 0; k <= ft.levels(); ++k) {
        EndpointLevel lvl;
        lvl.alpha = ft.alpha(k);
        const double dl = (ft.lower()[k] - fr.lower()[k]) / nu;
        const double du = (ft.upper()[k] - fr.upper()[k]) / nu;
        lvl.minus_lower = lvl.plus_lower = {dl, Existence::Exists};
        lvl.minus_upper = lvl.plus_upper = {du, Existence::Exists};
        lvl.subsequence_limits.push_back({Side::Left, 0, dl, du, 0.0});
        out.endpoint_report.levels.push_back(std::move(lvl));
    }

    const GhDiffResult diff = gh_diff(ft, fr);
    out.gh_case = diff.gh_case;
    if (!diff.exists()) {
        out.failure = "f(t) gH f(rho(t)) does not exist at t = " + fmt(t) + " (" + diff.diagnostics + ")";
        out.failure_kind = ErrorKind::GhNonexistent;
    } else {
        out.value = scalar_mul(1.0 / nu, *diff.value);
    }

    if (pc.right_dense()) {
        // Crisp-derivative hypothesis: H-differences of both orientations among right probes.
        const auto paths = plan_paths(ts, t, {SideClass::Boundary, SideClass::Dense}, cfg);
        bool forward = false, backward = false;
        for (const auto& p : paths) {
            for (double s : p.sub.points) {
                const FuzzyNumber fs = f(s);
                forward = forward || h_diff(fs, fr).has_value();
                backward = backward || h_diff(fr, fs).has_value();
            }
        }
        out.evidence.push_back({"crisp-hypothesis", forward && backward,
                                std::string("right probes admit f(t+h) -H f(rho(t)): ") + (forward ? "yes" : "no") +
                                    ", f(rho(t)) -H f(t+h): " + (backward ? "yes" : "no")});
        add_continuity_evidence(out, f, ft, paths);
    }
    out.diff_case = classify_case(out);
    return out;
}

DerivativeResult analyze_dense(const FuzzyFunction& f, const TimeScale& ts, double t, const PointClass& pc,
                               const FuzzyNumber& ft, const ProbeConfig& cfg) {
    DerivativeResult out;
    out.agreement_tol = cfg.agreement_tol;
    const double tol = cfg.agreement_tol;
    const auto paths = plan_paths(ts, t, pc, cfg);
    const std::size_t L = ft.lower().size();

    struct PathResult {
        Estimate lower, upper;
        std::optional<Estimate> gh;
    };
    std::vector<PathResult> results;
    std::string gh_failure;

    for (const auto& p : paths) {
        const auto steps = steps_of(p, t);
        const bool extrapolate = cfg.richardson && p.sub.continuous;
        std::vector<std::vector<double>> lq, uq, ghq;
        bool gh_ok = true;
        for (double s : p.sub.points) {
            const FuzzyNumber fs = f(s);
            const double h = s - t;
            std::vector<double> lrow(L), urow(L);
            for (std::size_t k = 0; k < L; ++k) {
                lrow[k] = (fs.lower()[k] - ft.lower()[k]) / h;
                urow[k] = (fs.upper()[k] - ft.upper()[k]) / h;
            }
            lq.push_back(std::move(lrow));
            uq.push_back(std::move(urow));
            if (!gh_ok) continue;
            const GhDiffResult diff = p.side == Side::Right ? gh_diff(fs, ft) : gh_diff(ft, fs);
            if (!diff.exists()) {
                gh_ok = false;
                if (gh_failure.empty()) {
                    gh_failure = "gH-difference missing at probe s = " + fmt(s) + " (" + diff.diagnostics + ")";
                }
                continue;
            }
            const FuzzyNumber q = scalar_mul(1.0 / std::abs(h), *diff.value);
            std::vector<double> row(q.lower().begin(), q.lower().end());
            row.insert(row.end(), q.upper().begin(), q.upper().end());
            ghq.push_back(std::move(row));
        }
        PathResult pr{estimate_limit(lq, steps, extrapolate), estimate_limit(uq, steps, extrapolate), std::nullopt};
        if (gh_ok) pr.gh = estimate_limit(ghq, steps, extrapolate);
        results.push_back(std::move(pr));
    }

    // Endpoint report.
    for (std::size_t k = 0; k < L; ++k) {
        EndpointLevel lvl;
        lvl.alpha = ft.alpha(static_cast<int>(k));
        for (Side side : {Side::Left, Side::Right}) {
            std::vector<double> lows, ups;
            double res_l = 0.0, res_u = 0.0;
            for (std::size_t i = 0; i < paths.size(); ++i) {
                if (paths[i].side != side) continue;
                const double lo = results[i].lower.value[k];
                const double up = results[i].upper.value[k];
                lows.push_back(lo);
                ups.push_back(up);
                res_l = std::max(res_l, results[i].lower.residual);
                res_u = std::max(res_u, results[i].upper.residual);
                lvl.subsequence_limits.push_back(
                    {side, paths[i].sub.generator, lo, up, std::max(results[i].lower.residual, results[i].upper.residual)});
            }
            auto& l = side == Side::Left ? lvl.minus_lower : lvl.plus_lower;
            auto& u = side == Side::Left ? lvl.minus_upper : lvl.plus_upper;
            l = combine(lows, res_l, tol);
            u = combine(ups, res_u, tol);
        }
        out.endpoint_report.levels.push_back(std::move(lvl));
    }

    // gH value: every path must converge and all paths must agree.
    if (!gh_failure.empty()) {
        out.failure = gh_failure;
        out.failure_kind = ErrorKind::GhNonexistent;
    } else {
        double residual = 0.0;
        for (const auto& r : results) residual = std::max(residual, r.gh->residual);
        for (std::size_t i = 0; i < results.size(); ++i) {
            for (std::size_t j = i + 1; j < results.size(); ++j) {
                residual = std::max(residual, max_abs_diff(results[i].gh->value, results[j].gh->value));
            }
        }
        out.residual = residual;
        if (residual > tol) {
            out.failure = "one-sided gH quotient limits disagree by " + fmt(residual) + " > " + fmt(tol);
            out.failure_kind = ErrorKind::LimitDisagreement;
        } else {
            std::vector<double> lower(L, 0.0), upper(L, 0.0);
            for (const auto& r : results) {
                for (std::size_t k = 0; k < L; ++k) {
                    lower[k] += r.gh->value[k];
                    upper[k] += r.gh->value[L + k];
                }
            }
            for (std::size_t k = 0; k < L; ++k) {
                lower[k] /= static_cast<double>(results.size());
                upper[k] /= static_cast<double>(results.size());
            }
            out.value = FuzzyNumber::repaired(std::move(lower), std::move(upper), tol);
            if (!out.value) {
                out.failure = "limit estimate is not a fuzzy number";
                out.failure_kind = ErrorKind::LimitDisagreement;
            }
        }
    }

    add_continuity_evidence(out, f, ft, paths);
    add_h_difference_evidence(out, f, ts, ft, paths);
    out.diff_case = classify_case(out);
    return out;
}

}  // namespace

FuzzyFunction constant_function(const FuzzyNumber& value) {
    return {[value](double) { return value; }, value.levels()};
}

FuzzyFunction sum(const FuzzyFunction& f, const FuzzyFunction& g) {
    return {[f, g](double t) { return add(f(t), g(t)); }, f.levels};
}

FuzzyFunction product(const RealFunction& fs, const FuzzyFunction& g) {
    return {[fs, g](double t) { return scalar_mul(fs(t), g(t)); }, g.levels};
}

void ProbeConfig::validate() const {
    if (probe_count < 3) throw Error(ErrorKind::InvalidArgument, "probe_count must be at least 3");
    if (!(agreement_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "agreement_tol must be positive");
}

std::string_view to_string(DiffCase c) {
    switch (c) {
        case DiffCase::CaseI: return "CaseI";
        case DiffCase::CaseII: return "CaseII";
        case DiffCase::Crisp: return "Crisp";
        case DiffCase::SwitchingIII: return "SwitchingIII";
        case DiffCase::SwitchingIV: return "SwitchingIV";
        case DiffCase::NotDifferentiable: return "NotDifferentiable";
    }
    return "?";
}

std::string_view to_string(Existence e) {
    switch (e) {
        case Existence::Exists: return "exists";
        case Existence::DoesNotExist: return "absent";
        case Existence::Inconclusive: return "inconclusive";
        case Existence::NotApplicable: return "n/a";
    }
    return "?";
}

std::optional<double> EndpointReport::lower_derivative(std::size_t k, double tol) const {
    return two_sided(levels.at(k).minus_lower, levels.at(k).plus_lower, tol);
}

std::optional<double> EndpointReport::upper_derivative(std::size_t k, double tol) const {
    return two_sided(levels.at(k).minus_upper, levels.at(k).plus_upper, tol);
}

double nabla_scalar(const RealFunction& g, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    cfg.validate();
    require_domain(ts, t);
    const PointClass pc = ts.classify(t);
    const double gt = g(t);
    if (pc.left_scattered()) {
        const double r = ts.rho(t);
        return (gt - g(r)) / (t - r);
    }
    const auto paths = plan_paths(ts, t, pc, cfg);
    std::vector<double> estimates;
    double residual = 0.0;
    for (const auto& p : paths) {
        std::vector<std::vector<double>> q;
        for (double s : p.sub.points) q.push_back({(g(s) - gt) / (s - t)});
        const Estimate e = estimate_limit(q, steps_of(p, t), cfg.richardson && p.sub.continuous);
        residual = std::max(residual, e.residual);
        estimates.push_back(e.value[0]);
    }
    const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
    residual = std::max(residual, *hi - *lo);
    if (residual > cfg.agreement_tol) {
        throw Error(ErrorKind::LimitDisagreement,
                    "difference quotient limits at t = " + fmt(t) + " disagree by " + fmt(residual));
    }
    double mean = 0.0;
    for (double e : estimates) mean += e;
    return mean / static_cast<double>(estimates.size());
}

DerivativeResult analyze(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    cfg.validate();
    require_domain(ts, t);
    const PointClass pc = ts.classify(t);
    const FuzzyNumber ft = f(t);
    if (pc.left_scattered()) return analyze_scattered(f, ts, t, pc, ft, cfg);
    return analyze_dense(f, ts, t, pc, ft, cfg);
}

DerivativeResult nabla_gh(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    DerivativeResult r = analyze(f, ts, t, cfg);
    if (!r.value) throw Error(r.failure_kind, r.failure);
    return r;
}

EndpointReport endpoint_derivatives(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    return analyze(f, ts, t, cfg).endpoint_report;
}

DiffCase classify_case(const DerivativeResult& result) {
    if (!result.value) return DiffCase::NotDifferentiable;
    const FuzzyNumber& v = *result.value;
    const double tol = result.agreement_tol > 0 ? result.agreement_tol : 1e-6;
    if (v.is_crisp(result.left_scattered ? existence_tolerance(v.magnitude()) : tol)) return DiffCase::Crisp;

    if (result.left_scattered) {
        switch (result.gh_case) {
            case GhCase::CaseI: return DiffCase::CaseI;
            case GhCase::CaseII: return DiffCase::CaseII;
            case GhCase::Both: return DiffCase::Crisp;
            case GhCase::None: return DiffCase::NotDifferentiable;
        }
    }

    // Each approach direction (side, generator) either keeps the endpoint
    // order of the value, swaps it, or matches neither.
    struct Direction {
        Side side;
        std::size_t generator;
        bool ordered = true;
        bool swapped = true;
    };
    std::vector<Direction> dirs;
    const double match_tol = 2.0 * tol;
    const auto& levels = result.endpoint_report.levels;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (const auto& lim : levels[k].subsequence_limits) {
            auto it = std::find_if(dirs.begin(), dirs.end(), [&](const Direction& d) {
                return d.side == lim.side && d.generator == lim.generator;
            });
            if (it == dirs.end()) {
                dirs.push_back({lim.side, lim.generator});
                it = std::prev(dirs.end());
            }
            const double lo = v.lower()[k];
            const double hi = v.upper()[k];
            if (std::abs(lim.lower - lo) > match_tol || std::abs(lim.upper - hi) > match_tol) it->ordered = false;
            if (std::abs(lim.upper - lo) > match_tol || std::abs(lim.lower - hi) > match_tol) it->swapped = false;
        }
    }
    if (dirs.empty()) return DiffCase::NotDifferentiable;
    bool any_neither = false, all_ordered = true, all_swapped = true;
    bool right_ordered = false, right_swapped = false, left_ordered = false, left_swapped = false;
    for (const auto& d : dirs) {
        any_neither = any_neither || (!d.ordered && !d.swapped);
        all_ordered = all_ordered && d.ordered;
        all_swapped = all_swapped && d.swapped;
        if (d.side == Side::Right) {
            right_ordered = right_ordered || d.ordered;
            right_swapped = right_swapped || d.swapped;
        } else {
            left_ordered = left_ordered || d.ordered;
            left_swapped = left_swapped || d.swapped;
        }
    }
    if (any_neither) return DiffCase::NotDifferentiable;
    if (all_ordered) return DiffCase::CaseI;
    if (all_swapped) return DiffCase::CaseII;
    // Switching: the value is [nabla_+ f^-, nabla_+ f^+] from the right and the
    // swapped pair from the left (iii), or the reverse (iv).
    if (right_ordered && !left_ordered) return DiffCase::SwitchingIII;
    if (right_swapped && !left_swapped) return DiffCase::SwitchingIV;
    return DiffCase::NotDifferentiable;
}

double check_rho_identity(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    const DerivativeResult r = nabla_gh(f, ts, t, cfg);
    const double nu = ts.nu(t);
    const FuzzyNumber ft = f(t);
    const FuzzyNumber fr = f(ts.rho(t));
    const FuzzyNumber step = scalar_mul(nu, *r.value);
    const double forward = hausdorff(ft, add(fr, step));
    const double backward = hausdorff(fr, add(ft, scalar_mul(-1.0, step)));
    return std::min(forward, backward);
}

double check_level_consistency(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg) {
    const DerivativeResult r = nabla_gh(f, ts, t, cfg);
    const FuzzyNumber& value = *r.value;
    const PointClass pc = ts.classify(t);
    const FuzzyNumber ft = f(t);
    const int K = ft.levels();
    double gap = 0.0;

    if (pc.left_scattered()) {
        const double rr = ts.rho(t);
        const double nu = t - rr;
        const FuzzyNumber fr = f(rr);
        for (int k = 0; k <= K; ++k) {
            const Interval d = gh_diff(ft.cut(k), fr.cut(k));
            gap = std::max(gap, hausdorff(Interval{d.lo / nu, d.hi / nu}, value.cut(k)));
        }
        return gap;
    }

    // Interval-valued derivative of each f_alpha on its own.
    const auto paths = plan_paths(ts, t, pc, cfg);
    std::vector<std::vector<FuzzyNumber>> samples;
    for (const auto& p : paths) {
        std::vector<FuzzyNumber> row;
        for (double s : p.sub.points) row.push_back(f(s));
        samples.push_back(std::move(row));
    }
    for (int k = 0; k <= K; ++k) {
        const Interval at_t = ft.cut(k);
        std::vector<Interval> limits;
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const auto& p = paths[i];
            std::vector<std::vector<double>> q;
            for (std::size_t j = 0; j < p.sub.points.size(); ++j) {
                const double h = std::abs(p.sub.points[j] - t);
                const Interval at_s = samples[i][j].cut(k);
                const Interval d = p.side == Side::Right ? gh_diff(at_s, at_t) : gh_diff(at_t, at_s);
                q.push_back({d.lo / h, d.hi / h});
            }
            const Estimate e = estimate_limit(q, steps_of(p, t), cfg.richardson && p.sub.continuous);
            limits.push_back({e.value[0], e.value[1]});
        }
        Interval mean{0.0, 0.0};
        for (const auto& l : limits) {
            mean.lo += l.lo / static_cast<double>(limits.size());
            mean.hi += l.hi / static_cast<double>(limits.size());
        }
        gap = std::max(gap, hausdorff(mean, value.cut(k)));
    }
    return gap;
}

}  // namespace ghnabla
