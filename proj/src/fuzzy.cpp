#include "ghnabla/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ghnabla/error.hpp"

namespace ghnabla {

namespace {

void require_same_grid(const FuzzyNumber& u, const FuzzyNumber& v) {
    if (u.levels() != v.levels()) {
        throw Error(ErrorKind::GridMismatch,
                    "K = " + std::to_string(u.levels()) + " vs K = " + std::to_string(v.levels()));
    }
}

std::string alpha_label(std::size_t k, std::size_t size) {
    std::ostringstream os;
    os << (size <= 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(size - 1));
    return os.str();
}

// Largest drop of a sequence that should be non-decreasing, over all pairs i < j.
double max_drop(std::span<const double> xs, std::size_t* where = nullptr) {
    double worst = 0.0;
    double running = -INFINITY;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        running = std::max(running, xs[k]);
        if (running - xs[k] > worst) {
            worst = running - xs[k];
            if (where) *where = k;
        }
    }
    return worst;
}

double max_rise(std::span<const double> xs, std::size_t* where = nullptr) {
    double worst = 0.0;
    double running = INFINITY;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        running = std::min(running, xs[k]);
        if (xs[k] - running > worst) {
            worst = xs[k] - running;
            if (where) *where = k;
        }
    }
    return worst;
}

double max_crossing(std::span<const double> lo, std::span<const double> hi, std::size_t* where = nullptr) {
    double worst = 0.0;
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (lo[k] - hi[k] > worst) {
            worst = lo[k] - hi[k];
            if (where) *where = k;
        }
    }
    return worst;
}

double magnitude_of(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    for (double x : b) m = std::max(m, std::abs(x));
    return m;
}

// Describes why (lower, upper) fails to be a fuzzy number beyond `tol`; empty if it does not.
std::string violation(std::span<const double> lower, std::span<const double> upper, double tol) {
    std::size_t k = 0;
    if (max_drop(lower, &k) > tol) return "lower endpoint decreases at alpha=" + alpha_label(k, lower.size());
    if (max_rise(upper, &k) > tol) return "upper endpoint increases at alpha=" + alpha_label(k, upper.size());
    if (max_crossing(lower, upper, &k) > tol) return "lower exceeds upper at alpha=" + alpha_label(k, lower.size());
    return {};
}

}  // namespace

double hausdorff(const Interval& a, const Interval& b) { return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi)); }

Interval gh_diff(const Interval& a, const Interval& b) {
    const double d1 = a.lo - b.lo;
    const double d2 = a.hi - b.hi;
    return {std::min(d1, d2), std::max(d1, d2)};
}

FuzzyNumber::FuzzyNumber(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (auto why = check_levels(lower_, upper_); !why.empty()) throw Error(ErrorKind::ValidationError, why);
}

std::string FuzzyNumber::check_levels(std::span<const double> lower, std::span<const double> upper) {
    if (lower.empty() || lower.size() != upper.size()) return "level arrays must be non-empty and of equal length";
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k])) return "non-finite level value";
    }
    return violation(lower, upper, 0.0);
}

std::optional<FuzzyNumber> FuzzyNumber::repaired(std::vector<double> lower, std::vector<double> upper, double tol) {
    if (lower.empty() || lower.size() != upper.size()) return std::nullopt;
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k])) return std::nullopt;
    }
    if (!violation(lower, upper, tol).empty()) return std::nullopt;

    for (std::size_t k = 1; k < lower.size(); ++k) lower[k] = std::max(lower[k], lower[k - 1]);
    for (std::size_t k = upper.size() - 1; k-- > 0;) upper[k] = std::max(upper[k], upper[k + 1]);
    if (lower.back() > upper.back()) {
        const double mid = 0.5 * (lower.back() + upper.back());
        for (auto& x : lower) x = std::min(x, mid);
        for (auto& x : upper) x = std::max(x, mid);
    }
    return FuzzyNumber(std::move(lower), std::move(upper));
}

Interval FuzzyNumber::level(double alpha) const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw Error(ErrorKind::AlphaOutOfRange, "alpha = " + std::to_string(alpha));
    }
    const int K = levels();
    if (K == 0) return cut(0);
    const double x = alpha * K;
    const int k = std::min(static_cast<int>(std::floor(x)), K);
    const double frac = x - k;
    if (frac == 0.0 || k == K) return cut(k);
    return {lower_[k] + frac * (lower_[k + 1] - lower_[k]), upper_[k] + frac * (upper_[k + 1] - upper_[k])};
}

double FuzzyNumber::magnitude() const { return magnitude_of(lower_, upper_); }

bool FuzzyNumber::is_crisp(double tol) const {
    for (std::size_t k = 0; k < lower_.size(); ++k) {
        if (upper_[k] - lower_[k] > tol) return false;
    }
    return true;
}

std::string_view to_string(GhCase c) {
    switch (c) {
        case GhCase::CaseI: return "CaseI";
        case GhCase::CaseII: return "CaseII";
        case GhCase::Both: return "Both";
        case GhCase::None: return "None";
    }
    return "?";
}

double existence_tolerance(double magnitude) { return 1e-10 * (1.0 + magnitude); }

FuzzyNumber triangular(double a, double b, double c, int K) {
    if (!(a <= b && b <= c)) {
        throw Error(ErrorKind::OrderViolation, "triangular number requires a <= b <= c");
    }
    if (K < 1) throw Error(ErrorKind::InvalidArgument, "triangular number requires K >= 1");
    std::vector<double> lower(K + 1), upper(K + 1);
    for (int k = 0; k <= K; ++k) {
        const double alpha = static_cast<double>(k) / K;
        lower[k] = std::min(a + alpha * (b - a), b);
        upper[k] = std::max(c + alpha * (b - c), b);
    }
    return FuzzyNumber(std::move(lower), std::move(upper));
}

FuzzyNumber crisp(double x, int K) {
    if (K < 0) throw Error(ErrorKind::InvalidArgument, "K must be non-negative");
    return FuzzyNumber(std::vector<double>(K + 1, x), std::vector<double>(K + 1, x));
}

FuzzyNumber interval_number(double lo, double hi) { return FuzzyNumber({lo}, {hi}); }

FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v) {
    require_same_grid(u, v);
    std::vector<double> lower(u.lower().size()), upper(u.upper().size());
    for (std::size_t k = 0; k < lower.size(); ++k) {
        lower[k] = u.lower()[k] + v.lower()[k];
        upper[k] = u.upper()[k] + v.upper()[k];
    }
    return FuzzyNumber(std::move(lower), std::move(upper));
}

FuzzyNumber scalar_mul(double k, const FuzzyNumber& u) {
    std::vector<double> lower(u.lower().size()), upper(u.upper().size());
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (k >= 0) {
            lower[i] = k * u.lower()[i];
            upper[i] = k * u.upper()[i];
        } else {
            lower[i] = k * u.upper()[i];
            upper[i] = k * u.lower()[i];
        }
    }
    return FuzzyNumber(std::move(lower), std::move(upper));
}

GhDiffResult gh_diff(const FuzzyNumber& u, const FuzzyNumber& v) {
    require_same_grid(u, v);
    const std::size_t n = u.lower().size();
    std::vector<double> d_lower(n), d_upper(n);
    for (std::size_t k = 0; k < n; ++k) {
        d_lower[k] = u.lower()[k] - v.lower()[k];
        d_upper[k] = u.upper()[k] - v.upper()[k];
    }
    const double tol = existence_tolerance(std::max(u.magnitude(), v.magnitude()));

    // Case (i): w = (u- - v-, u+ - v+); case (ii): w = (u+ - v+, u- - v-).
    const std::string why_i = violation(d_lower, d_upper, tol);
    const std::string why_ii = violation(d_upper, d_lower, tol);

    GhDiffResult out;
    if (why_i.empty()) {
        out.gh_case = why_ii.empty() ? GhCase::Both : GhCase::CaseI;
        out.value = FuzzyNumber::repaired(d_lower, d_upper, tol);
    } else if (why_ii.empty()) {
        out.gh_case = GhCase::CaseII;
        out.value = FuzzyNumber::repaired(d_upper, d_lower, tol);
    } else {
        out.gh_case = GhCase::None;
        out.diagnostics = "case (i): " + why_i + "; case (ii): " + why_ii;
    }
    return out;
}

std::optional<FuzzyNumber> h_diff(const FuzzyNumber& u, const FuzzyNumber& v) {
    auto r = gh_diff(u, v);
    if (r.gh_case == GhCase::CaseI || r.gh_case == GhCase::Both) return r.value;
    return std::nullopt;
}

double hausdorff(const FuzzyNumber& u, const FuzzyNumber& v) {
    require_same_grid(u, v);
    double d = 0.0;
    for (std::size_t k = 0; k < u.lower().size(); ++k) {
        d = std::max({d, std::abs(u.lower()[k] - v.lower()[k]), std::abs(u.upper()[k] - v.upper()[k])});
    }
    return d;
}

double len_alpha(const FuzzyNumber& u, double alpha) { return u.len(alpha); }

Interval level(const FuzzyNumber& u, double alpha) { return u.level(alpha); }

double norm(const FuzzyNumber& u) {
    double d = 0.0;
    for (std::size_t k = 0; k < u.lower().size(); ++k) d = std::max({d, std::abs(u.lower()[k]), std::abs(u.upper()[k])});
    return d;
}

}  // namespace ghnabla
