#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghnabla/error.hpp"
#include "ghnabla/fuzzy.hpp"
#include "ghnabla/timescale.hpp"

namespace ghnabla {

using RealFunction = std::function<double(double)>;

// A fuzzy-number-valued function t -> f(t) on a fixed alpha grid.
struct FuzzyFunction {
    std::function<FuzzyNumber(double)> eval;
    int levels = 100;

    FuzzyNumber operator()(double t) const { return eval(t); }
};

FuzzyFunction constant_function(const FuzzyNumber& value);
// (f + g)(t) = f(t) + g(t)
FuzzyFunction sum(const FuzzyFunction& f, const FuzzyFunction& g);
// (fs g)(t) = fs(t) * g(t), real scalar times fuzzy value.
FuzzyFunction product(const RealFunction& fs, const FuzzyFunction& g);

struct ProbeConfig {
    int probe_count = 8;
    double agreement_tol = 1e-6;
    bool richardson = true;         // only ever applied on sides lying inside an interval piece
    bool subsequence_split = true;  // separate limits per discrete generator
    ApproachStrategy approach;

    void validate() const;
};

enum class DiffCase { CaseI, CaseII, Crisp, SwitchingIII, SwitchingIV, NotDifferentiable };
std::string_view to_string(DiffCase c);

enum class Existence { Exists, DoesNotExist, Inconclusive, NotApplicable };
std::string_view to_string(Existence e);

// Limit of the endpoint difference quotients along one approach subsequence.
struct SubsequenceLimit {
    Side side = Side::Right;
    std::size_t generator = 0;
    double lower = 0.0;  // limit of (f_alpha^-(s) - f_alpha^-(t)) / (s - t)
    double upper = 0.0;  // limit of (f_alpha^+(s) - f_alpha^+(t)) / (s - t)
    double residual = 0.0;
};

struct OneSided {
    std::optional<double> value;
    Existence existence = Existence::NotApplicable;
};

// One-sided nabla derivatives of the endpoint functions at one grid level.
struct EndpointLevel {
    double alpha = 0.0;
    OneSided minus_lower;  // nabla_- f_alpha^-
    OneSided plus_lower;   // nabla_+ f_alpha^-
    OneSided minus_upper;  // nabla_- f_alpha^+
    OneSided plus_upper;   // nabla_+ f_alpha^+
    std::vector<SubsequenceLimit> subsequence_limits;
};

struct EndpointReport {
    std::vector<EndpointLevel> levels;

    // Two-sided endpoint derivatives (one-sided at a boundary point) at level k,
    // present only when every available side exists and the sides agree.
    std::optional<double> lower_derivative(std::size_t k, double tol) const;
    std::optional<double> upper_derivative(std::size_t k, double tol) const;
};

struct Evidence {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct DerivativeResult {
    std::optional<FuzzyNumber> value;
    DiffCase diff_case = DiffCase::NotDifferentiable;
    double residual = 0.0;
    EndpointReport endpoint_report;

    bool left_scattered = false;
    GhCase gh_case = GhCase::None;  // case of f(t) gH f(rho(t)) at a left-scattered t
    double agreement_tol = 0.0;
    std::string failure;            // why value is absent
    ErrorKind failure_kind = ErrorKind::LimitDisagreement;
    std::vector<Evidence> evidence; // sampled hypothesis checks, never proofs
};

// Nabla derivative of a real function.
double nabla_scalar(const RealFunction& g, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

// Full analysis; never throws for non-differentiability (value is then absent
// and `failure` explains why). Throws NotInDomain when t is outside T_kappa.
DerivativeResult analyze(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

// gH nabla derivative. Throws GhNonexistent or LimitDisagreement when it cannot be established.
DerivativeResult nabla_gh(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

EndpointReport endpoint_derivatives(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

DiffCase classify_case(const DerivativeResult& result);

// min of D(f(t), f(rho) + nu * d) and D(f(rho), f(t) + (-1) nu * d).
double check_rho_identity(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

// Worst Hausdorff gap between the level-wise interval derivative of f_alpha and
// the alpha-cut of the fuzzy derivative, over the grid levels.
double check_level_consistency(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

}  // namespace ghnabla
