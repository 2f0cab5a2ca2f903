#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghnabla/fuzzy.hpp"
#include "ghnabla/nabla.hpp"
#include "ghnabla/timescale.hpp"

namespace ghnabla::rules {

enum class Tag { I, II, Both, Neither };
std::string_view to_string(Tag t);

enum class Verdict { Verified, HypothesisFailed, ResidualExceeded };
std::string_view to_string(Verdict v);

enum class LenDirection { Increasing, Decreasing, Constant, Undetermined };
std::string_view to_string(LenDirection d);

struct HypothesisCheck {
    std::string name;
    bool passed = false;
    std::string evidence;
};

struct RuleReport {
    std::string rule;
    std::string equation;  // which identity the residual measures
    double t = 0.0;
    std::vector<HypothesisCheck> hypothesis_checks;
    std::optional<FuzzyNumber> lhs;  // left side of the checked identity
    std::optional<FuzzyNumber> rhs;
    std::optional<FuzzyNumber> rhs_alt;  // second right-hand form, when the rule has one
    double rhs_agreement = 0.0;          // D(rhs, rhs_alt)
    double residual = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::HypothesisFailed;

    bool hypotheses_hold() const;
};

// Default residual tolerances: exact quotient paths vs probed limits.
inline constexpr double kScatteredResidualTol = 1e-9;
inline constexpr double kDenseResidualTol = 1e-5;

// Throws EndpointDerivativeMissing when some two-sided endpoint derivative
// cannot be established at t.
Tag tag_i_ii(const FuzzyFunction& f, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

LenDirection len_direction(const FuzzyFunction& fn, const TimeScale& ts, double t, const ProbeConfig& cfg = {});

// residual_tol <= 0 selects the default for the kind of point t is.
RuleReport sum_rule(const FuzzyFunction& f, const FuzzyFunction& g, const TimeScale& ts, double t,
                    const ProbeConfig& cfg = {}, double residual_tol = 0.0);

RuleReport product_fuzzy(const RealFunction& fs, const FuzzyFunction& g, const TimeScale& ts, double t,
                         const ProbeConfig& cfg = {}, double residual_tol = 0.0);

// g must be interval valued (K = 0). Throws LengthDirectionUndetermined.
RuleReport product_interval(const RealFunction& fs, const FuzzyFunction& g, const TimeScale& ts, double t,
                            const ProbeConfig& cfg = {}, double residual_tol = 0.0);

}  // namespace ghnabla::rules
