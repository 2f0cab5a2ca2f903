#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghnabla {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double width() const { return hi - lo; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Hausdorff distance of two compact intervals.
double hausdorff(const Interval& a, const Interval& b);

// gH-difference of intervals: always exists, [min, max] of the endpoint differences.
Interval gh_diff(const Interval& a, const Interval& b);

/// A fuzzy number represented by its alpha-cuts on the uniform grid
/// alpha_k = k / K, k = 0..K. `lower` is non-decreasing, `upper` is
/// non-increasing and lower[k] <= upper[k] at every level, so the cuts are
/// nested. K = 0 denotes a plain interval (a single level used for every alpha).
class FuzzyNumber {
public:
    // Throws ValidationError when the level arrays violate an invariant.
    FuzzyNumber(std::vector<double> lower, std::vector<double> upper);

    // Accepts level arrays whose invariant violations do not exceed `tol`
    // and repairs them to the nearest valid representation; nullopt otherwise.
    static std::optional<FuzzyNumber> repaired(std::vector<double> lower, std::vector<double> upper, double tol);

    // Empty string when valid, otherwise a description of the first violation.
    static std::string check_levels(std::span<const double> lower, std::span<const double> upper);

    int levels() const { return static_cast<int>(lower_.size()) - 1; }
    double alpha(int k) const { return levels() == 0 ? 0.0 : static_cast<double>(k) / levels(); }

    std::span<const double> lower() const { return lower_; }
    std::span<const double> upper() const { return upper_; }
    Interval cut(int k) const { return {lower_[k], upper_[k]}; }

    // Piecewise-linear interpolation between grid levels; exact on the grid.
    Interval level(double alpha) const;
    double len(double alpha) const { return level(alpha).width(); }

    double magnitude() const;
    bool is_crisp(double tol = 0.0) const;

    friend bool operator==(const FuzzyNumber&, const FuzzyNumber&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

enum class GhCase { CaseI, CaseII, Both, None };

std::string_view to_string(GhCase c);

struct GhDiffResult {
    std::optional<FuzzyNumber> value;
    GhCase gh_case = GhCase::None;
    std::string diagnostics;  // violated constraints when gh_case == None

    bool exists() const { return gh_case != GhCase::None; }
};

// Forgiven monotonicity / ordering slack in existence checks.
double existence_tolerance(double magnitude);

FuzzyNumber triangular(double a, double b, double c, int K);
FuzzyNumber crisp(double x, int K);
FuzzyNumber interval_number(double lo, double hi);

FuzzyNumber add(const FuzzyNumber& u, const FuzzyNumber& v);
FuzzyNumber scalar_mul(double k, const FuzzyNumber& u);

GhDiffResult gh_diff(const FuzzyNumber& u, const FuzzyNumber& v);
std::optional<FuzzyNumber> h_diff(const FuzzyNumber& u, const FuzzyNumber& v);

double hausdorff(const FuzzyNumber& u, const FuzzyNumber& v);
double len_alpha(const FuzzyNumber& u, double alpha);
Interval level(const FuzzyNumber& u, double alpha);

// D(u, 0~), the norm used throughout the continuity arguments.
double norm(const FuzzyNumber& u);

}  // namespace ghnabla
