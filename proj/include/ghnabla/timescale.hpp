#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ghnabla {

// Piece descriptions, kept exactly as declared so that a time scale can be
// printed back in canonical form.
struct ClosedInterval {
    double a = 0.0;
    double b = 0.0;
};

struct ExplicitPoints {
    std::vector<double> values;
};

// {start + k * step : k = 0, 1, ...} truncated at stop.
struct ArithmeticGrid {
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

// {q^k : kmin <= k <= kmax}
struct GeometricGrid {
    double q = 2.0;
    int kmin = 0;
    int kmax = 0;
};

// {c / n : n = 1..count}, plus the accumulation point 0 when `accumulates`.
struct ReciprocalGrid {
    double scale = 1.0;
    int count = 1;
    bool accumulates = true;
    std::string scale_symbol;  // "sqrt2" / "-sqrt2" when declared symbolically
};

using Piece = std::variant<ClosedInterval, ExplicitPoints, ArithmeticGrid, GeometricGrid, ReciprocalGrid>;

enum class Side { Left, Right };

enum class SideClass { Dense, Scattered, Boundary };

struct PointClass {
    SideClass left = SideClass::Boundary;
    SideClass right = SideClass::Boundary;

    bool isolated() const { return left == SideClass::Scattered && right == SideClass::Scattered; }
    bool dense() const { return left == SideClass::Dense && right == SideClass::Dense; }
    bool left_scattered() const { return left == SideClass::Scattered; }
    bool left_dense() const { return left == SideClass::Dense; }
    bool right_dense() const { return right == SideClass::Dense; }
};

// How probe points are placed on a side that lies inside an interval piece:
// t +/- initial_step * max(1,|t|) * ratio^k, clipped to stay inside the piece.
struct ApproachStrategy {
    double initial_step = 1.0 / 64.0;
    double ratio = 0.5;
};

// Points of a time scale approaching t from one side, all from a single
// generator piece, ordered from farthest to nearest.
struct ApproachSubsequence {
    std::size_t generator = 0;  // index into TimeScale::pieces()
    bool continuous = false;    // drawn from an interval piece (geometric steps)
    std::vector<double> points;
};

class TimeScale {
public:
    static constexpr double kMembershipTol = 1e-12;
    static constexpr double kDensityTol = 1e-9;

    explicit TimeScale(std::vector<Piece> pieces);

    const std::vector<Piece>& pieces() const { return pieces_; }
    bool kappa_applied() const { return kappa_applied_; }

    bool contains(double t) const;
    double min() const;
    double max() const;

    double sigma(double t) const;
    double rho(double t) const;
    double nu(double t) const;
    PointClass classify(double t) const;

    // The time scale with a right-scattered minimum removed (identity otherwise).
    TimeScale kappa() const;
    bool in_kappa(double t) const;

    std::vector<double> approach_sequence(double t, Side side, int count,
                                          const ApproachStrategy& strategy = {}) const;
    std::vector<ApproachSubsequence> approach_subsequences(double t, Side side, int count,
                                                           const ApproachStrategy& strategy = {}) const;

    // Indices of the declared pieces that realize t.
    std::vector<std::size_t> provenance(double t) const;

    // Realized discrete points (sorted, deduplicated), interval pieces excluded.
    std::vector<double> discrete_points() const;
    // Up to `max_count` representative points, deterministic, sorted.
    std::vector<double> sample_points(std::size_t max_count) const;

private:
    struct Segment {
        double a;
        double b;
        std::vector<std::uint32_t> owners;
    };
    struct Node {
        double x;
        std::vector<std::uint32_t> owners;
    };
    struct Accumulation {
        double x;
        Side from;
        std::uint32_t owner;
    };

    static double tol(double t) { return kMembershipTol * std::max(1.0, t < 0 ? -t : t); }
    static double density_tol(double t) { return kDensityTol * std::max(1.0, t < 0 ? -t : t); }

    void require_member(double t) const;
    const Segment* segment_at(double t) const;
    std::optional<std::size_t> node_at(double t) const;
    bool structurally_dense(double t, Side side) const;
    std::optional<double> neighbor(double t, Side side) const;

    std::vector<Piece> pieces_;
    std::vector<Segment> segments_;
    std::vector<Node> nodes_;
    std::vector<Accumulation> accumulations_;
    bool kappa_applied_ = false;
};

}  // namespace ghnabla
