#include "ghnabla/timescale.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "ghnabla/error.hpp"

namespace ghnabla {

namespace {

constexpr std::size_t kMaxRealizedPoints = 20'000'000;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool condition, const std::string& message) {
    if (!condition) throw Error(ErrorKind::InvalidArgument, message);
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

TimeScale::TimeScale(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
    require(!pieces_.empty(), "a time scale needs at least one piece");

    std::vector<Node> raw;
    for (std::uint32_t owner = 0; owner < pieces_.size(); ++owner) {
        std::visit(
            Overloaded{
                [&](const ClosedInterval& p) {
                    require(finite(p.a) && finite(p.b) && p.a <= p.b, "interval requires finite a <= b");
                    segments_.push_back({p.a, p.b, {owner}});
                },
                [&](const ExplicitPoints& p) {
                    require(!p.values.empty(), "points() needs at least one value");
                    for (double x : p.values) {
                        require(finite(x), "points() values must be finite");
                        raw.push_back({x, {owner}});
                    }
                },
                [&](const ArithmeticGrid& p) {
                    require(finite(p.start) && finite(p.stop) && finite(p.step), "hgrid parameters must be finite");
                    require(p.step > 0 && p.stop >= p.start, "hgrid requires step > 0 and stop >= start");
                    const double span = (p.stop - p.start) / p.step;
                    require(span < static_cast<double>(kMaxRealizedPoints), "hgrid realizes too many points");
                    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
                    for (std::size_t k = 0; k < n; ++k) {
                        raw.push_back({p.start + static_cast<double>(k) * p.step, {owner}});
                    }
                },
                [&](const GeometricGrid& p) {
                    require(finite(p.q) && p.q > 1.0, "qgrid requires q > 1");
                    require(p.kmin <= p.kmax, "qgrid requires kmin <= kmax");
                    require(static_cast<std::size_t>(p.kmax - p.kmin) < kMaxRealizedPoints,
                            "qgrid realizes too many points");
                    for (int k = p.kmin; k <= p.kmax; ++k) {
                        const double x = std::pow(p.q, k);
                        require(finite(x) && x > 0, "qgrid point overflows");
                        raw.push_back({x, {owner}});
                    }
                },
                [&](const ReciprocalGrid& p) {
                    require(finite(p.scale) && p.scale != 0.0, "recip requires a finite non-zero scale");
                    require(p.count >= 1 && static_cast<std::size_t>(p.count) < kMaxRealizedPoints,
                            "recip requires 1 <= N");
                    for (int n = 1; n <= p.count; ++n) raw.push_back({p.scale / n, {owner}});
                    if (p.accumulates) {
                        raw.push_back({0.0, {owner}});
                        accumulations_.push_back({0.0, p.scale > 0 ? Side::Right : Side::Left, owner});
                    }
                },
            },
            pieces_[owner]);
    }
    require(raw.size() < kMaxRealizedPoints, "time scale realizes too many points");

    std::sort(segments_.begin(), segments_.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
    std::vector<Segment> merged;
    for (auto& s : segments_) {
        if (!merged.empty() && s.a <= merged.back().b + tol(merged.back().b)) {
            merged.back().b = std::max(merged.back().b, s.b);
            merged.back().owners.insert(merged.back().owners.end(), s.owners.begin(), s.owners.end());
        } else {
            merged.push_back(std::move(s));
        }
    }
    segments_ = std::move(merged);

    std::stable_sort(raw.begin(), raw.end(), [](const Node& l, const Node& r) { return l.x < r.x; });
    for (auto& n : raw) {
        if (!nodes_.empty() && n.x - nodes_.back().x <= tol(nodes_.back().x)) {
            auto& owners = nodes_.back().owners;
            for (auto o : n.owners) {
                if (std::find(owners.begin(), owners.end(), o) == owners.end()) owners.push_back(o);
            }
        } else {
            nodes_.push_back(std::move(n));
        }
    }
}

const TimeScale::Segment* TimeScale::segment_at(double t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t + tol(t),
                               [](double v, const Segment& s) { return v < s.a; });
    if (it == segments_.begin()) return nullptr;
    --it;
    return t <= it->b + tol(t) ? &*it : nullptr;
}

std::optional<std::size_t> TimeScale::node_at(double t) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol(t),
                               [](const Node& n, double v) { return n.x < v; });
    if (it != nodes_.end() && std::abs(it->x - t) <= tol(t)) {
        return static_cast<std::size_t>(it - nodes_.begin());
    }
    return std::nullopt;
}

bool TimeScale::contains(double t) const {
    if (!std::isfinite(t)) return false;
    return segment_at(t) != nullptr || node_at(t).has_value();
}

void TimeScale::require_member(double t) const {
    if (!contains(t)) throw Error(ErrorKind::NotInTimeScale, "t = " + std::to_string(t) + " is not in the time scale");
}

double TimeScale::min() const {
    double m = std::numeric_limits<double>::infinity();
    if (!segments_.empty()) m = segments_.front().a;
    if (!nodes_.empty()) m = std::min(m, nodes_.front().x);
    return m;
}

double TimeScale::max() const {
    double m = -std::numeric_limits<double>::infinity();
    if (!segments_.empty()) {
        for (const auto& s : segments_) m = std::max(m, s.b);
    }
    if (!nodes_.empty()) m = std::max(m, nodes_.back().x);
    return m;
}

bool TimeScale::structurally_dense(double t, Side side) const {
    if (const Segment* s = segment_at(t)) {
        if (side == Side::Right && s->b - t > tol(t)) return true;
        if (side == Side::Left && t - s->a > tol(t)) return true;
    }
    return std::any_of(accumulations_.begin(), accumulations_.end(), [&](const Accumulation& acc) {
        return acc.from == side && std::abs(acc.x - t) <= tol(t);
    });
}

std::optional<double> TimeScale::neighbor(double t, Side side) const {
    std::optional<double> best;
    if (side == Side::Right) {
        const double bound = t + tol(t);
        auto n = std::upper_bound(nodes_.begin(), nodes_.end(), bound, [](double v, const Node& nd) { return v < nd.x; });
        if (n != nodes_.end()) best = n->x;
        auto s = std::upper_bound(segments_.begin(), segments_.end(), bound,
                                  [](double v, const Segment& sg) { return v < sg.a; });
        if (s != segments_.end() && (!best || s->a < *best)) best = s->a;
    } else {
        const double bound = t - tol(t);
        auto n = std::lower_bound(nodes_.begin(), nodes_.end(), bound, [](const Node& nd, double v) { return nd.x < v; });
        if (n != nodes_.begin()) best = std::prev(n)->x;
        for (const auto& sg : segments_) {
            if (sg.b < bound && (!best || sg.b > *best)) best = sg.b;
        }
    }
    return best;
}

double TimeScale::sigma(double t) const {
    require_member(t);
    if (structurally_dense(t, Side::Right)) return t;
    return neighbor(t, Side::Right).value_or(t);
}

double TimeScale::rho(double t) const {
    require_member(t);
    if (structurally_dense(t, Side::Left)) return t;
    return neighbor(t, Side::Left).value_or(t);
}

double TimeScale::nu(double t) const { return t - rho(t); }

PointClass TimeScale::classify(double t) const {
    require_member(t);
    auto side_class = [&](Side side) {
        if (structurally_dense(t, side)) return SideClass::Dense;
        const auto nb = neighbor(t, side);
        if (!nb) return SideClass::Boundary;
        return std::abs(*nb - t) < density_tol(t) ? SideClass::Dense : SideClass::Scattered;
    };
    return {side_class(Side::Left), side_class(Side::Right)};
}

TimeScale TimeScale::kappa() const {
    const double m = min();
    if (classify(m).right != SideClass::Scattered) return *this;
    TimeScale out = *this;
    if (auto idx = out.node_at(m)) out.nodes_.erase(out.nodes_.begin() + static_cast<std::ptrdiff_t>(*idx));
    std::erase_if(out.segments_, [&](const Segment& s) { return s.a == m && s.b == m; });
    out.kappa_applied_ = true;
    return out;
}

bool TimeScale::in_kappa(double t) const {
    if (!contains(t)) return false;
    const double m = min();
    if (std::abs(t - m) > tol(t)) return true;
    return classify(m).right != SideClass::Scattered;
}

std::vector<ApproachSubsequence> TimeScale::approach_subsequences(double t, Side side, int count,
                                                                  const ApproachStrategy& strategy) const {
    require_member(t);
    if (count < 1) throw Error(ErrorKind::InvalidArgument, "approach count must be positive");
    const double dir = side == Side::Right ? 1.0 : -1.0;

    if (const Segment* s = segment_at(t)) {
        const double room = side == Side::Right ? s->b - t : t - s->a;
        if (room > tol(t)) {
            if (!(strategy.ratio > 0.0 && strategy.ratio < 1.0) || !(strategy.initial_step > 0.0)) {
                throw Error(ErrorKind::InvalidArgument, "approach strategy needs 0 < ratio < 1 and initial_step > 0");
            }
            const double h0 = std::min(strategy.initial_step * std::max(1.0, std::abs(t)), 0.5 * room);
            ApproachSubsequence sub;
            sub.generator = s->owners.front();
            sub.continuous = true;
            for (int k = 0; k < count; ++k) {
                const double h = h0 * std::pow(strategy.ratio, k);
                if (h <= 1e3 * tol(t)) {
                    throw Error(ErrorKind::InvalidArgument, "probe step underflows the membership tolerance");
                }
                sub.points.push_back(t + dir * h);
            }
            return {sub};
        }
    }

    // Walk the discrete nodes outward from t on the requested side.
    auto walk = [&](auto&& visit) {
        if (side == Side::Right) {
            auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t + tol(t),
                                       [](double v, const Node& nd) { return v < nd.x; });
            for (; it != nodes_.end(); ++it) {
                if (!visit(*it)) break;
            }
        } else {
            auto it = std::lower_bound(nodes_.begin(), nodes_.end(), t - tol(t),
                                       [](const Node& nd, double v) { return nd.x < v; });
            while (it != nodes_.begin()) {
                --it;
                if (!visit(*it)) break;
            }
        }
    };
    auto farthest_first = [](std::vector<double>& pts) { std::reverse(pts.begin(), pts.end()); };

    std::vector<std::uint32_t> accumulating;
    for (const auto& acc : accumulations_) {
        if (acc.from == side && std::abs(acc.x - t) <= tol(t)) accumulating.push_back(acc.owner);
    }
    if (!accumulating.empty()) {
        std::vector<ApproachSubsequence> subs(accumulating.size());
        for (std::size_t g = 0; g < accumulating.size(); ++g) subs[g].generator = accumulating[g];
        std::size_t filled = 0;
        walk([&](const Node& nd) {
            for (std::size_t g = 0; g < accumulating.size(); ++g) {
                auto& pts = subs[g].points;
                if (pts.size() >= static_cast<std::size_t>(count)) continue;
                if (std::find(nd.owners.begin(), nd.owners.end(), accumulating[g]) != nd.owners.end()) {
                    pts.push_back(nd.x);
                    if (pts.size() == static_cast<std::size_t>(count)) ++filled;
                }
            }
            return filled < accumulating.size();
        });
        std::erase_if(subs, [](const ApproachSubsequence& s) { return s.points.empty(); });
        for (auto& s : subs) farthest_first(s.points);
        if (!subs.empty()) return subs;
    }

    const auto nb = neighbor(t, side);
    if (!nb) throw Error(ErrorKind::EmptySide, "no time-scale point on the requested side of t");
    ApproachSubsequence sub;
    if (std::abs(*nb - t) < density_tol(t)) {
        walk([&](const Node& nd) {
            if (sub.points.empty()) sub.generator = nd.owners.front();
            sub.points.push_back(nd.x);
            return sub.points.size() < static_cast<std::size_t>(count);
        });
        farthest_first(sub.points);
        return {sub};
    }
    const auto prov = provenance(*nb);
    sub.generator = prov.empty() ? 0 : prov.front();
    sub.points = {*nb};
    return {sub};
}

std::vector<double> TimeScale::approach_sequence(double t, Side side, int count,
                                                 const ApproachStrategy& strategy) const {
    const auto subs = approach_subsequences(t, side, count, strategy);
    if (subs.size() == 1) return subs.front().points;

    // Draw round-robin from every generator so each one is represented.
    std::vector<double> merged;
    std::vector<std::size_t> taken(subs.size(), 0);
    while (merged.size() < static_cast<std::size_t>(count)) {
        bool progressed = false;
        for (std::size_t g = 0; g < subs.size() && merged.size() < static_cast<std::size_t>(count); ++g) {
            const auto& pts = subs[g].points;
            if (taken[g] < pts.size()) {
                merged.push_back(pts[pts.size() - 1 - taken[g]]);
                ++taken[g];
                progressed = true;
            }
        }
        if (!progressed) break;
    }
    std::sort(merged.begin(), merged.end(),
              [&](double l, double r) { return std::abs(l - t) > std::abs(r - t); });
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return merged;
}

std::vector<std::size_t> TimeScale::provenance(double t) const {
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (const auto* iv = std::get_if<ClosedInterval>(&pieces_[i])) {
            if (t >= iv->a - tol(t) && t <= iv->b + tol(t)) out.insert(i);
        }
    }
    if (auto idx = node_at(t)) {
        for (auto o : nodes_[*idx].owners) out.insert(o);
    }
    return {out.begin(), out.end()};
}

std::vector<double> TimeScale::discrete_points() const {
    std::vector<double> out;
    out.reserve(nodes_.size());
    for (const auto& n : nodes_) out.push_back(n.x);
    return out;
}

std::vector<double> TimeScale::sample_points(std::size_t max_count) const {
    std::vector<double> candidates;
    for (const auto& s : segments_) {
        for (int k = 0; k <= 8; ++k) candidates.push_back(s.a + (s.b - s.a) * k / 8.0);
    }
    if (nodes_.size() <= max_count) {
        for (const auto& n : nodes_) candidates.push_back(n.x);
    } else {
        const std::size_t stride = nodes_.size() / max_count + 1;
        for (std::size_t i = 0; i < nodes_.size(); i += stride) candidates.push_back(nodes_[i].x);
        candidates.push_back(nodes_.back().x);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    if (candidates.size() <= max_count || max_count == 0) return candidates;
    std::vector<double> out;
    for (std::size_t i = 0; i < max_count; ++i) {
        out.push_back(candidates[i * (candidates.size() - 1) / (max_count - 1 == 0 ? 1 : max_count - 1)]);
    }
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace ghnabla
