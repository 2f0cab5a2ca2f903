#pragma once

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "ghnabla/fuzzy.hpp"
#include "ghnabla/nabla.hpp"
#include "ghnabla/timescale.hpp"

namespace testing {

using namespace ghnabla;

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

// Independent validator of the fuzzy-number invariants, exact comparisons.
inline bool valid_levels(const FuzzyNumber& u) {
    const auto lo = u.lower();
    const auto hi = u.upper();
    for (std::size_t k = 0; k < lo.size(); ++k) {
        if (!(lo[k] <= hi[k])) return false;
        if (k > 0 && (lo[k] < lo[k - 1] || hi[k] > hi[k - 1])) return false;
    }
    return true;
}

inline double level_gap(const FuzzyNumber& u, const FuzzyNumber& v) { return hausdorff(u, v); }

inline FuzzyNumber random_triangular(double lo, double hi, int K) {
    double x[3] = {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)};
    std::sort(x, x + 3);
    return triangular(x[0], x[1], x[2], K);
}

// Random fuzzy number whose levels are multiples of 1/8, so sums and
// differences are exact in floating point.
inline FuzzyNumber random_dyadic(int K) {
    const double step = 0.125;
    std::vector<double> lower(K + 1), upper(K + 1);
    double core = uniform_int(-80, 80) * step;
    double l = core, u = core + uniform_int(0, 8) * step;
    lower[K] = l;
    upper[K] = u;
    for (int k = K - 1; k >= 0; --k) {
        l -= uniform_int(0, 4) * step;
        u += uniform_int(0, 4) * step;
        lower[k] = l;
        upper[k] = u;
    }
    return FuzzyNumber(lower, upper);
}

// Polynomial with random coefficients in [-r, r].
struct Poly {
    std::vector<double> c;
    double operator()(double t) const {
        double v = 0.0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * t + c[i];
        return v;
    }
};

inline Poly random_poly(int degree, double r) {
    Poly p;
    for (int i = 0; i <= degree; ++i) p.c.push_back(uniform(-r, r));
    return p;
}

// f(t) = (m(t) - l s(t), m(t), m(t) + r s(t)) with s >= 0. Both spreads move
// together, so the gH-difference of any two values exists.
inline FuzzyFunction spread_function(Poly m, Poly s, double l, double r, int K) {
    return {[=](double t) {
                const double w = std::abs(s(t));
                const double c = m(t);
                return triangular(c - l * w, c, c + r * w, K);
            },
            K};
}

}  // namespace testing
