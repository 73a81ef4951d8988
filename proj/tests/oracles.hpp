#pragma once

// Test-side oracles, kept independent of the library code paths they check.

#include "fts/comparison.hpp"
#include "fts/gain_function.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

/// Plain composite Simpson on a fixed grid; no adaptivity shared with the
/// library quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    double acc = 0.0;
    const double h = (b - a) / panels;
    for (int i = 0; i < panels; ++i) {
        const double x0 = a + i * h;
        acc += h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h));
    }
    return acc;
}

/// Closed form of the power-law comparison solution:
/// (v0^{1-a} - (1-a) int c)^{1/(1-a)}, clamped at zero.
inline double power_comparison_closed_form(double v0, double alpha, double spent_gain) {
    const double head = std::pow(v0, 1.0 - alpha) - (1.0 - alpha) * spent_gain;
    if (head <= 0.0) return 0.0;
    return std::pow(head, 1.0 / (1.0 - alpha));
}

/// Fine-step explicit Euler for v' = -c(t) g(v) - slack(t), clamped at zero,
/// with steps aligned to the breakpoints of c and slack so the scheme stays on
/// the safe (under-shooting) side within every smooth piece.
struct EulerPath {
    std::vector<double> times;
    std::vector<double> values;
};

inline EulerPath integrate_scalar_decay(const std::function<double(double)>& c,
                                        const std::function<double(double, double)>& rhs_extra,
                                        const std::function<double(double)>& g, double t0,
                                        double v0, double t_end,
                                        const std::vector<double>& breakpoints, double h_max) {
    std::vector<double> knots{t0, t_end};
    for (double b : breakpoints) {
        if (b > t0 && b < t_end) knots.push_back(b);
    }
    std::sort(knots.begin(), knots.end());

    EulerPath path;
    double v = v0;
    path.times.push_back(t0);
    path.values.push_back(v);
    for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const double a = knots[k];
        const double b = knots[k + 1];
        const int steps = std::max(1, static_cast<int>(std::ceil((b - a) / h_max)));
        const double h = (b - a) / steps;
        for (int i = 0; i < steps; ++i) {
            const double t = a + i * h;
            v -= h * (c(t) * g(v) + rhs_extra(t, v));
            if (v < 0.0) v = 0.0;
            path.times.push_back(t + h);
            path.values.push_back(v);
        }
    }
    return path;
}

/// Random piecewise-constant gain with values in [lo, hi] over [0, span].
inline fts::GainFunction random_step_gain(std::mt19937_64& rng, double span, double lo, double hi,
                                          int max_pieces = 6) {
    std::uniform_int_distribution<int> n_pieces(1, max_pieces);
    std::uniform_real_distribution<double> value(lo, hi);
    const int m = n_pieces(rng);
    std::vector<double> breaks{0.0};
    std::uniform_real_distribution<double> cut(0.05 * span, 0.95 * span);
    std::vector<double> inner;
    for (int i = 0; i < m - 1; ++i) inner.push_back(cut(rng));
    std::sort(inner.begin(), inner.end());
    for (double x : inner) {
        if (x > breaks.back() + 1e-6) breaks.push_back(x);
    }
    breaks.push_back(span);
    std::vector<double> values;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) values.push_back(value(rng));
    return fts::GainFunction::step(std::move(breaks), std::move(values));
}

} // namespace oracles
