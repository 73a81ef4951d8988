#pragma once

#include "fts/types.hpp"

#include <functional>
#include <vector>

namespace fts {

/// Nondecreasing scalar function with optional declared jump metadata. The
/// evaluator is the single source of values; jumps record exact one-sided
/// limits where the caller knows them.
struct MonotoneScalarFunction {
    struct Jump {
        double x = 0.0;
        double left = 0.0;
        double right = 0.0;
    };

    std::function<double(double)> eval;
    std::vector<Jump> jumps; // sorted by x

    [[nodiscard]] double operator()(double x) const { return eval(x); }
};

MonotoneScalarFunction make_monotone(std::function<double(double)> eval,
                                     std::vector<MonotoneScalarFunction::Jump> jumps = {});

/// Checks f(x1) <= f(x2) on sampled pairs over [lo, hi] and the jump ordering
/// left <= value <= right; throws Error(invalid_argument) on violation.
void validate_monotone(const MonotoneScalarFunction& f, double lo, double hi, int samples = 257);

/// Filippov regularization at x: the interval [f(x-), f(x+)] between one-sided
/// limits. Declared jumps are taken verbatim; otherwise the limits are
/// estimated from geometric-shrink sampling with extrapolation.
Interval filippov_interval(const MonotoneScalarFunction& f, double x);

} // namespace fts
