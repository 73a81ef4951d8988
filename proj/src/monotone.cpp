#include "fts/monotone.hpp"

#include <algorithm>
#include <cmath>

namespace fts {

MonotoneScalarFunction make_monotone(std::function<double(double)> eval,
                                     std::vector<MonotoneScalarFunction::Jump> jumps) {
    if (!eval) {
        raise(ErrorCode::invalid_argument, "MonotoneScalarFunction: evaluator must be set");
    }
    std::sort(jumps.begin(), jumps.end(),
              [](const auto& a, const auto& b) { return a.x < b.x; });
    for (const auto& j : jumps) {
        if (!(j.left <= j.right)) {
            raise(ErrorCode::invalid_argument, "MonotoneScalarFunction: jump limits must satisfy left <= right");
        }
    }
    return MonotoneScalarFunction{std::move(eval), std::move(jumps)};
}

void validate_monotone(const MonotoneScalarFunction& f, double lo, double hi, int samples) {
    if (!(lo < hi) || samples < 2) {
        raise(ErrorCode::invalid_argument, "validate_monotone: bad interval or sample count");
    }
    double prev = f(lo);
    for (int i = 1; i < samples; ++i) {
        const double x = lo + (hi - lo) * i / (samples - 1);
        const double cur = f(x);
        if (cur < prev - 1e-12 * std::max(1.0, std::abs(prev))) {
            raise(ErrorCode::invalid_argument, "validate_monotone: function decreases between samples");
        }
        prev = cur;
    }
    for (const auto& j : f.jumps) {
        if (j.x < lo || j.x > hi) continue;
        const double v = f(j.x);
        if (!(j.left <= v + 1e-12) || !(v <= j.right + 1e-12)) {
            raise(ErrorCode::invalid_argument, "validate_monotone: value escapes its declared jump bracket");
        }
    }
}

namespace {

/// One-sided limit from samples at geometrically shrinking offsets. For a
/// nondecreasing f the sequence is monotone toward the limit; once the
/// increments stabilize geometrically, extrapolate the remaining gap.
double shrink_limit(const MonotoneScalarFunction& f, double x, double side) {
    const double scale = std::max(1.0, std::abs(x));
    double prev2 = 0.0, prev1 = 0.0, cur = 0.0;
    int have = 0;
    for (int k = 3; k <= 12; ++k) {
        const double h = std::pow(10.0, -k) * scale;
        prev2 = prev1;
        prev1 = cur;
        cur = f(x + side * h);
        ++have;
    }
    if (have < 3) return cur;
    const double d1 = cur - prev1;
    const double d2 = prev1 - prev2;
    if (std::abs(d1) <= 1e-13 * std::max(1.0, std::abs(cur))) {
        return cur; // already flat at the smallest offsets
    }
    double r = d2 != 0.0 ? d1 / d2 : 0.0;
    r = std::clamp(r, 0.0, 0.9);
    return cur + d1 * r / (1.0 - r);
}

} // namespace

Interval filippov_interval(const MonotoneScalarFunction& f, double x) {
    for (const auto& j : f.jumps) {
        if (j.x == x) return Interval{j.left, j.right};
    }
    double lo = shrink_limit(f, x, -1.0);
    double hi = shrink_limit(f, x, +1.0);
    const double fx = f(x);
    lo = std::min(lo, fx);
    hi = std::max(hi, fx);
    return Interval{lo, hi};
}

} // namespace fts
