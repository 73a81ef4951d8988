#pragma once

#include "fts/convex_set.hpp"
#include "fts/gain_function.hpp"

#include <functional>

namespace fts {

/// Set-valued right-hand side F(t, x) with compact convex values and a linear
/// growth envelope |F(t,x)| <= mu(t)(1 + |x|). Measurability in t and upper
/// semicontinuity in x are caller contracts; the growth and equilibrium
/// conditions are checkable pointwise.
struct CaratheodoryMap {
    Eigen::Index dim = 0;
    std::function<ConvexSet(double, const Vector&)> evaluate;
    GainFunction growth = GainFunction::constant(1.0); // mu(t)
    bool equilibrium = true;                           // asserts 0 in F(t, 0)

    [[nodiscard]] ConvexSet operator()(double t, const Vector& x) const { return evaluate(t, x); }
};

/// |F(t,x)| - mu(t)(1+|x|); positive values witness a growth-bound violation.
double growth_residual(const CaratheodoryMap& map, double t, const Vector& x);

/// Distance of the origin to F(t, 0).
double equilibrium_residual(const CaratheodoryMap& map, double t);

} // namespace fts
