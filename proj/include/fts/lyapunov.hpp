#pragma once

#include "fts/gain_function.hpp"
#include "fts/types.hpp"

#include <functional>
#include <optional>

namespace fts {

struct LyapunovGradient {
    double dt = 0.0;
    Vector dx;
};

/// Scalar certificate candidate V(t, x) >= 0. The gradient, when supplied, is
/// trusted away from x = 0 and makes every derivative estimate exact; without
/// it the contingent surrogates kick in.
struct LyapunovCandidate {
    std::function<double(double, const Vector&)> value;
    std::function<LyapunovGradient(double, const Vector&)> gradient; // optional, valid for x != 0
    bool positive_definite = false;
    bool lipschitz = false;
    bool radially_unbounded = false;
    std::function<double(double)> radial_lower_bound; // optional p with V(t,x) >= p(|x|)
    double domain_radius = 0.0;                       // 0 = whole space

    [[nodiscard]] double operator()(double t, const Vector& x) const { return value(t, x); }
    [[nodiscard]] bool has_gradient() const noexcept { return static_cast<bool>(gradient); }
};

/// Decrease rate W(t, x) used in trajectory verification, with an optional
/// linear growth envelope |W(t,x)| <= k(t)(1+|x|).
struct RateFunctionW {
    std::function<double(double, const Vector&)> value;
    std::optional<GainFunction> envelope;

    [[nodiscard]] double operator()(double t, const Vector& x) const { return value(t, x); }
};

/// |W(t,x)| - k(t)(1+|x|) when the envelope is present, else -inf.
double rate_growth_residual(const RateFunctionW& w, double t, const Vector& x);

/// Samples V(t, 0) over the given times and V positivity / radial bound over
/// the given states; throws Error(invalid_argument) on a violated invariant.
void validate_lyapunov(const LyapunovCandidate& v, const std::vector<double>& times,
                       const std::vector<Vector>& states, double tol = 1e-9);

} // namespace fts
