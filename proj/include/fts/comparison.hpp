#pragma once

#include "fts/gain_function.hpp"
#include "fts/types.hpp"

#include <optional>
#include <vector>

namespace fts {

/// Scalar nonlinearity g with g(0) = 0, strictly increasing on (0, inf) and an
/// integrable reciprocal near 0: G(b) = int_0^b dv/g(v) finite for every b > 0.
/// That barrier integral is what turns a decrease rate into a settling time.
class ComparisonNonlinearity {
public:
    enum class Kind { power, table };

    /// v^alpha with alpha in (0, 1). Barrier integral is closed-form.
    static ComparisonNonlinearity power(double alpha);

    /// Monotone samples (v[i], g[i]) with v[0] = 0, g[0] = 0, interpolated
    /// linearly and continued with the last slope beyond v.back(). The pair
    /// (coeff, exponent) declares a lower bound g(v) >= coeff * v^exponent near
    /// zero (exponent < 1); the singular part of the barrier integral is
    /// regularized through it.
    static ComparisonNonlinearity table(std::vector<double> v, std::vector<double> g,
                                        double coeff, double exponent);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double zero_bound_coeff() const noexcept { return coeff_; }
    [[nodiscard]] double zero_bound_exponent() const noexcept { return exponent_; }

    [[nodiscard]] double operator()(double v) const;

private:
    ComparisonNonlinearity() = default;

    Kind kind_ = Kind::power;
    double alpha_ = 0.5;
    double coeff_ = 1.0;
    double exponent_ = 0.5;
    std::vector<double> v_;
    std::vector<double> g_;
};

/// The pair (c, g) driving the comparison dynamics phi' = -c(t) g(phi).
struct RateSpec {
    GainFunction c = GainFunction::constant(1.0);
    ComparisonNonlinearity g = ComparisonNonlinearity::power(0.5);
};

/// Settling-time certificate: the first T with int_{t0}^{T} c = G(v0), or
/// "unbounded" when the available tail mass of c cannot cover G(v0).
struct SettlingCertificate {
    double t0 = 0.0;
    double v0 = 0.0;
    double barrier = 0.0;    // G(v0)
    double tail_mass = 0.0;  // int_{t0}^inf c, +inf when divergent
    std::optional<double> t_bound;

    [[nodiscard]] bool bounded() const noexcept { return t_bound.has_value(); }
};

/// A scalar signal sampled on an ordered time grid.
struct SampledSignal {
    std::vector<double> times;
    std::vector<double> values;
};

/// Outcome of a sampled inequality check; `violation` carries the first
/// offending sample when the check fails.
struct DominationCheck {
    bool pass = true;
    double worst_margin = 0.0;
    std::optional<double> violation_time;
};

/// G(v) = int_0^v ds/g(s). Closed form for power-law g, regularized quadrature
/// otherwise. Throws Error(divergent_integral) when the integral does not
/// converge, i.e. g violates its contract.
double barrier_integral(const ComparisonNonlinearity& g, double v);

/// Quadrature route for G(v), independent of the closed form even for
/// power-law g. Kept public so the two routes can be compared.
double barrier_integral_quadrature(const ComparisonNonlinearity& g, double v);

/// Inverse of the barrier integral: the unique v >= 0 with G(v) = y.
double barrier_inverse(const ComparisonNonlinearity& g, double y, double v_hint);

/// int_{t0}^{t1} c. Exact for every preset; t1 may be +inf.
double cumulative_gain(const GainFunction& c, double t0, double t1);

/// Settling bound of Proposition-style comparison dynamics: smallest T >= t0
/// with cumulative_gain(c, t0, T) = barrier_integral(g, v0). Unbounded (not an
/// error) when the tail mass of c does not exceed the barrier.
SettlingCertificate settling_time_bound(const RateSpec& rate, double t0, double v0);

/// phi(t) solving phi' = -c(t) g(phi), phi(t0) = v0, with phi clamped at 0
/// from the settling time on. Power-law g dispatches to the closed form.
double comparison_solution(const RateSpec& rate, double t0, double v0, double t);

/// Same solution through the general route: quadrature barrier + numeric
/// inversion, no closed forms. This is the path the closed form is checked
/// against.
double comparison_solution_general(const RateSpec& rate, double t0, double v0, double t);

/// Power-law Gronwall check: w(t)^{1-alpha} <= w(t0)^{1-alpha}
/// - (1-alpha) int_{t0}^{t} c at every sample, within tol. The right side is
/// meaningful while it stays nonnegative; callers sample inside that window.
DominationCheck check_gronwall_power(const SampledSignal& w, const GainFunction& c,
                                     double alpha, double tol);

/// Domination check against the comparison solution: w(t_i) <= phi(t_i) + tol,
/// with phi started from w's first sample.
DominationCheck check_comparison(const SampledSignal& w, const RateSpec& rate, double tol);

} // namespace fts
