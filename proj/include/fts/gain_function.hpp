#pragma once

#include "fts/types.hpp"

#include <vector>

namespace fts {

/// Nonnegative, locally integrable scalar function on [0, inf), available as a
/// small set of presets. The presets are closed under exact integration, so
/// cumulative integrals and tail masses never go through generic quadrature.
class GainFunction {
public:
    enum class Kind { power, exponential, step, table };

    /// scale * t^alpha, alpha > -1. alpha = 0 gives constants.
    static GainFunction power(double alpha, double scale = 1.0);
    static GainFunction constant(double value) { return power(0.0, value); }
    /// delta * exp(rate * t).
    static GainFunction exponential(double delta, double rate);
    /// Piecewise constant: values[i] on [breaks[i], breaks[i+1]), zero outside
    /// [breaks.front(), breaks.back()). breaks has one more entry than values.
    static GainFunction step(std::vector<double> breaks, std::vector<double> values);
    /// Piecewise linear through (t[i], v[i]) on [t.front(), t.back()], zero outside.
    static GainFunction table(std::vector<double> t, std::vector<double> v);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double scale() const noexcept { return scale_; }
    [[nodiscard]] double rate() const noexcept { return rate_; }
    [[nodiscard]] const std::vector<double>& abscissae() const noexcept { return t_; }
    [[nodiscard]] const std::vector<double>& ordinates() const noexcept { return v_; }

    [[nodiscard]] double operator()(double t) const;

    /// Exact integral over [t0, t1], t0 <= t1. t1 may be +inf.
    [[nodiscard]] double integral(double t0, double t1) const;

    /// Integral over [t0, inf); +inf when the tail diverges.
    [[nodiscard]] double tail_mass(double t0) const;

private:
    GainFunction() = default;

    Kind kind_ = Kind::power;
    double alpha_ = 0.0;
    double scale_ = 1.0;
    double rate_ = 0.0;
    std::vector<double> t_;
    std::vector<double> v_;
};

} // namespace fts
