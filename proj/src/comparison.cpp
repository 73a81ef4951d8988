#include "fts/comparison.hpp"

#include "fts/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fts {

ComparisonNonlinearity ComparisonNonlinearity::power(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        raise(ErrorCode::invalid_argument, "ComparisonNonlinearity::power: alpha must lie in (0,1)");
    }
    ComparisonNonlinearity g;
    g.kind_ = Kind::power;
    g.alpha_ = alpha;
    g.coeff_ = 1.0;
    g.exponent_ = alpha;
    return g;
}

ComparisonNonlinearity ComparisonNonlinearity::table(std::vector<double> v, std::vector<double> g,
                                                     double coeff, double exponent) {
    if (v.size() != g.size() || v.size() < 2) {
        raise(ErrorCode::invalid_argument, "ComparisonNonlinearity::table: need matching arrays with >= 2 samples");
    }
    if (v.front() != 0.0 || g.front() != 0.0) {
        raise(ErrorCode::invalid_argument, "ComparisonNonlinearity::table: samples must start at (0, 0)");
    }
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] > v[i - 1]) || !(g[i] > g[i - 1])) {
            raise(ErrorCode::invalid_argument,
                  "ComparisonNonlinearity::table: samples must be strictly increasing in both coordinates");
        }
    }
    if (!(coeff > 0.0) || !(exponent < 1.0) || !(exponent > 0.0)) {
        raise(ErrorCode::invalid_argument,
              "ComparisonNonlinearity::table: zero bound needs coeff > 0 and exponent in (0,1)");
    }
    if (coeff * std::pow(v[1], exponent) > g[1] * (1.0 + 1e-9)) {
        raise(ErrorCode::invalid_argument,
              "ComparisonNonlinearity::table: declared zero bound exceeds the first sample");
    }
    ComparisonNonlinearity out;
    out.kind_ = Kind::table;
    out.coeff_ = coeff;
    out.exponent_ = exponent;
    out.v_ = std::move(v);
    out.g_ = std::move(g);
    return out;
}

double ComparisonNonlinearity::operator()(double v) const {
    if (v <= 0.0) return 0.0;
    if (kind_ == Kind::power) {
        return std::pow(v, alpha_);
    }
    if (v < v_[1]) {
        // The first segment follows the declared exponent; a linear segment
        // through the origin would make 1/g non-integrable.
        return g_[1] * std::pow(v / v_[1], exponent_);
    }
    if (v >= v_.back()) {
        const std::size_t m = v_.size();
        const double slope = (g_[m - 1] - g_[m - 2]) / (v_[m - 1] - v_[m - 2]);
        return g_.back() + slope * (v - v_.back());
    }
    const auto it = std::upper_bound(v_.begin(), v_.end(), v);
    const auto hi = static_cast<std::size_t>(it - v_.begin());
    const double w = (v - v_[hi - 1]) / (v_[hi] - v_[hi - 1]);
    return g_[hi - 1] + w * (g_[hi] - g_[hi - 1]);
}

double barrier_integral_quadrature(const ComparisonNonlinearity& g, double v) {
    if (v < 0.0) {
        raise(ErrorCode::invalid_argument, "barrier_integral: v must be >= 0");
    }
    if (v == 0.0) return 0.0;

    // [0, v/2] carries the singularity. With g(v) >= m v^beta near 0, the
    // substitution u = s^{1-beta} bounds the transformed integrand, so the
    // adaptive rule converges iff 1/g is actually integrable.
    const double beta = g.zero_bound_exponent();
    const double split = 0.5 * v;
    const double one_minus = 1.0 - beta;
    const auto transformed = [&](double u) {
        const double s = std::pow(u, 1.0 / one_minus);
        const double gs = g(s);
        if (gs <= 0.0) return 0.0; // measure-zero left edge; limit is finite by the declared bound
        return std::pow(u, beta / one_minus) / (one_minus * gs);
    };
    QuadratureOptions opts;
    opts.abs_tol = 1e-13 * std::max(1.0, v);
    opts.rel_tol = 1e-12;
    const double singular_part = integrate_adaptive(transformed, 0.0, std::pow(split, one_minus), opts);
    const double regular_part =
        integrate_adaptive([&](double s) { return 1.0 / g(s); }, split, v, opts);
    return singular_part + regular_part;
}

double barrier_integral(const ComparisonNonlinearity& g, double v) {
    if (v < 0.0) {
        raise(ErrorCode::invalid_argument, "barrier_integral: v must be >= 0");
    }
    if (v == 0.0) return 0.0;
    if (g.kind() == ComparisonNonlinearity::Kind::power) {
        const double a = g.alpha();
        return std::pow(v, 1.0 - a) / (1.0 - a);
    }
    return barrier_integral_quadrature(g, v);
}

double barrier_inverse(const ComparisonNonlinearity& g, double y, double v_hint) {
    if (y <= 0.0) return 0.0;
    if (g.kind() == ComparisonNonlinearity::Kind::power) {
        const double a = g.alpha();
        return std::pow((1.0 - a) * y, 1.0 / (1.0 - a));
    }
    // Bracket above the root, then bisect; G is strictly increasing.
    double hi = std::max(v_hint, 1e-12);
    while (barrier_integral(g, hi) < y) {
        hi *= 2.0;
        if (!std::isfinite(hi)) {
            raise(ErrorCode::divergent_integral, "barrier_inverse: no finite bracket");
        }
    }
    double lo = 0.0;
    for (int i = 0; i < 120 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (barrier_integral(g, mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double cumulative_gain(const GainFunction& c, double t0, double t1) {
    return c.integral(t0, t1);
}

SettlingCertificate settling_time_bound(const RateSpec& rate, double t0, double v0) {
    if (!(v0 >= 0.0)) {
        raise(ErrorCode::invalid_argument, "settling_time_bound: v0 must be >= 0");
    }
    SettlingCertificate cert;
    cert.t0 = t0;
    cert.v0 = v0;
    cert.barrier = barrier_integral(rate.g, v0);
    cert.tail_mass = rate.c.tail_mass(t0);
    if (v0 == 0.0) {
        cert.t_bound = t0;
        return cert;
    }
    if (!(cert.tail_mass > cert.barrier)) {
        return cert; // unbounded: the gain cannot absorb the barrier
    }

    // Bracket by doubling, then bisect keeping the left bracket strictly
    // infeasible; that returns the infimum-side root even across intervals
    // where c vanishes and the cumulative gain is flat.
    double width = 1.0;
    int doublings = 0;
    while (cumulative_gain(rate.c, t0, t0 + width) < cert.barrier) {
        width *= 2.0;
        if (++doublings > 400) {
            raise(ErrorCode::invalid_argument, "settling_time_bound: bracketing failed despite tail mass");
        }
    }
    double lo = t0;
    double hi = t0 + width;
    while ((hi - lo) > 1e-13 * std::max(1.0, std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (cumulative_gain(rate.c, t0, mid) >= cert.barrier) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    cert.t_bound = hi;
    return cert;
}

double comparison_solution(const RateSpec& rate, double t0, double v0, double t) {
    if (!(t >= t0)) {
        raise(ErrorCode::invalid_argument, "comparison_solution: t must be >= t0");
    }
    if (v0 <= 0.0) return 0.0;
    const double spent = cumulative_gain(rate.c, t0, t);
    if (rate.g.kind() == ComparisonNonlinearity::Kind::power) {
        const double a = rate.g.alpha();
        const double head = std::pow(v0, 1.0 - a) - (1.0 - a) * spent;
        if (head <= 0.0) return 0.0;
        return std::pow(head, 1.0 / (1.0 - a));
    }
    const double remaining = barrier_integral(rate.g, v0) - spent;
    if (remaining <= 0.0) return 0.0;
    return barrier_inverse(rate.g, remaining, v0);
}

double comparison_solution_general(const RateSpec& rate, double t0, double v0, double t) {
    if (!(t >= t0)) {
        raise(ErrorCode::invalid_argument, "comparison_solution: t must be >= t0");
    }
    if (v0 <= 0.0) return 0.0;
    const double remaining = barrier_integral_quadrature(rate.g, v0) - cumulative_gain(rate.c, t0, t);
    if (remaining <= 0.0) return 0.0;
    if (rate.g.kind() == ComparisonNonlinearity::Kind::power) {
        // Invert the quadrature barrier numerically instead of through the
        // closed form, so this route stays independent of it.
        double lo = 0.0;
        double hi = v0;
        for (int i = 0; i < 120 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++i) {
            const double mid = 0.5 * (lo + hi);
            if (barrier_integral_quadrature(rate.g, mid) < remaining) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    return barrier_inverse(rate.g, remaining, v0);
}

namespace {

void check_samples(const SampledSignal& w, bool require_nonnegative) {
    if (w.times.size() != w.values.size() || w.times.empty()) {
        raise(ErrorCode::malformed_samples, "sampled signal: times/values size mismatch or empty");
    }
    for (std::size_t i = 1; i < w.times.size(); ++i) {
        if (!(w.times[i] > w.times[i - 1])) {
            raise(ErrorCode::malformed_samples, "sampled signal: times must be strictly increasing");
        }
    }
    if (require_nonnegative) {
        for (double v : w.values) {
            if (!(v >= 0.0)) {
                raise(ErrorCode::malformed_samples, "sampled signal: values must be >= 0");
            }
        }
    }
}

} // namespace

DominationCheck check_gronwall_power(const SampledSignal& w, const GainFunction& c,
                                     double alpha, double tol) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        raise(ErrorCode::invalid_argument, "check_gronwall_power: alpha must lie in (0,1)");
    }
    check_samples(w, true);
    DominationCheck out;
    out.worst_margin = -kInfinity;
    const double one_minus = 1.0 - alpha;
    const double head = std::pow(w.values.front(), one_minus);
    const double t0 = w.times.front();
    for (std::size_t i = 0; i < w.times.size(); ++i) {
        const double lhs = std::pow(w.values[i], one_minus);
        const double rhs = head - one_minus * cumulative_gain(c, t0, w.times[i]);
        const double margin = lhs - rhs;
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
        }
        if (margin > tol && out.pass) {
            out.pass = false;
            out.violation_time = w.times[i];
        }
    }
    return out;
}

DominationCheck check_comparison(const SampledSignal& w, const RateSpec& rate, double tol) {
    check_samples(w, true);
    DominationCheck out;
    out.worst_margin = -kInfinity;
    const double t0 = w.times.front();
    const double v0 = w.values.front();
    for (std::size_t i = 0; i < w.times.size(); ++i) {
        const double phi = comparison_solution(rate, t0, v0, w.times[i]);
        const double margin = w.values[i] - phi;
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
        }
        if (margin > tol && out.pass) {
            out.pass = false;
            out.violation_time = w.times[i];
        }
    }
    return out;
}

} // namespace fts
