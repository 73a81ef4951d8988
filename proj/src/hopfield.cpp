#include "fts/hopfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fts {

namespace {

/// exp(-r^{alpha-1} + k ln r), stable for r -> 0 where the plain product
/// underflows against an overflowing power.
double exp_power_term(double r, double alpha, double k) {
    if (r <= 0.0) return 0.0;
    const double e = -std::pow(r, alpha - 1.0) + k * std::log(r);
    return e < -700.0 ? 0.0 : std::exp(e);
}

double shape_value(double r, double alpha) {
    // |x|(|x| - exp(-|x|^{alpha-1})) as a function of r = |x|.
    if (r <= 0.0) return 0.0;
    return r * r - exp_power_term(r, alpha, 1.0);
}

double shape_slope_over_r(double r, double alpha) {
    // (d/dr shape) / r = 2 - (E/r + (1-alpha) r^{alpha-2} E) with
    // E = exp(-r^{alpha-1}); the gradient of the shape is this times x.
    return 2.0 - exp_power_term(r, alpha, -1.0) - (1.0 - alpha) * exp_power_term(r, alpha, -2.0 + alpha);
}

LyapunovCandidate make_lyapunov(double alpha) {
    LyapunovCandidate v;
    v.value = [alpha](double t, const Vector& x) {
        return std::exp(-t) * shape_value(x.norm(), alpha);
    };
    v.gradient = [alpha](double t, const Vector& x) {
        const double c = std::exp(-t);
        const double r = x.norm();
        LyapunovGradient g;
        g.dt = -c * shape_value(r, alpha);
        g.dx = c * shape_slope_over_r(r, alpha) * x;
        return g;
    };
    v.positive_definite = true;
    v.lipschitz = true;
    return v;
}

Vector activation_values(const HopfieldSpec& spec, double t, const Vector& x) {
    (void)t;
    Vector g(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) g[i] = spec.activations[static_cast<std::size_t>(i)](x[i]);
    return g;
}

Vector damping_values(const HopfieldSpec& spec, double t, const Vector& x) {
    Vector h(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) h[i] = spec.damping[static_cast<std::size_t>(i)](t, x[i]);
    return h;
}

Box activation_box(const HopfieldSpec& spec, const Vector& x) {
    Vector lo(spec.n), hi(spec.n);
    for (Eigen::Index i = 0; i < spec.n; ++i) {
        const Interval iv = filippov_interval(spec.activations[static_cast<std::size_t>(i)], x[i]);
        lo[i] = iv.lo;
        hi[i] = iv.hi;
    }
    return Box{std::move(lo), std::move(hi)};
}

[[noreturn]] void fail_assumption(const char* which, double t, const Vector& x) {
    std::ostringstream msg;
    msg << "standing inequality '" << which << "' fails at t=" << t << ", x=[" << x.transpose() << "]";
    raise(ErrorCode::assumption_violation, msg.str());
}

void validate_spec(const HopfieldSpec& spec) {
    const double tol = 1e-9;
    std::vector<double> times;
    for (int i = 0; i < 9; ++i) times.push_back(spec.t_check * i / 8.0);

    const Vector zero = Vector::Zero(spec.n);
    for (double t : times) {
        const Vector h0 = damping_values(spec, t, zero);
        if (h0.norm() > tol) fail_assumption("h(t,0) = 0", t, zero);
        const Vector i_t = spec.input(t);
        if (i_t.norm() > tol) fail_assumption("I(t) = 0", t, zero);
        const Vector g0 = activation_values(spec, t, zero);
        if ((spec.coupling(t) * g0 + i_t).norm() > tol) {
            fail_assumption("B(t) g(t,0) = -I(t)", t, zero);
        }
        const double gap = spec.a(t) - spec.b(t) * std::pow(spec.rho, 2.0 * (1.0 - spec.alpha));
        if (gap < spec.delta - tol) fail_assumption("a(t) - b(t) rho^{2(1-alpha)} >= delta", t, zero);
    }

    const std::vector<Vector> dirs = sphere_directions(spec.n, 16 * static_cast<int>(spec.n), 1);
    for (double t : times) {
        const Matrix b_t = spec.coupling(t);
        for (int shell = 1; shell <= 8; ++shell) {
            const double r = spec.rho * (1.0 - 1e-9) * shell / 8.0;
            for (const Vector& d : dirs) {
                const Vector x = r * d;
                const double xh = x.dot(damping_values(spec, t, x));
                if (spec.a(t) * std::pow(r, 2.0 * spec.alpha) > xh + tol) {
                    fail_assumption("a(t)|x|^{2 alpha} <= <x, h(t,x)>", t, x);
                }
                const double xbg = x.dot(b_t * activation_values(spec, t, x));
                if (xbg > spec.b(t) * r * r + tol) {
                    fail_assumption("<x, B(t) g(t,x)> <= b(t)|x|^2", t, x);
                }
            }
        }
    }
}

} // namespace

double HopfieldSystem::tail_mass(double t0) const {
    return spec.delta / (1.0 - spec.alpha) * std::exp((spec.alpha - 1.0) * t0);
}

HopfieldSystem build(HopfieldSpec spec) {
    if (spec.n <= 0 || spec.damping.size() != static_cast<std::size_t>(spec.n) ||
        spec.activations.size() != static_cast<std::size_t>(spec.n) || !spec.coupling || !spec.input) {
        raise(ErrorCode::invalid_argument, "hopfield build: incomplete spec");
    }
    if (!(spec.alpha > 0.0) || !(spec.alpha < 1.0) || !(spec.delta > 0.0) || !(spec.rho > 0.0) ||
        !(spec.rho < 1.0)) {
        raise(ErrorCode::invalid_argument, "hopfield build: need alpha, rho in (0,1) and delta > 0");
    }
    if (spec.validate) validate_spec(spec);

    HopfieldSystem sys;
    sys.spec = spec;

    // Growth envelope measured on the model ball with headroom; the envelope
    // is only a sanity guard for the integrator.
    double mu = 0.0;
    {
        const std::vector<Vector> dirs = sphere_directions(spec.n, 8 * static_cast<int>(spec.n), 2);
        for (int ti = 0; ti < 5; ++ti) {
            const double t = spec.t_check * ti / 4.0;
            const Matrix b_t = spec.coupling(t);
            for (int shell = 0; shell <= 4; ++shell) {
                const double r = spec.rho * shell / 4.0;
                for (const Vector& d : dirs) {
                    const Vector x = r * d;
                    const ConvexSet value = make_affine_image(
                        b_t, -damping_values(spec, t, x) + spec.input(t), activation_box(spec, x));
                    mu = std::max(mu, set_magnitude(value) / (1.0 + r));
                }
            }
        }
    }

    HopfieldSpec captured = sys.spec;
    sys.inclusion.dim = spec.n;
    sys.inclusion.growth = GainFunction::constant(mu * 1.05 + 1e-9);
    sys.inclusion.equilibrium = true;
    sys.inclusion.evaluate = [captured](double t, const Vector& x) {
        return make_affine_image(captured.coupling(t),
                                 -damping_values(captured, t, x) + captured.input(t),
                                 activation_box(captured, x));
    };

    sys.lyapunov = make_lyapunov(spec.alpha);
    sys.rate.c = GainFunction::exponential(spec.delta, spec.alpha - 1.0);
    sys.rate.g = ComparisonNonlinearity::power(spec.alpha);
    return sys;
}

double hopfield_margin(const HopfieldSystem& sys, double t, const Vector& x) {
    if (x.norm() == 0.0) {
        raise(ErrorCode::invalid_argument, "hopfield_margin: stated on x != 0 only");
    }
    const HopfieldSpec& spec = sys.spec;
    const double c_t = std::exp(-t);
    const double r = x.norm();
    const double v = c_t * shape_value(r, spec.alpha);
    const double v_t = -v;
    const Vector v_x = c_t * shape_slope_over_r(r, spec.alpha) * x;
    const double forcing = spec.delta * std::exp((spec.alpha - 1.0) * t) * std::pow(v, spec.alpha);

    const Matrix b_t = spec.coupling(t);
    const Vector shift = -damping_values(spec, t, x) + spec.input(t);
    const Matrix u = vertices(ConvexSet(activation_box(spec, x)));
    double margin = -kInfinity;
    for (Eigen::Index i = 0; i < u.cols(); ++i) {
        margin = std::max(margin, v_t + v_x.dot(b_t * u.col(i) + shift) + forcing);
    }
    return margin;
}

GridSpec default_grid(const HopfieldSystem& sys, int density) {
    GridSpec grid;
    grid.t_min = 0.0;
    grid.t_max = sys.spec.t_check;
    grid.time_samples = 5 * density;
    grid.r_min = 1e-4;
    grid.r_max = sys.spec.rho * (1.0 - 1e-6);
    grid.shells = 10 * density;
    grid.directions = 16 * density * static_cast<int>(sys.spec.n);
    return grid;
}

CheckReport verify_paper_inequality(const HopfieldSystem& sys, const GridSpec& grid) {
    if (!(grid.r_max <= sys.spec.rho)) {
        raise(ErrorCode::invalid_argument, "verify_paper_inequality: grid must stay inside B(0, rho)");
    }
    CheckReport report;
    report.mode = CheckMode::strong;

    std::vector<double> radii;
    for (int i = 0; i < grid.shells; ++i) {
        const double w = grid.shells == 1 ? 0.0 : static_cast<double>(i) / (grid.shells - 1);
        radii.push_back(grid.r_min * std::pow(grid.r_max / grid.r_min, w));
    }
    const std::vector<Vector> dirs = sphere_directions(sys.spec.n, grid.directions, grid.seed);

    double sum = 0.0;
    for (int ti = 0; ti < grid.time_samples; ++ti) {
        const double t = grid.time_samples == 1
                             ? grid.t_min
                             : grid.t_min + (grid.t_max - grid.t_min) * ti / (grid.time_samples - 1);
        for (double r : radii) {
            for (const Vector& d : dirs) {
                const Vector x = r * d;
                const double m = hopfield_margin(sys, t, x);
                ++report.evaluations;
                sum += m;
                report.max_margin = std::max(report.max_margin, m);
                if (m > grid.tol_rel * (1.0 + std::abs(m))) {
                    ++report.violation_count;
                    if (report.violations.size() < CheckReport::kMaxStoredViolations) {
                        report.violations.push_back(ConditionViolation{t, x, m, Vector()});
                    }
                }
            }
        }
    }
    {
        std::ostringstream desc;
        desc << grid.time_samples << " times x " << radii.size() << " shells x " << dirs.size()
             << " directions inside B(0, " << sys.spec.rho << ")";
        report.grid_description = desc.str();
    }
    if (report.evaluations == 0) {
        report.warnings.push_back("empty grid: vacuous pass with zero evaluations");
    } else {
        report.mean_margin = sum / static_cast<double>(report.evaluations);
    }
    report.pass = report.violation_count == 0;
    return report;
}

DemoReport demo(const HopfieldSystem& sys, double t0, const Vector& x0, const StepControl& ctrl,
                const DemoOptions& opts) {
    if (x0.size() != sys.spec.n) {
        raise(ErrorCode::invalid_argument, "demo: initial state dimension mismatch");
    }
    DemoReport report;

    report.basin = basin_estimate(sys.lyapunov, sys.rate, sys.spec.n, t0,
                                  opts.eps_fraction * sys.spec.rho, sys.spec.rho, opts.seed);
    for (const auto& w : report.basin.warnings) report.warnings.push_back(w);
    if (x0.norm() >= report.basin.delta && x0.norm() > 0.0) {
        report.warnings.push_back("initial state lies outside the certified basin radius");
    }

    GridSpec grid = default_grid(sys, opts.grid_density);
    grid.seed = opts.seed;
    report.strong_check = check_stability(sys.lyapunov, sys.inclusion, sys.rate, CheckMode::strong, grid);

    report.certificate = settling_time_bound(sys.rate, t0, sys.lyapunov(t0, x0));

    double t_end = t0 + opts.horizon_padding;
    if (report.certificate.bounded()) {
        t_end = *report.certificate.t_bound +
                std::max(opts.horizon_padding, 0.2 * (*report.certificate.t_bound - t0));
    } else {
        report.warnings.push_back("settling certificate unbounded: running simulation only");
    }
    if (t_end <= t0) t_end = t0 + opts.horizon_padding;

    report.sweep = sweep_strong(sys.inclusion, sys.lyapunov, sys.rate, t0, x0, ctrl, opts.n_random,
                                t_end, opts.seed);

    bool all_ok = report.strong_check.pass && report.certificate.bounded();
    if (report.certificate.bounded()) {
        for (const auto& run : report.sweep.runs) {
            if (!run.trajectory.settled_at) {
                all_ok = false;
                continue;
            }
            report.settling.push_back(verify_settling(run.trajectory, report.certificate,
                                                      sys.lyapunov, sys.rate,
                                                      opts.time_slack_factor * ctrl.zero_radius,
                                                      opts.value_slack));
            all_ok = all_ok && report.settling.back().pass;
        }
    }
    report.all_verified = all_ok;
    return report;
}

HopfieldSpec hopfield_ref_1() {
    HopfieldSpec spec;
    spec.n = 2;
    spec.alpha = 0.5;
    spec.delta = 0.1;
    spec.rho = 0.3;
    spec.a = GainFunction::constant(0.5);
    spec.b = GainFunction::constant(0.2);
    spec.t_check = 2.0;

    const double a0 = 0.5;
    const double exponent = 2.0 * spec.alpha - 1.0; // 0 at alpha = 1/2
    auto damp = [a0, exponent](double, double xi) {
        if (xi == 0.0) return 0.0;
        const double mag = exponent == 0.0 ? 1.0 : std::pow(std::abs(xi), exponent);
        return a0 * (xi > 0.0 ? mag : -mag);
    };
    spec.damping = {damp, damp};

    // Identity inside |x| < 0.5, jump of height 0.1 at +-0.5: discontinuities
    // sit outside rho = 0.3, so the standing inequalities see the identity.
    auto act_eval = [](double xi) {
        if (xi >= 0.5) return xi + 0.1;
        if (xi <= -0.5) return xi - 0.1;
        return xi;
    };
    MonotoneScalarFunction act = make_monotone(
        act_eval, {MonotoneScalarFunction::Jump{-0.5, -0.6, -0.5},
                   MonotoneScalarFunction::Jump{0.5, 0.5, 0.6}});
    spec.activations = {act, act};

    Matrix b(2, 2);
    b << -0.3, 0.1, 0.05, -0.25;
    spec.coupling = [b](double) { return b; };
    spec.input = [](double) { return Vector::Zero(2); };
    spec.validate = true;
    return spec;
}

HopfieldSpec hopfield_sign_2() {
    HopfieldSpec spec = hopfield_ref_1();

    MonotoneScalarFunction sign_act = make_monotone(
        [](double xi) { return xi > 0.0 ? 1.0 : (xi < 0.0 ? -1.0 : 0.0); },
        {MonotoneScalarFunction::Jump{0.0, -1.0, 1.0}});
    spec.activations = {sign_act, sign_act};

    // Positive cross coupling: <x, B g(x)> scales like |x| near the origin,
    // so the quadratic bound fails there; the instance is demo-only.
    Matrix b(2, 2);
    b << 0.0, 0.05, 0.05, 0.0;
    spec.coupling = [b](double) { return b; };
    spec.validate = false;
    return spec;
}

} // namespace fts
