#pragma once

#include "fts/certifier.hpp"
#include "fts/integrator.hpp"
#include "fts/monotone.hpp"

#include <functional>
#include <vector>

namespace fts {

/// Data of the neural-network model x' = -h(t,x) + B(t) g(t,x) + I(t) with
/// nondecreasing activations, together with the constants of its standing
/// inequalities on the ball B(0, rho):
///   a(t) - b(t) rho^{2(1-alpha)} >= delta,
///   a(t) |x|^{2 alpha} <= <x, h(t,x)>,
///   I(t) = 0,
///   <x, B(t) g(t,x)> <= b(t) |x|^2.
struct HopfieldSpec {
    Eigen::Index n = 0;
    std::vector<std::function<double(double, double)>> damping; // h_i(t, x_i)
    std::vector<MonotoneScalarFunction> activations;            // g_i(x_i)
    std::function<Matrix(double)> coupling;                     // B(t)
    std::function<Vector(double)> input;                        // I(t)
    double alpha = 0.5;
    double delta = 0.1;
    double rho = 0.3;
    GainFunction a = GainFunction::constant(0.5);
    GainFunction b = GainFunction::constant(0.2);
    double t_check = 2.0; // validation horizon for the t-dependent inequalities
    bool validate = true;
};

/// The assembled certified system: Filippov inclusion, the Lyapunov function
/// V(t,x) = e^{-t} |x| (|x| - exp(-|x|^{alpha-1})) with its analytic gradient,
/// and the decrease rate c(t) = delta e^{(alpha-1) t}, g(v) = v^alpha.
struct HopfieldSystem {
    HopfieldSpec spec;
    CaratheodoryMap inclusion;
    LyapunovCandidate lyapunov;
    RateSpec rate;

    /// int_{t0}^inf c in closed form: (delta / (1-alpha)) e^{(alpha-1) t0}.
    [[nodiscard]] double tail_mass(double t0) const;
};

/// Validates the standing inequalities on a grid over [0, t_check] x B(0,rho)
/// (unless spec.validate is off) and wires the system. Throws
/// Error(assumption_violation) naming the first failed inequality and a
/// witness point.
HopfieldSystem build(HopfieldSpec spec);

/// Decrease margin at one point: the maximum over activation-box vertices u of
///   V_t + <V_x, B(t) u - h(t,x) + I(t)> + c(t) V^alpha,
/// evaluated through the analytic gradient. This is an independent route to
/// the strong condition and is expected to agree with the certifier.
double hopfield_margin(const HopfieldSystem& sys, double t, const Vector& x);

/// Grid sweep of hopfield_margin over B(0, rho) \ {0}.
CheckReport verify_paper_inequality(const HopfieldSystem& sys, const GridSpec& grid);

/// Default condition grid for the system: log shells in [1e-4, ~rho] times the
/// validation horizon, scaled by density.
GridSpec default_grid(const HopfieldSystem& sys, int density = 1);

struct DemoOptions {
    double eps_fraction = 0.2; // deviation target as a fraction of rho
    int n_random = 8;
    std::uint64_t seed = 0;
    double time_slack_factor = 10.0; // times zero_radius
    double value_slack = 1e-5;
    int grid_density = 1;
    double horizon_padding = 0.5;
};

struct DemoReport {
    BasinEstimate basin;
    CheckReport strong_check;
    SettlingCertificate certificate;
    SweepSummary sweep;
    std::vector<SettlingCheck> settling; // one per sweep run when the certificate is finite
    bool all_verified = false;
    std::vector<std::string> warnings;
};

/// End-to-end demonstration: basin estimate, strong grid check, settling
/// certificate from V(t0, x0), a selection sweep, and per-run settling
/// verification. An unbounded certificate degrades to simulation-only with a
/// warning.
DemoReport demo(const HopfieldSystem& sys, double t0, const Vector& x0, const StepControl& ctrl,
                const DemoOptions& opts = {});

/// Reference instance: n = 2, identity activations with a declared jump at
/// |x| = 0.5 (outside rho), sign-type damping. Passes full validation.
HopfieldSpec hopfield_ref_1();

/// Demonstration instance: n = 2 with sign activations, whose coupling bound
/// fails near the origin; shipped with validation off.
HopfieldSpec hopfield_sign_2();

} // namespace fts
