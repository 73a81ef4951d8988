#pragma once

#include "fts/caratheodory.hpp"
#include "fts/comparison.hpp"
#include "fts/derivatives.hpp"
#include "fts/lyapunov.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fts {

enum class CheckMode { weak, strong };

/// Evaluation grid for the decrease conditions: log-spaced radial shells times
/// sphere directions times time samples, with the origin always excluded.
struct GridSpec {
    double t_min = 0.0;
    double t_max = 1.0;
    int time_samples = 9;
    double r_min = 1e-4;
    double r_max = 1.0;
    int shells = 12;
    int directions = 32;
    std::uint64_t seed = 0;
    std::vector<double> excluded_times; // user-declared exceptional times outside D
    double tol_rel = 1e-9;              // pass margin <= tol_rel * (1 + margin scale)
};

/// Deterministic unit directions: signs in 1-D, equal angles in 2-D, seeded
/// normalized Gaussians above.
std::vector<Vector> sphere_directions(Eigen::Index dim, int count, std::uint64_t seed);

struct ConditionViolation {
    double t = 0.0;
    Vector x;
    double margin = 0.0;
    Vector velocity; // witness vertex
};

struct CheckReport {
    CheckMode mode = CheckMode::weak;
    std::string grid_description;
    std::size_t evaluations = 0;
    std::size_t violation_count = 0;
    std::vector<ConditionViolation> violations; // first kMaxStoredViolations only
    bool pass = true;
    double max_margin = -kInfinity;
    double mean_margin = 0.0;
    bool vertex_reduction_heuristic = false; // strong mode without a gradient
    std::vector<std::string> warnings;

    static constexpr std::size_t kMaxStoredViolations = 100;
};

/// Weak decrease margin at (t, x != 0):
///   min over vertices of F(t,x) of D_up V(t,x)(1,f)  +  c(t) g(V(t,x)).
/// The condition holds when the margin is <= 0 (up to tolerance).
double weak_condition_at(const LyapunovCandidate& v, const CaratheodoryMap& f,
                         const RateSpec& rate, double t, const Vector& x);

/// Strong decrease margin: max over vertices of the hypoderivative plus
/// c(t) g(V(t,x)). Requires the Lipschitz flag. The vertex reduction is exact
/// for smooth V (the direction enters linearly) and heuristic otherwise.
double strong_condition_at(const LyapunovCandidate& v, const CaratheodoryMap& f,
                           const RateSpec& rate, double t, const Vector& x);

/// Grid sweep of the chosen condition. Pure per-point work; chunks may be
/// evaluated concurrently and the report does not depend on the chunking.
CheckReport check_stability(const LyapunovCandidate& v, const CaratheodoryMap& f,
                            const RateSpec& rate, CheckMode mode, const GridSpec& grid);

struct BasinEstimate {
    double delta = 0.0;   // largest sampled radius with sup V(t0, delta B) < v_eps / 2
    double horizon = 0.0; // settling horizon T0 = tau(t0, rho0)
    double v_eps = 0.0;   // inf of V on [t0, T0] x {|x| = eps}
    double rho0 = 0.0;    // sup of V(t0, .) over the admissible ball
    std::vector<std::string> warnings;
};

/// Basin radius delta for a target deviation eps, following the V_eps / 2
/// construction. Sphere sampling makes v_eps an estimate from below, which
/// keeps delta on the conservative side.
BasinEstimate basin_estimate(const LyapunovCandidate& v, const RateSpec& rate, Eigen::Index dim,
                             double t0, double eps, double rho0_domain, std::uint64_t seed = 0);

} // namespace fts
