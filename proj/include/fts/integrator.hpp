#pragma once

#include "fts/caratheodory.hpp"
#include "fts/certifier.hpp"
#include "fts/comparison.hpp"
#include "fts/lyapunov.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fts {

/// How a single velocity is picked from the vertex set of F(t, x) each step.
struct SelectionStrategy {
    enum class Kind { steepest_descent, fixed_vertex, random_vertex, continuity };

    Kind kind = Kind::steepest_descent;
    int vertex_index = 0;     // fixed_vertex
    std::uint64_t seed = 0;   // random_vertex

    static SelectionStrategy steepest() { return {Kind::steepest_descent, 0, 0}; }
    static SelectionStrategy fixed(int index) { return {Kind::fixed_vertex, index, 0}; }
    static SelectionStrategy random(std::uint64_t seed) { return {Kind::random_vertex, 0, seed}; }
    static SelectionStrategy continuity() { return {Kind::continuity, 0, 0}; }

    [[nodiscard]] std::string name() const;
};

struct StepControl {
    double initial_step = 1e-2;
    double min_step = 1e-9;
    double max_step = 1e-1;
    double rel_change_max = 0.10; // per-step |dx| cap relative to max(|x|, zero_radius)
    int midpoint_retries = 3;     // halvings granted to the midpoint membership test
    double zero_radius = 1e-6;    // dead zone for origin snapping
    double tol_set = 1e-6;        // set-membership tolerance
};

/// Explicit-Euler sample path of the inclusion. The Euler recurrence holds
/// exactly at every recorded step except the final snap into the dead zone,
/// which moves the state by at most zero_radius.
struct Trajectory {
    std::vector<double> times;
    std::vector<Vector> states;
    std::vector<Vector> velocities;   // one per step, velocities[k] drives times[k] -> times[k+1]
    std::vector<double> v_values;     // empty when no V was supplied
    std::vector<double> phi_values;   // empty when no rate was supplied
    std::optional<double> settled_at;

    [[nodiscard]] double sup_norm() const;
};

struct DecreaseCheck {
    bool pass = true;
    double worst_margin = -kInfinity;
    std::optional<double> violation_time;
};

struct SettlingCheck {
    bool pass = true;
    bool settled_in_time = true;
    DominationCheck domination;
};

struct SweepRun {
    std::string strategy;
    Trajectory trajectory;
    double sup_norm = 0.0;
};

struct SweepSummary {
    std::vector<SweepRun> runs;
    double max_sup_norm = 0.0;
    std::optional<double> latest_settling; // unset when some run never settled
    bool all_settled = false;
    std::optional<double> t_bound;         // copied from the certificate when available
};

/// Integrates x' in F(t, x) from (t0, x0) to t_end under the given selection
/// strategy. Velocities come from the vertex set at the left endpoint; steps
/// obey the relative-change cap and a midpoint membership rejection test.
/// Inside the dead zone the state snaps to the origin once the local weak
/// margin is nonpositive (or unconditionally when no V is given), and stays
/// there. Throws Error(blow_up) past the growth envelope and Error(min_step)
/// when the change cap cannot be met at the minimum step.
Trajectory integrate(const CaratheodoryMap& f, const SelectionStrategy& sel, double t0,
                     const Vector& x0, double t_end, const StepControl& ctrl,
                     const LyapunovCandidate* v = nullptr, const RateSpec* rate = nullptr);

/// Checks the integral decrease inequality
///   V(s, x(s)) <= V(t, x(t)) - int_t^s W
/// for every ordered sample pair, with trapezoid quadrature of W along the
/// path. Runs in linear time through cumulative sums.
DecreaseCheck verify_decrease(const Trajectory& traj, const LyapunovCandidate& v,
                              const RateFunctionW& w, double tol);

/// Settling verification against a finite certificate: the trajectory must
/// settle by t_bound (within time_slack) and V(t, x(t)) must stay under the
/// comparison solution (within value_slack). Throws Error(unsettled) when the
/// trajectory never settled.
SettlingCheck verify_settling(const Trajectory& traj, const SettlingCertificate& cert,
                              const LyapunovCandidate& v, const RateSpec& rate,
                              double time_slack, double value_slack);

/// Runs one trajectory per vertex of F(t0, x0) (fixed-vertex strategies) plus
/// n_random random-vertex runs, and aggregates settling statistics.
SweepSummary sweep_strong(const CaratheodoryMap& f, const LyapunovCandidate& v,
                          const RateSpec& rate, double t0, const Vector& x0,
                          const StepControl& ctrl, int n_random, double t_end,
                          std::uint64_t seed = 0);

} // namespace fts
