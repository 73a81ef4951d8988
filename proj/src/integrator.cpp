#include "fts/integrator.hpp"

#include "fts/derivatives.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fts {

std::string SelectionStrategy::name() const {
    switch (kind) {
        case Kind::steepest_descent: return "steepest";
        case Kind::fixed_vertex: return "fixed-" + std::to_string(vertex_index);
        case Kind::random_vertex: return "random-" + std::to_string(seed);
        case Kind::continuity: return "continuity";
    }
    return "unknown";
}

double Trajectory::sup_norm() const {
    double sup = 0.0;
    for (const Vector& x : states) sup = std::max(sup, x.norm());
    return sup;
}

namespace {

class VertexSelector {
public:
    VertexSelector(const SelectionStrategy& sel, const LyapunovCandidate* v)
        : sel_(sel), v_(v), rng_(sel.seed) {
        if (sel.kind == SelectionStrategy::Kind::steepest_descent && v == nullptr) {
            raise(ErrorCode::invalid_argument,
                  "integrate: steepest-descent selection needs a Lyapunov candidate");
        }
    }

    Vector pick(double t, const Vector& x, const Matrix& verts) {
        const Eigen::Index count = verts.cols();
        Eigen::Index choice = 0;
        switch (sel_.kind) {
            case SelectionStrategy::Kind::fixed_vertex:
                choice = static_cast<Eigen::Index>(sel_.vertex_index) % count;
                break;
            case SelectionStrategy::Kind::random_vertex: {
                std::uniform_int_distribution<Eigen::Index> dist(0, count - 1);
                choice = dist(rng_);
                break;
            }
            case SelectionStrategy::Kind::continuity: {
                if (!have_previous_) {
                    previous_ = Vector::Zero(verts.rows());
                }
                double best = kInfinity;
                for (Eigen::Index i = 0; i < count; ++i) {
                    const double d = (verts.col(i) - previous_).norm();
                    if (d < best) {
                        best = d;
                        choice = i;
                    }
                }
                break;
            }
            case SelectionStrategy::Kind::steepest_descent: {
                // Ties break toward the lowest vertex index.
                double best = kInfinity;
                for (Eigen::Index i = 0; i < count; ++i) {
                    const double d = x.norm() > 0.0 ? epiderivative(*v_, t, x, verts.col(i)) : 0.0;
                    if (d < best) {
                        best = d;
                        choice = i;
                    }
                }
                break;
            }
        }
        previous_ = verts.col(choice);
        have_previous_ = true;
        return previous_;
    }

private:
    SelectionStrategy sel_;
    const LyapunovCandidate* v_;
    std::mt19937_64 rng_;
    Vector previous_;
    bool have_previous_ = false;
};

bool snap_allowed(const CaratheodoryMap& f, const LyapunovCandidate* v, const RateSpec* rate,
                  double t, const Vector& x) {
    if (!f.equilibrium) return false;
    if (v == nullptr) return true;
    if (x.norm() == 0.0) return true;
    if (rate == nullptr) {
        // Without a rate the local decrease degenerates to the raw derivative.
        const Matrix verts = vertices(f(t, x));
        double best = kInfinity;
        for (Eigen::Index i = 0; i < verts.cols(); ++i) {
            best = std::min(best, epiderivative(*v, t, x, verts.col(i)));
        }
        return best <= 0.0;
    }
    return weak_condition_at(*v, f, *rate, t, x) <= 0.0;
}

} // namespace

Trajectory integrate(const CaratheodoryMap& f, const SelectionStrategy& sel, double t0,
                     const Vector& x0, double t_end, const StepControl& ctrl,
                     const LyapunovCandidate* v, const RateSpec* rate) {
    if (!(t0 < t_end)) {
        raise(ErrorCode::invalid_argument, "integrate: need t0 < t_end");
    }
    if (!(ctrl.min_step > 0.0) || !(ctrl.min_step <= ctrl.initial_step) ||
        !(ctrl.initial_step <= ctrl.max_step) || !(ctrl.zero_radius > 0.0)) {
        raise(ErrorCode::invalid_argument, "integrate: inconsistent step control");
    }
    if (x0.size() != f.dim) {
        raise(ErrorCode::invalid_argument, "integrate: initial state dimension mismatch");
    }

    Trajectory traj;
    VertexSelector selector(sel, v);
    const double phi_v0 = (v != nullptr && rate != nullptr) ? (*v)(t0, x0) : 0.0;

    auto record = [&](double t, const Vector& x) {
        traj.times.push_back(t);
        traj.states.push_back(x);
        if (v != nullptr) traj.v_values.push_back((*v)(t, x));
        if (v != nullptr && rate != nullptr) {
            traj.phi_values.push_back(comparison_solution(*rate, t0, phi_v0, t));
        }
    };

    double t = t0;
    Vector x = x0;
    record(t, x);

    // Immediate equilibrium start.
    if (x.norm() <= ctrl.zero_radius && snap_allowed(f, v, rate, t, x)) {
        traj.settled_at = t;
        x = Vector::Zero(f.dim);
        traj.states.back() = x;
        if (v != nullptr) traj.v_values.back() = (*v)(t, x);
    }

    const double envelope_base = 1.0 + x0.norm();
    bool first_step = true;

    while (t < t_end) {
        if (traj.settled_at) {
            // The origin is invariant; pad the remaining horizon.
            const double h = std::min(ctrl.max_step, t_end - t);
            traj.velocities.push_back(Vector::Zero(f.dim));
            t = (h == t_end - t) ? t_end : t + h;
            record(t, x);
            continue;
        }

        const ConvexSet set = f(t, x);
        const Matrix verts = vertices(set);
        const Vector velocity = selector.pick(t, x, verts);

        // The relative-change cap is an explicit step-size formula under
        // explicit Euler: |dx| = h |f|.
        const double speed = velocity.norm();
        double h = ctrl.max_step;
        if (first_step) h = std::min(h, ctrl.initial_step);
        if (speed > 0.0) {
            h = std::min(h, ctrl.rel_change_max * std::max(x.norm(), ctrl.zero_radius) / speed);
        }
        if (h < ctrl.min_step) {
            raise(ErrorCode::min_step, "integrate: change cap drives the step below min_step");
        }
        h = std::min(h, t_end - t);

        // Midpoint membership is a rejection test only; a bounded number of
        // halvings keeps discontinuity surfaces (sliding regimes) passable.
        for (int retry = 0; retry < ctrl.midpoint_retries; ++retry) {
            const Vector mid = x + 0.5 * h * velocity;
            const double residual = point_set_distance(velocity, f(t + 0.5 * h, mid));
            if (residual <= ctrl.tol_set) break;
            if (0.5 * h < ctrl.min_step) break;
            h *= 0.5;
        }
        const bool final_step = (h == t_end - t);

        x = x + h * velocity;
        t = final_step ? t_end : t + h;
        traj.velocities.push_back(velocity);
        record(t, x);
        first_step = false;

        const double envelope =
            envelope_base * std::exp(cumulative_gain(f.growth, t0, t)) - 1.0;
        if (x.norm() > envelope * 1.1 + 1e-9) {
            raise(ErrorCode::blow_up, "integrate: state escaped the linear growth envelope");
        }

        if (x.norm() <= ctrl.zero_radius && snap_allowed(f, v, rate, t, x)) {
            traj.settled_at = t;
            x = Vector::Zero(f.dim);
            traj.states.back() = x;
            if (v != nullptr) traj.v_values.back() = (*v)(t, x);
        }
    }
    return traj;
}

DecreaseCheck verify_decrease(const Trajectory& traj, const LyapunovCandidate& v,
                              const RateFunctionW& w, double tol) {
    if (traj.times.size() < 2) {
        raise(ErrorCode::invalid_argument, "verify_decrease: need at least two samples");
    }
    // The pairwise inequality V(s,x(s)) + int_0^s W <= V(t,x(t)) + int_0^t W
    // says the sequence a_k = V_k + cumW_k is nonincreasing; a running
    // minimum checks all pairs at once.
    DecreaseCheck out;
    const std::size_t n = traj.times.size();
    double cum = 0.0;
    double prev_w = w(traj.times[0], traj.states[0]);
    double running_min = v(traj.times[0], traj.states[0]);
    for (std::size_t k = 1; k < n; ++k) {
        const double wk = w(traj.times[k], traj.states[k]);
        cum += 0.5 * (prev_w + wk) * (traj.times[k] - traj.times[k - 1]);
        prev_w = wk;
        const double a = v(traj.times[k], traj.states[k]) + cum;
        const double margin = a - running_min;
        if (margin > out.worst_margin) {
            out.worst_margin = margin;
        }
        if (margin > tol && out.pass) {
            out.pass = false;
            out.violation_time = traj.times[k];
        }
        running_min = std::min(running_min, a);
    }
    return out;
}

SettlingCheck verify_settling(const Trajectory& traj, const SettlingCertificate& cert,
                              const LyapunovCandidate& v, const RateSpec& rate,
                              double time_slack, double value_slack) {
    if (!cert.bounded()) {
        raise(ErrorCode::invalid_argument, "verify_settling: certificate must be finite");
    }
    if (!traj.settled_at) {
        raise(ErrorCode::unsettled, "verify_settling: trajectory never settled");
    }
    SettlingCheck out;
    out.settled_in_time = *traj.settled_at <= *cert.t_bound + time_slack;

    SampledSignal w;
    w.times = traj.times;
    w.values.reserve(traj.times.size());
    if (traj.v_values.size() == traj.times.size()) {
        w.values = traj.v_values;
    } else {
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            w.values.push_back(v(traj.times[k], traj.states[k]));
        }
    }
    out.domination = check_comparison(w, rate, value_slack);
    out.pass = out.settled_in_time && out.domination.pass;
    return out;
}

SweepSummary sweep_strong(const CaratheodoryMap& f, const LyapunovCandidate& v,
                          const RateSpec& rate, double t0, const Vector& x0,
                          const StepControl& ctrl, int n_random, double t_end,
                          std::uint64_t seed) {
    SweepSummary out;
    const Matrix initial_vertices = vertices(f(t0, x0));

    std::vector<SelectionStrategy> strategies;
    for (Eigen::Index i = 0; i < initial_vertices.cols(); ++i) {
        strategies.push_back(SelectionStrategy::fixed(static_cast<int>(i)));
    }
    for (int i = 0; i < n_random; ++i) {
        strategies.push_back(SelectionStrategy::random(seed + static_cast<std::uint64_t>(i) + 1));
    }

    bool all_settled = true;
    std::optional<double> latest;
    for (const auto& sel : strategies) {
        SweepRun run;
        run.strategy = sel.name();
        run.trajectory = integrate(f, sel, t0, x0, t_end, ctrl, &v, &rate);
        run.sup_norm = run.trajectory.sup_norm();
        out.max_sup_norm = std::max(out.max_sup_norm, run.sup_norm);
        if (run.trajectory.settled_at) {
            if (!latest || *run.trajectory.settled_at > *latest) {
                latest = run.trajectory.settled_at;
            }
        } else {
            all_settled = false;
        }
        out.runs.push_back(std::move(run));
    }
    out.all_settled = all_settled && !strategies.empty();
    if (all_settled) out.latest_settling = latest;

    const SettlingCertificate cert = settling_time_bound(rate, t0, v(t0, x0));
    if (cert.bounded()) out.t_bound = cert.t_bound;
    return out;
}

} // namespace fts
