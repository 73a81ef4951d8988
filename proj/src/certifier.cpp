#include "fts/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace fts {

std::vector<Vector> sphere_directions(Eigen::Index dim, int count, std::uint64_t seed) {
    std::vector<Vector> dirs;
    if (count <= 0 || dim <= 0) return dirs;
    dirs.reserve(static_cast<std::size_t>(count));
    if (dim == 1) {
        for (int i = 0; i < count; ++i) {
            Vector d(1);
            d[0] = (i % 2 == 0) ? 1.0 : -1.0;
            dirs.push_back(d);
        }
        return dirs;
    }
    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * i / count;
            Vector d(2);
            d << std::cos(a), std::sin(a);
            dirs.push_back(d);
        }
        return dirs;
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    while (dirs.size() < static_cast<std::size_t>(count)) {
        Vector d(dim);
        for (Eigen::Index i = 0; i < dim; ++i) d[i] = normal(rng);
        const double n = d.norm();
        if (n > 1e-12) dirs.push_back(d / n);
    }
    return dirs;
}

namespace {

struct PointMargin {
    double margin = 0.0;
    Vector velocity;
    double scale = 1.0;
};

PointMargin condition_margin(const LyapunovCandidate& v, const CaratheodoryMap& f,
                             const RateSpec& rate, double t, const Vector& x, bool strong) {
    if (x.norm() == 0.0) {
        raise(ErrorCode::invalid_argument, "decrease condition: stated on x != 0 only");
    }
    const Matrix verts = vertices(f(t, x));
    const double forcing = rate.c(t) * rate.g(v(t, x));
    PointMargin out;
    double extreme = strong ? -kInfinity : kInfinity;
    Eigen::Index witness = 0;
    for (Eigen::Index i = 0; i < verts.cols(); ++i) {
        const double d = strong ? hypoderivative(v, t, x, verts.col(i))
                                : epiderivative(v, t, x, verts.col(i));
        if (strong ? (d > extreme) : (d < extreme)) {
            extreme = d;
            witness = i;
        }
    }
    out.margin = extreme + forcing;
    out.velocity = verts.col(witness);
    out.scale = 1.0 + std::abs(extreme) + std::abs(forcing);
    return out;
}

} // namespace

double weak_condition_at(const LyapunovCandidate& v, const CaratheodoryMap& f,
                         const RateSpec& rate, double t, const Vector& x) {
    return condition_margin(v, f, rate, t, x, false).margin;
}

double strong_condition_at(const LyapunovCandidate& v, const CaratheodoryMap& f,
                           const RateSpec& rate, double t, const Vector& x) {
    if (!v.lipschitz) {
        raise(ErrorCode::missing_lipschitz,
              "strong condition: V must be declared locally Lipschitz continuous");
    }
    return condition_margin(v, f, rate, t, x, true).margin;
}

CheckReport check_stability(const LyapunovCandidate& v, const CaratheodoryMap& f,
                            const RateSpec& rate, CheckMode mode, const GridSpec& grid) {
    if (mode == CheckMode::strong && !v.lipschitz) {
        raise(ErrorCode::missing_lipschitz,
              "strong condition: V must be declared locally Lipschitz continuous");
    }
    CheckReport report;
    report.mode = mode;
    report.vertex_reduction_heuristic = (mode == CheckMode::strong) && !v.has_gradient();

    std::vector<double> times;
    for (int i = 0; i < grid.time_samples; ++i) {
        const double t = grid.time_samples == 1
                             ? grid.t_min
                             : grid.t_min + (grid.t_max - grid.t_min) * i / (grid.time_samples - 1);
        const bool excluded = std::any_of(
            grid.excluded_times.begin(), grid.excluded_times.end(),
            [&](double e) { return std::abs(e - t) <= 1e-12 * std::max(1.0, std::abs(e)); });
        if (!excluded) times.push_back(t);
    }

    std::vector<double> radii;
    for (int i = 0; i < grid.shells; ++i) {
        const double w = grid.shells == 1 ? 0.0 : static_cast<double>(i) / (grid.shells - 1);
        radii.push_back(grid.r_min * std::pow(grid.r_max / grid.r_min, w));
    }
    const std::vector<Vector> dirs = sphere_directions(f.dim, grid.directions, grid.seed);

    {
        std::ostringstream desc;
        desc << times.size() << " times x " << radii.size() << " shells x " << dirs.size()
             << " directions, r in [" << grid.r_min << ", " << grid.r_max << "], t in ["
             << grid.t_min << ", " << grid.t_max << "]";
        report.grid_description = desc.str();
    }

    struct Point {
        double t;
        Vector x;
    };
    std::vector<Point> points;
    points.reserve(times.size() * radii.size() * dirs.size());
    for (double t : times) {
        for (double r : radii) {
            for (const Vector& d : dirs) {
                points.push_back(Point{t, r * d});
            }
        }
    }
    report.evaluations = points.size();
    if (points.empty()) {
        report.warnings.push_back("empty grid: vacuous pass with zero evaluations");
        return report;
    }

    const bool strong = mode == CheckMode::strong;
    std::vector<PointMargin> margins(points.size());
    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            margins[i] = condition_margin(v, f, rate, points[i].t, points[i].x, strong);
        }
    };
    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t n_threads = points.size() >= 4096 ? std::min<std::size_t>(hw, 8) : 1;
    if (n_threads <= 1) {
        worker(0, points.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (points.size() + n_threads - 1) / n_threads;
        for (std::size_t k = 0; k < n_threads; ++k) {
            const std::size_t b = k * chunk;
            const std::size_t e = std::min(points.size(), b + chunk);
            if (b < e) pool.emplace_back(worker, b, e);
        }
        for (auto& th : pool) th.join();
    }

    double sum = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double m = margins[i].margin;
        sum += m;
        report.max_margin = std::max(report.max_margin, m);
        if (m > grid.tol_rel * margins[i].scale) {
            ++report.violation_count;
            if (report.violations.size() < CheckReport::kMaxStoredViolations) {
                report.violations.push_back(
                    ConditionViolation{points[i].t, points[i].x, m, margins[i].velocity});
            }
        }
    }
    report.mean_margin = sum / static_cast<double>(points.size());
    report.pass = report.violation_count == 0;
    return report;
}

namespace {

double sup_over_ball(const LyapunovCandidate& v, double t, double radius,
                     const std::vector<Vector>& dirs) {
    double sup = 0.0; // V(t, 0) = 0 sits in every ball
    for (int shell = 1; shell <= 4; ++shell) {
        const double r = radius * shell / 4.0;
        for (const Vector& d : dirs) {
            sup = std::max(sup, v(t, r * d));
        }
    }
    return sup;
}

} // namespace

BasinEstimate basin_estimate(const LyapunovCandidate& v, const RateSpec& rate, Eigen::Index dim,
                             double t0, double eps, double rho0_domain, std::uint64_t seed) {
    if (!(eps > 0.0) || !(rho0_domain > 0.0) || dim <= 0) {
        raise(ErrorCode::invalid_argument, "basin_estimate: eps, rho0_domain and dim must be positive");
    }
    if (eps >= rho0_domain) {
        raise(ErrorCode::no_basin, "basin_estimate: eps sphere lies outside the domain radius");
    }
    BasinEstimate out;
    const std::vector<Vector> dirs = sphere_directions(dim, 64 * static_cast<int>(dim), seed);
    const double tail = rate.c.tail_mass(t0);
    if (!(tail > 0.0)) {
        raise(ErrorCode::no_basin, "basin_estimate: gain tail mass vanishes from t0 on");
    }

    // Shrink the reference ball until its V-sup fits under the tail mass.
    double radius = rho0_domain * (1.0 - 1e-12);
    double rho0 = 0.0;
    bool feasible = false;
    for (int i = 0; i < 200; ++i) {
        rho0 = sup_over_ball(v, t0, radius, dirs);
        if (barrier_integral(rate.g, rho0) < tail) {
            feasible = true;
            break;
        }
        radius *= 0.5;
    }
    if (!feasible) {
        raise(ErrorCode::no_basin, "basin_estimate: tail mass cannot cover any reference ball");
    }
    if (radius < eps) {
        out.warnings.push_back("eps exceeds the feasible reference radius; estimate is heuristic");
    }
    out.rho0 = rho0;

    const SettlingCertificate cert = settling_time_bound(rate, t0, rho0);
    out.horizon = cert.bounded() ? *cert.t_bound : t0;

    // inf of V over [t0, T0] x {|x| = eps}, sampled.
    double v_eps = kInfinity;
    constexpr int kTimeSamples = 33;
    for (int i = 0; i < kTimeSamples; ++i) {
        const double t = t0 + (out.horizon - t0) * i / (kTimeSamples - 1);
        for (const Vector& d : dirs) {
            v_eps = std::min(v_eps, v(t, eps * d));
        }
    }
    out.v_eps = v_eps;
    if (!(v_eps > 1e-12 * (1.0 + rho0))) {
        raise(ErrorCode::no_basin, "basin_estimate: sampled V_eps is not positive");
    }

    // Largest delta with sup over the delta-ball below v_eps / 2. The map is
    // nondecreasing in delta, so bisect.
    const auto fits = [&](double delta) { return sup_over_ball(v, t0, delta, dirs) < 0.5 * v_eps; };
    double lo = 0.0;
    double hi = eps * (1.0 - 1e-9);
    if (fits(hi)) {
        out.delta = hi;
        return out;
    }
    if (!fits(eps * 1e-9)) {
        raise(ErrorCode::no_basin, "basin_estimate: no positive delta fits under V_eps / 2");
    }
    lo = eps * 1e-9;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        (fits(mid) ? lo : hi) = mid;
    }
    out.delta = lo;
    return out;
}

} // namespace fts
