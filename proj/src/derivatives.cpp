#include "fts/derivatives.hpp"

#include <cmath>

namespace fts {

namespace {

struct LevelQuotients {
    double min = kInfinity;
    double max = -kInfinity;
    bool valid = false;
};

bool in_domain(const LyapunovCandidate& v, const Vector& y) {
    return v.domain_radius <= 0.0 || y.norm() < v.domain_radius;
}

LevelQuotients level_quotients(const LyapunovCandidate& v, double t, const Vector& x,
                               const Vector& f, double v0, double h) {
    LevelQuotients out;
    const double radius = std::pow(h, 1.5);
    const Eigen::Index n = x.size();
    for (Eigen::Index j = -1; j < 2 * n; ++j) {
        Vector fp = f;
        if (j >= 0) fp[j / 2] += (j % 2 == 0 ? radius : -radius);
        const Vector y = x + h * fp;
        if (!in_domain(v, y)) continue;
        const double vy = v(t + h, y);
        if (!std::isfinite(vy)) continue;
        const double q = (vy - v0) / h;
        out.min = std::min(out.min, q);
        out.max = std::max(out.max, q);
        out.valid = true;
    }
    return out;
}

double contingent_estimate(const LyapunovCandidate& v, double t, const Vector& x,
                           const Vector& f, bool upper) {
    if (v.has_gradient() && x.norm() > 0.0) {
        const LyapunovGradient g = v.gradient(t, x);
        return g.dt + g.dx.dot(f);
    }
    const double v0 = v(t, x);
    if (!std::isfinite(v0)) {
        raise(ErrorCode::evaluation_domain, "contingent derivative: V not finite at the base point");
    }
    // Scan the full grid for domain feasibility but aggregate only the two
    // smallest valid levels: the coarse levels carry O(h) bias that would
    // otherwise dominate the estimate.
    constexpr int kLevels = 7; // h = 1e-2 ... 1e-8
    LevelQuotients levels[kLevels];
    int finest = -1, second = -1;
    for (int k = 0; k < kLevels; ++k) {
        const double h = std::pow(10.0, -(2 + k));
        levels[k] = level_quotients(v, t, x, f, v0, h);
        if (levels[k].valid) {
            second = finest;
            finest = k;
        }
    }
    if (finest < 0) {
        raise(ErrorCode::evaluation_domain, "contingent derivative: direction leaves the domain at every step");
    }
    double lo = levels[finest].min;
    double hi = levels[finest].max;
    if (second >= 0) {
        lo = std::min(lo, levels[second].min);
        hi = std::max(hi, levels[second].max);
    }
    return upper ? hi : lo;
}

} // namespace

double epiderivative(const LyapunovCandidate& v, double t, const Vector& x, const Vector& f) {
    return contingent_estimate(v, t, x, f, false);
}

double hypoderivative(const LyapunovCandidate& v, double t, const Vector& x, const Vector& f) {
    return contingent_estimate(v, t, x, f, true);
}

} // namespace fts
