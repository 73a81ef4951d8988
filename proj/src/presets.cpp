#include "fts/presets.hpp"

#include <cmath>

namespace fts {

namespace {

LyapunovCandidate abs_candidate() {
    LyapunovCandidate v;
    v.value = [](double, const Vector& x) { return x.norm(); };
    v.gradient = [](double, const Vector& x) {
        LyapunovGradient g;
        g.dt = 0.0;
        g.dx = x / x.norm();
        return g;
    };
    v.positive_definite = true;
    v.lipschitz = true;
    v.radially_unbounded = true;
    v.radial_lower_bound = [](double r) { return r; };
    return v;
}

LyapunovCandidate quadratic_candidate() {
    LyapunovCandidate v;
    v.value = [](double, const Vector& x) { return x.squaredNorm(); };
    v.gradient = [](double, const Vector& x) {
        LyapunovGradient g;
        g.dt = 0.0;
        g.dx = 2.0 * x;
        return g;
    };
    v.positive_definite = true;
    v.lipschitz = true;
    v.radially_unbounded = true;
    v.radial_lower_bound = [](double r) { return r * r; };
    return v;
}

} // namespace

SystemBundle make_sign_1d() {
    SystemBundle out;
    out.name = "sign-1d";
    const MonotoneScalarFunction sign_fn = make_monotone(
        [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); },
        {MonotoneScalarFunction::Jump{0.0, -1.0, 1.0}});
    out.map.dim = 1;
    out.map.growth = GainFunction::constant(1.0);
    out.map.equilibrium = true;
    out.map.evaluate = [sign_fn](double, const Vector& x) {
        const Interval iv = filippov_interval(sign_fn, x[0]);
        Vector lo(1), hi(1);
        lo[0] = -iv.hi;
        hi[0] = -iv.lo;
        if (lo[0] == hi[0]) return make_singleton(lo);
        return make_box(lo, hi);
    };
    out.lyapunov = abs_candidate();
    out.rate = RateSpec{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
    out.domain_radius = 1.0;
    return out;
}

SystemBundle make_repeller_1d() {
    SystemBundle out;
    out.name = "repeller-1d";
    out.map.dim = 1;
    out.map.growth = GainFunction::constant(1.0);
    out.map.equilibrium = true;
    out.map.evaluate = [](double, const Vector& x) { return make_singleton(x); };
    out.lyapunov = quadratic_candidate();
    out.rate = RateSpec{GainFunction::constant(1.0), ComparisonNonlinearity::power(0.5)};
    out.domain_radius = 1.0;
    return out;
}

SystemBundle make_zero_field_1d() {
    SystemBundle out;
    out.name = "zero-field-1d";
    out.map.dim = 1;
    out.map.growth = GainFunction::constant(0.0);
    out.map.equilibrium = true;
    out.map.evaluate = [](double, const Vector& x) {
        return make_singleton(Vector::Zero(x.size()));
    };
    out.lyapunov = quadratic_candidate();
    out.rate = RateSpec{GainFunction::constant(0.0), ComparisonNonlinearity::power(0.5)};
    out.domain_radius = 1.0;
    return out;
}

SystemBundle make_hopfield_bundle(HopfieldSpec spec, std::string name) {
    SystemBundle out;
    out.name = std::move(name);
    out.hopfield = build(std::move(spec));
    out.map = out.hopfield->inclusion;
    out.lyapunov = out.hopfield->lyapunov;
    out.rate = out.hopfield->rate;
    out.domain_radius = out.hopfield->spec.rho;
    return out;
}

} // namespace fts
