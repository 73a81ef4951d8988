#include "fts/quadrature.hpp"

#include <cmath>

namespace fts {

namespace {

struct SimpsonState {
    const std::function<double(double)>& f;
    QuadratureOptions opts;
    bool converged = true;
};

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

double recurse(SimpsonState& st, double a, double b, double fa, double fm, double fb,
               double whole, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = st.f(lm);
    const double frm = st.f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    const double tol = std::max(st.opts.abs_tol, st.opts.rel_tol * std::abs(left + right));
    if (std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    if (depth >= st.opts.max_depth) {
        st.converged = false;
        return left + right;
    }
    return recurse(st, a, m, fa, flm, fm, left, depth + 1) +
           recurse(st, m, b, fm, frm, fb, right, depth + 1);
}

} // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts) {
    if (a == b) return 0.0;
    SimpsonState st{f, opts};
    const double fa = f(a);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fm) || !std::isfinite(fb)) {
        raise(ErrorCode::divergent_integral, "quadrature: integrand not finite on [a,b]");
    }
    const double whole = simpson(fa, fm, fb, b - a);
    const double result = recurse(st, a, b, fa, fm, fb, whole, 0);
    if (!st.converged || !std::isfinite(result)) {
        raise(ErrorCode::divergent_integral, "quadrature: no convergence at max depth");
    }
    return result;
}

} // namespace fts
