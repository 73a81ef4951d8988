#include "fts/lyapunov.hpp"

#include <cmath>

namespace fts {

double rate_growth_residual(const RateFunctionW& w, double t, const Vector& x) {
    if (!w.envelope) return -kInfinity;
    return std::abs(w.value(t, x)) - (*w.envelope)(t) * (1.0 + x.norm());
}

void validate_lyapunov(const LyapunovCandidate& v, const std::vector<double>& times,
                       const std::vector<Vector>& states, double tol) {
    for (double t : times) {
        for (const Vector& x : states) {
            const double val = v(t, x);
            if (!std::isfinite(val) || val < -tol) {
                raise(ErrorCode::invalid_argument, "validate_lyapunov: V must be finite and >= 0");
            }
            const double r = x.norm();
            if (r == 0.0 && std::abs(val) > tol) {
                raise(ErrorCode::invalid_argument, "validate_lyapunov: V(t, 0) must vanish");
            }
            if (r > 0.0 && v.positive_definite && !(val > 0.0)) {
                raise(ErrorCode::invalid_argument, "validate_lyapunov: positive definiteness fails at a sample");
            }
            if (v.radial_lower_bound && val < v.radial_lower_bound(r) - tol) {
                raise(ErrorCode::invalid_argument, "validate_lyapunov: radial lower bound fails at a sample");
            }
        }
    }
}

} // namespace fts
