#pragma once

#include <Eigen/Core>

#include <limits>
#include <stdexcept>
#include <string>

namespace fts {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Closed scalar interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool empty() const noexcept { return !(lo <= hi); }
    [[nodiscard]] bool degenerate() const noexcept { return lo == hi; }
    [[nodiscard]] double width() const noexcept { return hi - lo; }
    [[nodiscard]] double clamp(double x) const noexcept {
        return x < lo ? lo : (x > hi ? hi : x);
    }
};

enum class ErrorCode {
    invalid_argument,     // malformed input, broken preconditions
    malformed_samples,    // unordered or negative sample data
    divergent_integral,   // quadrature did not converge (integrand not integrable)
    vertex_cap,           // 2^n vertex enumeration above the configured cap
    evaluation_domain,    // function probed outside its declared domain
    missing_lipschitz,    // strong-mode check without the Lipschitz flag
    no_basin,             // basin estimate failed (V_eps <= 0 or tail mass too small)
    assumption_violation, // a standing model inequality failed on the validation grid
    blow_up,              // state exceeded the a priori growth envelope
    min_step,             // step control stalled at the minimum step
    unsettled,            // settling verification on a trajectory that never settled
};

/// Library-wide exception carrying a machine-readable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what_arg)
        : std::runtime_error(what_arg), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

} // namespace fts
