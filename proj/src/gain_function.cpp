#include "fts/gain_function.hpp"

#include <algorithm>
#include <cmath>

namespace fts {

namespace {

void check_nonnegative(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            raise(ErrorCode::invalid_argument, std::string(what) + ": values must be finite and >= 0");
        }
    }
}

void check_increasing(const std::vector<double>& t, const char* what) {
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) {
            raise(ErrorCode::invalid_argument, std::string(what) + ": abscissae must be strictly increasing");
        }
    }
    if (!t.empty() && t.front() < 0.0) {
        raise(ErrorCode::invalid_argument, std::string(what) + ": domain starts below 0");
    }
}

} // namespace

GainFunction GainFunction::power(double alpha, double scale) {
    if (!(alpha > -1.0)) {
        raise(ErrorCode::invalid_argument, "GainFunction::power: alpha must exceed -1 for local integrability");
    }
    if (!(scale >= 0.0)) {
        raise(ErrorCode::invalid_argument, "GainFunction::power: scale must be >= 0");
    }
    GainFunction g;
    g.kind_ = Kind::power;
    g.alpha_ = alpha;
    g.scale_ = scale;
    return g;
}

GainFunction GainFunction::exponential(double delta, double rate) {
    if (!(delta >= 0.0)) {
        raise(ErrorCode::invalid_argument, "GainFunction::exponential: delta must be >= 0");
    }
    GainFunction g;
    g.kind_ = Kind::exponential;
    g.scale_ = delta;
    g.rate_ = rate;
    return g;
}

GainFunction GainFunction::step(std::vector<double> breaks, std::vector<double> values) {
    if (breaks.size() != values.size() + 1 || values.empty()) {
        raise(ErrorCode::invalid_argument, "GainFunction::step: need one more breakpoint than values");
    }
    check_increasing(breaks, "GainFunction::step");
    check_nonnegative(values, "GainFunction::step");
    GainFunction g;
    g.kind_ = Kind::step;
    g.t_ = std::move(breaks);
    g.v_ = std::move(values);
    return g;
}

GainFunction GainFunction::table(std::vector<double> t, std::vector<double> v) {
    if (t.size() != v.size() || t.size() < 2) {
        raise(ErrorCode::invalid_argument, "GainFunction::table: need matching arrays with >= 2 samples");
    }
    check_increasing(t, "GainFunction::table");
    check_nonnegative(v, "GainFunction::table");
    GainFunction g;
    g.kind_ = Kind::table;
    g.t_ = std::move(t);
    g.v_ = std::move(v);
    return g;
}

double GainFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::power:
            if (t < 0.0) return 0.0;
            if (alpha_ == 0.0) return scale_;
            return scale_ * std::pow(t, alpha_);
        case Kind::exponential:
            return scale_ * std::exp(rate_ * t);
        case Kind::step: {
            if (t < t_.front() || t >= t_.back()) return 0.0;
            const auto it = std::upper_bound(t_.begin(), t_.end(), t);
            const auto idx = static_cast<std::size_t>(it - t_.begin()) - 1;
            return v_[idx];
        }
        case Kind::table: {
            if (t < t_.front() || t > t_.back()) return 0.0;
            const auto it = std::upper_bound(t_.begin(), t_.end(), t);
            if (it == t_.end()) return v_.back();
            const auto hi = static_cast<std::size_t>(it - t_.begin());
            if (hi == 0) return v_.front();
            const double w = (t - t_[hi - 1]) / (t_[hi] - t_[hi - 1]);
            return v_[hi - 1] + w * (v_[hi] - v_[hi - 1]);
        }
    }
    return 0.0;
}

double GainFunction::integral(double t0, double t1) const {
    if (!(t0 <= t1)) {
        raise(ErrorCode::invalid_argument, "GainFunction::integral: t0 must not exceed t1");
    }
    if (std::isinf(t1)) {
        return tail_mass(t0);
    }
    if (t0 == t1) return 0.0;
    switch (kind_) {
        case Kind::power: {
            const double a = std::max(t0, 0.0);
            if (t1 <= 0.0) return 0.0;
            const double p = alpha_ + 1.0;
            return scale_ * (std::pow(t1, p) - std::pow(a, p)) / p;
        }
        case Kind::exponential: {
            if (rate_ == 0.0) return scale_ * (t1 - t0);
            return scale_ / rate_ * (std::exp(rate_ * t1) - std::exp(rate_ * t0));
        }
        case Kind::step: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
                const double lo = std::max(t0, t_[i]);
                const double hi = std::min(t1, t_[i + 1]);
                if (hi > lo) acc += v_[i] * (hi - lo);
            }
            return acc;
        }
        case Kind::table: {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < t_.size(); ++i) {
                const double lo = std::max(t0, t_[i]);
                const double hi = std::min(t1, t_[i + 1]);
                if (hi <= lo) continue;
                const double slope = (v_[i + 1] - v_[i]) / (t_[i + 1] - t_[i]);
                const double vlo = v_[i] + slope * (lo - t_[i]);
                const double vhi = v_[i] + slope * (hi - t_[i]);
                acc += 0.5 * (vlo + vhi) * (hi - lo);
            }
            return acc;
        }
    }
    return 0.0;
}

double GainFunction::tail_mass(double t0) const {
    switch (kind_) {
        case Kind::power:
            return scale_ == 0.0 ? 0.0 : kInfinity;
        case Kind::exponential:
            if (scale_ == 0.0) return 0.0;
            if (rate_ >= 0.0) return kInfinity;
            return -scale_ / rate_ * std::exp(rate_ * t0);
        case Kind::step:
        case Kind::table:
            // Zero beyond the last sample, so the tail is a finite integral.
            if (t0 >= t_.back()) return 0.0;
            return integral(t0, t_.back());
    }
    return 0.0;
}

} // namespace fts
