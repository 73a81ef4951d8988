#pragma once

#include "fts/types.hpp"

#include <functional>

namespace fts {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-11;
    int max_depth = 48;
};

/// Adaptive Simpson quadrature of f over the finite interval [a, b].
/// Throws Error(divergent_integral) when the recursion exhausts max_depth
/// without meeting the tolerance, which is how non-integrable singularities
/// surface in practice.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const QuadratureOptions& opts = {});

} // namespace fts
