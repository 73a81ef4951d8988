#pragma once

#include "fts/lyapunov.hpp"

namespace fts {

/// Contingent epiderivative of V at (t, x) along the direction (1, f): the
/// liminf of forward difference quotients over shrinking steps and direction
/// perturbations. With a gradient it is V_t + <V_x, f> exactly; otherwise the
/// estimate is the minimum quotient over the smallest valid steps of the grid
/// h in {1e-2, ..., 1e-8} with a perturbation ball of radius h^1.5. The
/// surrogate is biased toward the liminf but carries no guarantee for
/// pathological V.
double epiderivative(const LyapunovCandidate& v, double t, const Vector& x, const Vector& f);

/// Contingent hypoderivative (limsup counterpart); identical sample set with a
/// max aggregation, so epiderivative <= hypoderivative by construction.
double hypoderivative(const LyapunovCandidate& v, double t, const Vector& x, const Vector& f);

} // namespace fts
