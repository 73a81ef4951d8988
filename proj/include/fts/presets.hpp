#pragma once

#include "fts/hopfield.hpp"

#include <optional>
#include <string>

namespace fts {

/// A ready-to-run system: inclusion plus optional certificate data.
struct SystemBundle {
    std::string name;
    CaratheodoryMap map;
    std::optional<LyapunovCandidate> lyapunov;
    std::optional<RateSpec> rate;
    double domain_radius = 1.0;
    std::optional<HopfieldSystem> hopfield;
};

/// x' in -Filippov[sign](x) on the line, V = |x|, c = 1, g = sqrt(v).
SystemBundle make_sign_1d();

/// Repelling field F(t,x) = {x} with V = x^2; the canonical negative control.
SystemBundle make_repeller_1d();

/// F(t,x) = {0}: nothing moves, nothing settles.
SystemBundle make_zero_field_1d();

/// Wraps a built neural-network system as a bundle.
SystemBundle make_hopfield_bundle(HopfieldSpec spec, std::string name);

} // namespace fts
