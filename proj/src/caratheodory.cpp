#include "fts/caratheodory.hpp"

namespace fts {

double growth_residual(const CaratheodoryMap& map, double t, const Vector& x) {
    const ConvexSet value = map(t, x);
    return set_magnitude(value) - map.growth(t) * (1.0 + x.norm());
}

double equilibrium_residual(const CaratheodoryMap& map, double t) {
    const Vector origin = Vector::Zero(map.dim);
    return point_set_distance(origin, map(t, origin));
}

} // namespace fts
