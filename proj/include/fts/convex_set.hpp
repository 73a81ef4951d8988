#pragma once

#include "fts/types.hpp"

#include <variant>
#include <vector>

namespace fts {

struct Singleton {
    Vector point;
};

/// Axis-aligned box [lower, upper], nonempty componentwise.
struct Box {
    Vector lower;
    Vector upper;
};

/// Convex hull of finitely many points, one column per vertex.
struct VertexPolytope {
    Matrix vertices;
};

/// { map * u + offset : u in base }. This is the natural value of a Filippov
/// regularized right-hand side: a matrix applied to a box of activations.
struct AffineImage {
    Matrix map;
    Vector offset;
    Box base;
};

/// Nonempty compact convex value of a set-valued map.
using ConvexSet = std::variant<Singleton, Box, VertexPolytope, AffineImage>;

inline constexpr int kDefaultVertexDimCap = 20;

ConvexSet make_singleton(Vector p);
ConvexSet make_box(Vector lower, Vector upper);
ConvexSet make_polytope(Matrix vertices);
ConvexSet make_affine_image(Matrix map, Vector offset, Box base);

/// Cartesian product of scalar intervals. Collapses to a singleton when every
/// interval is degenerate.
ConvexSet product_box(const std::vector<Interval>& intervals);

[[nodiscard]] Eigen::Index dimension(const ConvexSet& s);

/// Extreme points, one column per vertex, deduplicated when box sides
/// collapse. Throws Error(vertex_cap) when the number of non-degenerate box
/// dimensions exceeds max_dims (2^n corners blow up).
[[nodiscard]] Matrix vertices(const ConvexSet& s, int max_dims = kDefaultVertexDimCap);

/// max over s of <d, .>; equals the maximum over vertices and is evaluated
/// without enumerating them where possible.
[[nodiscard]] double support_value(const ConvexSet& s, const Eigen::Ref<const Vector>& d);

/// Euclidean distance from p to s; zero exactly when p lies in s. Boxes clamp
/// coordinatewise; polytopes run a min-norm-point active-set projection.
[[nodiscard]] double point_set_distance(const Eigen::Ref<const Vector>& p, const ConvexSet& s,
                                        int max_dims = kDefaultVertexDimCap);

/// sup { |f| : f in s }. The norm is convex, so the sup sits on a vertex.
[[nodiscard]] double set_magnitude(const ConvexSet& s, int max_dims = kDefaultVertexDimCap);

/// Distance from p to the convex hull of the given points (one per column).
[[nodiscard]] double distance_to_hull(const Eigen::Ref<const Vector>& p,
                                      const Eigen::Ref<const Matrix>& points);

} // namespace fts
