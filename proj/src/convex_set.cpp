#include "fts/convex_set.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace fts {

namespace {

void check_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) {
        raise(ErrorCode::invalid_argument, std::string(what) + ": coordinates must be finite");
    }
}

void check_box(const Box& b) {
    if (b.lower.size() != b.upper.size() || b.lower.size() == 0) {
        raise(ErrorCode::invalid_argument, "Box: bound dimensions mismatch or empty");
    }
    check_finite(b.lower, "Box");
    check_finite(b.upper, "Box");
    if (((b.upper - b.lower).array() < 0.0).any()) {
        raise(ErrorCode::invalid_argument, "Box: lower must not exceed upper");
    }
}

std::vector<Eigen::Index> free_dims(const Box& b) {
    std::vector<Eigen::Index> dims;
    for (Eigen::Index i = 0; i < b.lower.size(); ++i) {
        if (b.lower[i] < b.upper[i]) dims.push_back(i);
    }
    return dims;
}

Matrix box_corners(const Box& b, int max_dims) {
    const auto dims = free_dims(b);
    if (static_cast<int>(dims.size()) > max_dims) {
        raise(ErrorCode::vertex_cap, "vertices: 2^n corner enumeration above the configured cap");
    }
    const auto count = static_cast<Eigen::Index>(std::size_t{1} << dims.size());
    Matrix out(b.lower.size(), count);
    for (Eigen::Index mask = 0; mask < count; ++mask) {
        Vector c = b.lower;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if ((mask >> k) & 1) c[dims[k]] = b.upper[dims[k]];
        }
        out.col(mask) = c;
    }
    return out;
}

double support_box(const Box& b, const Eigen::Ref<const Vector>& d) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        acc += d[i] * (d[i] >= 0.0 ? b.upper[i] : b.lower[i]);
    }
    return acc;
}

} // namespace

ConvexSet make_singleton(Vector p) {
    check_finite(p, "Singleton");
    if (p.size() == 0) raise(ErrorCode::invalid_argument, "Singleton: empty point");
    return Singleton{std::move(p)};
}

ConvexSet make_box(Vector lower, Vector upper) {
    Box b{std::move(lower), std::move(upper)};
    check_box(b);
    return b;
}

ConvexSet make_polytope(Matrix verts) {
    if (verts.cols() == 0 || verts.rows() == 0) {
        raise(ErrorCode::invalid_argument, "VertexPolytope: vertex list must be nonempty");
    }
    if (!verts.allFinite()) {
        raise(ErrorCode::invalid_argument, "VertexPolytope: vertices must be finite");
    }
    return VertexPolytope{std::move(verts)};
}

ConvexSet make_affine_image(Matrix map, Vector offset, Box base) {
    check_box(base);
    if (map.cols() != base.lower.size() || map.rows() != offset.size()) {
        raise(ErrorCode::invalid_argument, "AffineImage: map/offset/base dimensions mismatch");
    }
    if (!map.allFinite() || !offset.allFinite()) {
        raise(ErrorCode::invalid_argument, "AffineImage: entries must be finite");
    }
    return AffineImage{std::move(map), std::move(offset), std::move(base)};
}

ConvexSet product_box(const std::vector<Interval>& intervals) {
    if (intervals.empty()) {
        raise(ErrorCode::invalid_argument, "product_box: need at least one interval");
    }
    Vector lo(static_cast<Eigen::Index>(intervals.size()));
    Vector hi(static_cast<Eigen::Index>(intervals.size()));
    bool all_degenerate = true;
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        if (intervals[i].empty()) {
            raise(ErrorCode::invalid_argument, "product_box: intervals must be nonempty");
        }
        lo[static_cast<Eigen::Index>(i)] = intervals[i].lo;
        hi[static_cast<Eigen::Index>(i)] = intervals[i].hi;
        all_degenerate = all_degenerate && intervals[i].degenerate();
    }
    if (all_degenerate) return make_singleton(lo);
    return make_box(std::move(lo), std::move(hi));
}

Eigen::Index dimension(const ConvexSet& s) {
    return std::visit(
        [](const auto& v) -> Eigen::Index {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                return v.point.size();
            } else if constexpr (std::is_same_v<T, Box>) {
                return v.lower.size();
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                return v.vertices.rows();
            } else {
                return v.offset.size();
            }
        },
        s);
}

Matrix vertices(const ConvexSet& s, int max_dims) {
    return std::visit(
        [max_dims](const auto& v) -> Matrix {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                return v.point;
            } else if constexpr (std::is_same_v<T, Box>) {
                return box_corners(v, max_dims);
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                return v.vertices;
            } else {
                const Matrix corners = box_corners(v.base, max_dims);
                Matrix out = v.map * corners;
                out.colwise() += v.offset;
                return out;
            }
        },
        s);
}

double support_value(const ConvexSet& s, const Eigen::Ref<const Vector>& d) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                return d.dot(v.point);
            } else if constexpr (std::is_same_v<T, Box>) {
                return support_box(v, d);
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                return (d.transpose() * v.vertices).maxCoeff();
            } else {
                return d.dot(v.offset) + support_box(v.base, v.map.transpose() * d);
            }
        },
        s);
}

double distance_to_hull(const Eigen::Ref<const Vector>& p, const Eigen::Ref<const Matrix>& points) {
    // Min-norm point in conv(points - p) by Wolfe's active-set method. The
    // corral stays affinely independent, so each affine minimizer is a small
    // dense solve.
    const Eigen::Index m = points.cols();
    Matrix d = points.colwise() - p;

    Eigen::Index best = 0;
    d.colwise().squaredNorm().minCoeff(&best);
    std::vector<Eigen::Index> corral{best};
    std::vector<double> weights{1.0};
    Vector x = d.col(best);

    const double scale = std::max(1.0, d.colwise().norm().maxCoeff());
    const double tol = 1e-13 * scale * scale;

    for (int major = 0; major < 16 * static_cast<int>(m) + 64; ++major) {
        // Most-improving vertex against the current iterate.
        Eigen::Index j = 0;
        const double drop = (x.transpose() * d).minCoeff(&j);
        if (drop >= x.squaredNorm() - tol) break;
        if (std::find(corral.begin(), corral.end(), j) == corral.end()) {
            corral.push_back(j);
            weights.push_back(0.0);
        }

        // Minor loop: pull the iterate to the affine minimizer of the corral,
        // dropping vertices whose weight would go negative.
        for (int minor = 0; minor < 8 * static_cast<int>(m) + 64; ++minor) {
            const auto k = static_cast<Eigen::Index>(corral.size());
            Matrix b(p.size(), k);
            for (Eigen::Index i = 0; i < k; ++i) b.col(i) = d.col(corral[static_cast<std::size_t>(i)]);

            Matrix kkt(k + 1, k + 1);
            kkt.topLeftCorner(k, k) = b.transpose() * b;
            kkt.topRightCorner(k, 1).setOnes();
            kkt.bottomLeftCorner(1, k).setOnes();
            kkt(k, k) = 0.0;
            Vector rhs = Vector::Zero(k + 1);
            rhs[k] = 1.0;
            const Vector sol = kkt.fullPivLu().solve(rhs);
            const Vector mu = sol.head(k);

            if ((mu.array() > 1e-12).all()) {
                x = b * mu;
                for (Eigen::Index i = 0; i < k; ++i) weights[static_cast<std::size_t>(i)] = mu[i];
                break;
            }

            double theta = 1.0;
            for (Eigen::Index i = 0; i < k; ++i) {
                const double wi = weights[static_cast<std::size_t>(i)];
                if (mu[i] <= 1e-12 && wi > mu[i]) {
                    theta = std::min(theta, wi / (wi - mu[i]));
                }
            }
            std::vector<Eigen::Index> next_corral;
            std::vector<double> next_weights;
            for (Eigen::Index i = 0; i < k; ++i) {
                const double w = (1.0 - theta) * weights[static_cast<std::size_t>(i)] + theta * mu[i];
                if (w > 1e-12) {
                    next_corral.push_back(corral[static_cast<std::size_t>(i)]);
                    next_weights.push_back(w);
                }
            }
            if (next_corral.empty()) {
                // Numerical corner: keep the heaviest vertex.
                Eigen::Index imax = 0;
                for (Eigen::Index i = 1; i < k; ++i) {
                    if (weights[static_cast<std::size_t>(i)] > weights[static_cast<std::size_t>(imax)]) imax = i;
                }
                next_corral.push_back(corral[static_cast<std::size_t>(imax)]);
                next_weights.push_back(1.0);
            }
            corral = std::move(next_corral);
            weights = std::move(next_weights);
            double total = 0.0;
            for (double w : weights) total += w;
            for (double& w : weights) w /= total;

            Matrix b2(p.size(), static_cast<Eigen::Index>(corral.size()));
            for (std::size_t i = 0; i < corral.size(); ++i) {
                b2.col(static_cast<Eigen::Index>(i)) = d.col(corral[i]);
            }
            x.setZero();
            for (std::size_t i = 0; i < corral.size(); ++i) {
                x += weights[i] * b2.col(static_cast<Eigen::Index>(i));
            }
        }
    }
    return x.norm();
}

double point_set_distance(const Eigen::Ref<const Vector>& p, const ConvexSet& s, int max_dims) {
    return std::visit(
        [&](const auto& v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Singleton>) {
                return (p - v.point).norm();
            } else if constexpr (std::is_same_v<T, Box>) {
                double acc = 0.0;
                for (Eigen::Index i = 0; i < p.size(); ++i) {
                    const double gap = p[i] < v.lower[i] ? v.lower[i] - p[i]
                                                         : (p[i] > v.upper[i] ? p[i] - v.upper[i] : 0.0);
                    acc += gap * gap;
                }
                return std::sqrt(acc);
            } else if constexpr (std::is_same_v<T, VertexPolytope>) {
                return distance_to_hull(p, v.vertices);
            } else {
                return distance_to_hull(p, vertices(s, max_dims));
            }
        },
        s);
}

double set_magnitude(const ConvexSet& s, int max_dims) {
    return vertices(s, max_dims).colwise().norm().maxCoeff();
}

} // namespace fts
