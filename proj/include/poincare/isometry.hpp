#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "poincare/space.hpp"

namespace poincare {

// Unified linear representation on R^{n+1}: affine block form for R^n,
// orthogonal matrices for S^n, Lorentz matrices acting on the upper
// hyperboloid sheet for H^n. Composition and inversion are matrix
// operations in every geometry.
struct Isometry {
    Space space;  // canonical chart
    Eigen::MatrixXd matrix;

    Isometry() = default;
    Isometry(const Space& s, Eigen::MatrixXd m) : space(s.canonical()), matrix(std::move(m)) {
        require(matrix.rows() == space.rep_dim() && matrix.cols() == space.rep_dim(),
                "E_ISOMETRY", "matrix size does not match space");
    }

    static Isometry identity(const Space& s) {
        return Isometry(s, Eigen::MatrixXd::Identity(s.rep_dim(), s.rep_dim()));
    }
};

inline Isometry compose(const Isometry& g, const Isometry& h) {
    require(g.space == h.space, "E_SPACE", "compose requires the same space");
    return Isometry(g.space, g.matrix * h.matrix);
}

inline Isometry inverse(const Isometry& g) {
    const int m = g.space.rep_dim();
    switch (g.space.kind) {
        case Kind::euclidean: {
            // [A t; 0 1]^-1 = [A^T, -A^T t; 0 1]
            Eigen::MatrixXd inv = Eigen::MatrixXd::Identity(m, m);
            Eigen::MatrixXd a = g.matrix.topLeftCorner(m - 1, m - 1);
            Eigen::VectorXd t = g.matrix.topRightCorner(m - 1, 1);
            inv.topLeftCorner(m - 1, m - 1) = a.transpose();
            inv.topRightCorner(m - 1, 1) = -a.transpose() * t;
            return Isometry(g.space, inv);
        }
        case Kind::spherical: return Isometry(g.space, g.matrix.transpose());
        case Kind::hyperbolic: {
            Eigen::MatrixXd j = lorentz_form(m);
            return Isometry(g.space, j * g.matrix.transpose() * j);
        }
    }
    return g;
}

inline bool valid_isometry(const Isometry& g, double tol = 1e-9) {
    const int m = g.space.rep_dim();
    if (!g.matrix.allFinite()) return false;
    switch (g.space.kind) {
        case Kind::euclidean: {
            Eigen::MatrixXd a = g.matrix.topLeftCorner(m - 1, m - 1);
            if ((a.transpose() * a - Eigen::MatrixXd::Identity(m - 1, m - 1)).cwiseAbs().maxCoeff() > tol)
                return false;
            if (g.matrix.row(m - 1).head(m - 1).cwiseAbs().maxCoeff() > tol) return false;
            return std::abs(g.matrix(m - 1, m - 1) - 1.0) <= tol;
        }
        case Kind::spherical:
            return (g.matrix.transpose() * g.matrix - Eigen::MatrixXd::Identity(m, m))
                       .cwiseAbs()
                       .maxCoeff() <= tol;
        case Kind::hyperbolic: {
            Eigen::MatrixXd j = lorentz_form(m);
            if ((g.matrix.transpose() * j * g.matrix - j).cwiseAbs().maxCoeff() > tol) return false;
            return g.matrix(m - 1, m - 1) > 0.0;  // preserves the upper sheet
        }
    }
    return false;
}

namespace detail {

inline Eigen::VectorXd apply_canonical(const Isometry& g, const Eigen::VectorXd& x) {
    if (g.space.kind == Kind::euclidean) {
        const int n = g.space.dim;
        return g.matrix.topLeftCorner(n, n) * x + g.matrix.topRightCorner(n, 1);
    }
    return renormalize_canonical(g.space, g.matrix * x);
}

}  // namespace detail

inline Point apply(const Isometry& g, const Point& x) {
    require(g.space.same_geometry(x.space), "E_SPACE", "apply requires the same geometry");
    Eigen::VectorXd c = detail::apply_canonical(g, detail::to_canonical_coords(x));
    return Point(x.space, detail::from_canonical_coords(x.space, c));
}

// n+2 affinely independent probe points near the basepoint; an isometry of a
// constant-curvature space is pinned down by the images of n+1 generic points,
// the extra one guards orientation.
inline std::vector<Point> probe_points(const Space& s) {
    Space cs = s.canonical();
    const int n = cs.dim;
    Point base = basepoint(cs);
    std::vector<Point> probes;
    probes.push_back(base);
    auto push = [&](const Eigen::VectorXd& dir) {
        Eigen::VectorXd c = base.coords;
        if (cs.kind == Kind::euclidean) {
            c += dir;
        } else {
            c.head(n) += dir;
            c = detail::renormalize_canonical(cs, c);
        }
        probes.emplace_back(cs, c);
    };
    for (int i = 0; i < n; ++i) push(Eigen::VectorXd::Unit(n, i) * 0.75);
    push(Eigen::VectorXd::Constant(n, 0.4));
    return probes;
}

// True iff g and h act identically, tested as the sup over a fixed probe set.
inline bool iso_eq(const Isometry& g, const Isometry& h, double tol = 1e-9) {
    require(g.space == h.space, "E_SPACE", "iso_eq requires the same space");
    for (const Point& p : probe_points(g.space)) {
        if (dist(apply(g, p), apply(h, p)) > tol) return false;
    }
    return true;
}

inline bool is_identity(const Isometry& g, double tol = 1e-9) {
    return iso_eq(g, Isometry::identity(g.space), tol);
}

// --- builders ---

inline Isometry euclidean_isometry(const Space& s, const Eigen::MatrixXd& orthogonal,
                                   const Eigen::VectorXd& translation) {
    require(s.kind == Kind::euclidean, "E_SPACE", "euclidean_isometry needs a euclidean space");
    const int n = s.dim;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n + 1, n + 1);
    m.topLeftCorner(n, n) = orthogonal;
    m.topRightCorner(n, 1) = translation;
    return Isometry(s, m);
}

inline Isometry translation(const Space& s, const Eigen::VectorXd& v) {
    return euclidean_isometry(s, Eigen::MatrixXd::Identity(s.dim, s.dim), v);
}

// Rotation by theta in the plane of the first two coordinates, fixing the
// basepoint (origin / pole / hyperboloid apex).
inline Isometry rotation_about_basepoint(const Space& s, double theta) {
    require(s.dim >= 2, "E_SPACE", "rotation needs dim >= 2");
    const int m = s.rep_dim();
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m);
    r(0, 0) = std::cos(theta);
    r(0, 1) = -std::sin(theta);
    r(1, 0) = std::sin(theta);
    r(1, 1) = std::cos(theta);
    if (s.kind == Kind::euclidean) {
        Eigen::MatrixXd a = Eigen::MatrixXd::Identity(s.dim, s.dim);
        a.topLeftCorner(2, 2) = r.topLeftCorner(2, 2);
        return euclidean_isometry(s, a, Eigen::VectorXd::Zero(s.dim));
    }
    return Isometry(s, r);
}

// Dimension-2 bridge: the PSL(2,R) action on the upper half-plane in the
// Lorentz picture, via conjugation on symmetric matrices of determinant one.
// Normalized so that z = x + iy in the half-space chart and the chart
// conversion chain agree.
inline Isometry lorentz_from_moebius(double a, double b, double c, double d) {
    double det = a * d - b * c;
    require(std::abs(det) > 1e-12, "E_ISOMETRY", "singular Moebius matrix");
    double s = 1.0 / std::sqrt(std::abs(det));
    require(det > 0.0, "E_ISOMETRY", "orientation-reversing Moebius matrix not supported here");
    a *= s; b *= s; c *= s; d *= s;
    // coordinates of sym(2): X = [p q; q r], x1 = q, x2 = (r - p)/2, x3 = (p + r)/2
    auto to_x = [](const Eigen::Matrix2d& X) {
        return Eigen::Vector3d(X(0, 1), (X(1, 1) - X(0, 0)) / 2.0, (X(0, 0) + X(1, 1)) / 2.0);
    };
    auto from_x = [](const Eigen::Vector3d& x) {
        Eigen::Matrix2d X;
        X << x(2) - x(1), x(0), x(0), x(2) + x(1);
        return X;
    };
    Eigen::Matrix2d g;
    g << a, b, c, d;
    Eigen::Matrix3d L;
    for (int i = 0; i < 3; ++i) {
        Eigen::Matrix2d Xi = from_x(Eigen::Vector3d::Unit(i));
        L.col(i) = to_x(g * Xi * g.transpose());
    }
    return Isometry(Space::hyperbolic(2), L);
}

// Half-plane point (x, y) as a Point in the half-space chart of H^2.
inline Point half_plane_point(double x, double y) {
    return Point(Space::hyperbolic(2, Chart::half_space), Eigen::Vector2d(x, y));
}

}  // namespace poincare
