#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "poincare/isometry.hpp"
#include "poincare/space.hpp"

namespace poincare {

enum class Side { interior, boundary, outside };

// Closed half-space {x : <nu, x> <= c} in the canonical chart. The pairing is
// the affine inequality for R^n, the Euclidean inner product with c = 0 for
// S^n, and the Lorentz inner product with a space-like normal and c = 0 for
// H^n. Normals are normalized on construction (unit norm under the relevant
// positive form), so predicate values carry a distance-like scale.
struct HalfSpace {
    Space space;
    Eigen::VectorXd normal;
    double offset = 0.0;

    HalfSpace() = default;
    HalfSpace(const Space& s, Eigen::VectorXd nu, double c = 0.0)
        : space(s.canonical()), normal(std::move(nu)), offset(c) {
        const int want = space.kind == Kind::euclidean ? space.dim : space.dim + 1;
        require(normal.size() == want, "E_HALFSPACE", "normal length does not match geometry");
        double q;
        switch (space.kind) {
            case Kind::euclidean: q = normal.squaredNorm(); break;
            case Kind::spherical:
                require(std::abs(offset) <= 1e-12, "E_HALFSPACE",
                        "spherical half-spaces have offset 0");
                offset = 0.0;
                q = normal.squaredNorm();
                break;
            case Kind::hyperbolic:
                require(std::abs(offset) <= 1e-12, "E_HALFSPACE",
                        "hyperbolic half-spaces have offset 0");
                offset = 0.0;
                q = lorentz_inner(normal, normal);
                require(q > 0.0, "E_HALFSPACE", "hyperbolic normal must be space-like");
                break;
        }
        require(q > 1e-24, "E_HALFSPACE", "degenerate normal");
        double scale = 1.0 / std::sqrt(q);
        normal *= scale;
        offset *= scale;
    }

    // signed predicate value at canonical coordinates; negative inside
    double value_canonical(const Eigen::VectorXd& x) const {
        if (space.kind == Kind::hyperbolic) return lorentz_inner(normal, x);
        return normal.dot(x) - offset;
    }

    double value(const Point& p) const {
        require(space.same_geometry(p.space), "E_SPACE", "half-space and point geometry differ");
        return value_canonical(detail::to_canonical_coords(p));
    }

    HalfSpace complement() const { return HalfSpace(space, -normal, -offset); }
};

inline Side side_test(const HalfSpace& z, const Point& x, double tol = 1e-9) {
    double v = z.value(x);
    if (std::abs(v) <= tol) return Side::boundary;
    return v < 0.0 ? Side::interior : Side::outside;
}

// Image g(Z) as a half-space. For the orthogonal and Lorentz representations
// the transformed normal is M * nu; the affine case also shifts the offset.
inline HalfSpace transform(const Isometry& g, const HalfSpace& z) {
    require(g.space.same_geometry(z.space), "E_SPACE", "isometry and half-space geometry differ");
    if (z.space.kind == Kind::euclidean) {
        const int n = z.space.dim;
        Eigen::VectorXd nu = g.matrix.topLeftCorner(n, n) * z.normal;
        Eigen::VectorXd t = g.matrix.topRightCorner(n, 1);
        return HalfSpace(z.space, nu, z.offset + nu.dot(t));
    }
    return HalfSpace(z.space, g.matrix * z.normal);
}

// {z : d(z, x) <= d(z, y)} — in every geometry the equidistant hyperplane has
// normal y - x (in canonical coordinates, under the geometry's own form).
inline HalfSpace bisector(const Point& x, const Point& y) {
    require(x.space == y.space, "E_SPACE", "bisector needs points of one space");
    require(!antipodal(x, y), "E_ANTIPODAL", "bisector of antipodal points is not unique");
    Eigen::VectorXd u = detail::to_canonical_coords(x);
    Eigen::VectorXd v = detail::to_canonical_coords(y);
    Eigen::VectorXd nu = v - u;
    require(nu.norm() > 1e-12, "E_HALFSPACE", "bisector of coincident points");
    double c = 0.0;
    if (x.space.kind == Kind::euclidean) c = (v.squaredNorm() - u.squaredNorm()) / 2.0;
    return HalfSpace(x.space, nu, c);
}

// Reflection across the boundary hyperplane of z.
inline Isometry reflection(const HalfSpace& z) {
    const Space s = z.space;
    const int m = s.rep_dim();
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(m, m);
    switch (s.kind) {
        case Kind::euclidean: {
            const int n = s.dim;
            r.topLeftCorner(n, n) -= 2.0 * z.normal * z.normal.transpose();
            r.topRightCorner(n, 1) = 2.0 * z.offset * z.normal;
            break;
        }
        case Kind::spherical:
            r -= 2.0 * z.normal * z.normal.transpose();
            break;
        case Kind::hyperbolic:
            r -= 2.0 * z.normal * (lorentz_form(m) * z.normal).transpose();
            break;
    }
    return Isometry(s, r);
}

}  // namespace poincare
