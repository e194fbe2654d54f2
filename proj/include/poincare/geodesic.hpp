#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "poincare/space.hpp"

namespace poincare {

// Constant-speed point on the geodesic [x, y] at parameter t in [0, 1].
// Coincident endpoints fail softly and return x; antipodal spherical
// endpoints have no unique geodesic and are rejected.
inline Point geodesic_point(const Point& x, const Point& y, double t) {
    require(x.space == y.space, "E_SPACE", "geodesic endpoints must share a space and chart");
    if (x.space.kind == Kind::spherical)
        require(!antipodal(x, y), "E_ANTIPODAL", "antipodal endpoints have no unique geodesic");
    Eigen::VectorXd u = detail::to_canonical_coords(x);
    Eigen::VectorXd v = detail::to_canonical_coords(y);
    Space cs = x.space.canonical();
    Eigen::VectorXd c;
    switch (cs.kind) {
        case Kind::euclidean: c = u + t * (v - u); break;
        case Kind::spherical: {
            double theta = dist(Point(cs, u), Point(cs, v));
            if (theta <= 1e-15) return x;
            double s = std::sin(theta);
            c = (std::sin((1.0 - t) * theta) * u + std::sin(t * theta) * v) / s;
            c = detail::renormalize_canonical(cs, c);
            break;
        }
        case Kind::hyperbolic: {
            double d = dist(Point(cs, u), Point(cs, v));
            if (d <= 1e-15) return x;
            double s = std::sinh(d);
            c = (std::sinh((1.0 - t) * d) * u + std::sinh(t * d) * v) / s;
            c = detail::renormalize_canonical(cs, c);
            break;
        }
    }
    return Point(x.space, detail::from_canonical_coords(x.space, c));
}

struct GeodesicSegment {
    Point x, y;

    GeodesicSegment(Point a, Point b) : x(std::move(a)), y(std::move(b)) {
        require(x.space == y.space, "E_SPACE", "geodesic endpoints must share a space and chart");
        if (x.space.kind == Kind::spherical)
            require(!antipodal(x, y), "E_ANTIPODAL", "antipodal endpoints have no unique geodesic");
    }

    double length() const { return dist(x, y); }
    Point point_at(double t) const { return geodesic_point(x, y, t); }
};

}  // namespace poincare
