#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "poincare/common.hpp"

namespace poincare {

enum class Kind { euclidean, spherical, hyperbolic };

enum class Chart { cartesian, sphere_embedded, half_space, ball, klein, hyperboloid };

inline std::string to_string(Kind k) {
    switch (k) {
        case Kind::euclidean: return "euclidean";
        case Kind::spherical: return "spherical";
        case Kind::hyperbolic: return "hyperbolic";
    }
    return "?";
}

inline std::string to_string(Chart c) {
    switch (c) {
        case Chart::cartesian: return "cartesian";
        case Chart::sphere_embedded: return "sphere-embedded";
        case Chart::half_space: return "half-space";
        case Chart::ball: return "ball";
        case Chart::klein: return "klein";
        case Chart::hyperboloid: return "hyperboloid";
    }
    return "?";
}

inline bool chart_compatible(Kind k, Chart c) {
    switch (k) {
        case Kind::euclidean: return c == Chart::cartesian;
        case Kind::spherical: return c == Chart::sphere_embedded;
        case Kind::hyperbolic:
            return c == Chart::half_space || c == Chart::ball || c == Chart::klein ||
                   c == Chart::hyperboloid;
    }
    return false;
}

struct Space {
    Kind kind = Kind::euclidean;
    int dim = 2;
    Chart chart = Chart::cartesian;

    Space() = default;
    Space(Kind k, int n, Chart c) : kind(k), dim(n), chart(c) {
        require(n >= 1, "E_SPACE", "dimension must be positive");
        require(chart_compatible(k, c),
                "E_SPACE", "chart " + to_string(c) + " incompatible with " + to_string(k));
    }

    static Space euclidean(int n) { return Space(Kind::euclidean, n, Chart::cartesian); }
    static Space spherical(int n) { return Space(Kind::spherical, n, Chart::sphere_embedded); }
    static Space hyperbolic(int n, Chart c = Chart::hyperboloid) {
        return Space(Kind::hyperbolic, n, c);
    }

    Chart canonical_chart() const {
        switch (kind) {
            case Kind::euclidean: return Chart::cartesian;
            case Kind::spherical: return Chart::sphere_embedded;
            case Kind::hyperbolic: return Chart::hyperboloid;
        }
        return Chart::cartesian;
    }

    Space canonical() const { return Space(kind, dim, canonical_chart()); }
    bool is_canonical() const { return chart == canonical_chart(); }

    // length of coordinate vectors in this chart
    int ambient_dim() const {
        switch (chart) {
            case Chart::cartesian:
            case Chart::half_space:
            case Chart::ball:
            case Chart::klein: return dim;
            case Chart::sphere_embedded:
            case Chart::hyperboloid: return dim + 1;
        }
        return dim;
    }

    // size of the unified linear representation of isometries
    int rep_dim() const { return dim + 1; }

    bool same_geometry(const Space& o) const { return kind == o.kind && dim == o.dim; }
    bool operator==(const Space& o) const = default;
};

struct Point {
    Space space;
    Eigen::VectorXd coords;

    Point() = default;
    Point(Space s, Eigen::VectorXd c) : space(s), coords(std::move(c)) {
        require(coords.size() == space.ambient_dim(), "E_POINT",
                "coordinate length does not match chart");
    }
};

// Minkowski inner product with form diag(1,...,1,-1).
inline double lorentz_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
    const Eigen::Index m = u.size();
    return u.head(m - 1).dot(v.head(m - 1)) - u(m - 1) * v(m - 1);
}

inline Eigen::MatrixXd lorentz_form(int rep_dim) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Identity(rep_dim, rep_dim);
    j(rep_dim - 1, rep_dim - 1) = -1.0;
    return j;
}

inline bool valid_point(const Point& p, double tol = 1e-9) {
    if (p.coords.size() != p.space.ambient_dim()) return false;
    if (!p.coords.allFinite()) return false;
    switch (p.space.chart) {
        case Chart::cartesian: return true;
        case Chart::half_space: return p.coords(p.coords.size() - 1) > 0.0;
        case Chart::ball:
        case Chart::klein: return p.coords.norm() < 1.0;
        case Chart::sphere_embedded: return std::abs(p.coords.norm() - 1.0) <= tol;
        case Chart::hyperboloid:
            return std::abs(lorentz_inner(p.coords, p.coords) + 1.0) <= tol &&
                   p.coords(p.coords.size() - 1) > 0.0;
    }
    return false;
}

inline void check_point(const Point& p, double tol = 1e-9) {
    require(valid_point(p, tol), "E_POINT",
            "invalid coordinates for chart " + to_string(p.space.chart));
}

namespace detail {

// Inversion through the sphere of radius sqrt(2) centered at -e_n; swaps the
// Poincare ball and upper half-space models and is an involution.
inline Eigen::VectorXd ball_halfspace_involution(const Eigen::VectorXd& x) {
    Eigen::VectorXd en = Eigen::VectorXd::Zero(x.size());
    en(x.size() - 1) = 1.0;
    Eigen::VectorXd y = x + en;
    double n2 = y.squaredNorm();
    require(n2 > 0.0, "E_CHART", "conversion undefined at the boundary point -e_n");
    return 2.0 / n2 * y - en;
}

inline Eigen::VectorXd ball_to_hyperboloid(const Eigen::VectorXd& b) {
    double r2 = b.squaredNorm();
    require(r2 < 1.0, "E_CHART", "ball point has norm >= 1");
    Eigen::VectorXd h(b.size() + 1);
    h.head(b.size()) = 2.0 / (1.0 - r2) * b;
    h(b.size()) = (1.0 + r2) / (1.0 - r2);
    return h;
}

inline Eigen::VectorXd hyperboloid_to_ball(const Eigen::VectorXd& h) {
    return h.head(h.size() - 1) / (1.0 + h(h.size() - 1));
}

inline Eigen::VectorXd klein_to_hyperboloid(const Eigen::VectorXd& k) {
    double r2 = k.squaredNorm();
    require(r2 < 1.0, "E_CHART", "klein point has norm >= 1");
    Eigen::VectorXd h(k.size() + 1);
    double s = 1.0 / std::sqrt(1.0 - r2);
    h.head(k.size()) = s * k;
    h(k.size()) = s;
    return h;
}

inline Eigen::VectorXd hyperboloid_to_klein(const Eigen::VectorXd& h) {
    return h.head(h.size() - 1) / h(h.size() - 1);
}

// Rescale onto the constraint surface; guards against drift from products.
inline Eigen::VectorXd renormalize_canonical(const Space& s, Eigen::VectorXd x) {
    if (s.kind == Kind::spherical) return x / x.norm();
    if (s.kind == Kind::hyperbolic) {
        double q = -lorentz_inner(x, x);
        require(q > 0.0, "E_CHART", "point left the hyperboloid");
        x /= std::sqrt(q);
        require(x(x.size() - 1) > 0.0, "E_CHART", "point left the upper sheet");
    }
    return x;
}

inline Eigen::VectorXd to_canonical_coords(const Point& p) {
    switch (p.space.chart) {
        case Chart::cartesian:
        case Chart::sphere_embedded:
        case Chart::hyperboloid: return p.coords;
        case Chart::ball: return ball_to_hyperboloid(p.coords);
        case Chart::klein: return klein_to_hyperboloid(p.coords);
        case Chart::half_space:
            return ball_to_hyperboloid(ball_halfspace_involution(p.coords));
    }
    return p.coords;
}

inline Eigen::VectorXd from_canonical_coords(const Space& target, const Eigen::VectorXd& c) {
    switch (target.chart) {
        case Chart::cartesian:
        case Chart::sphere_embedded:
        case Chart::hyperboloid: return c;
        case Chart::ball: return hyperboloid_to_ball(c);
        case Chart::klein: return hyperboloid_to_klein(c);
        case Chart::half_space:
            return ball_halfspace_involution(hyperboloid_to_ball(c));
    }
    return c;
}

}  // namespace detail

inline Point to_canonical(const Point& p) {
    if (p.space.is_canonical()) return p;
    return Point(p.space.canonical(), detail::to_canonical_coords(p));
}

inline Point convert(const Point& p, Chart target_chart) {
    require(chart_compatible(p.space.kind, target_chart), "E_CHART",
            "target chart " + to_string(target_chart) + " incompatible with " +
                to_string(p.space.kind));
    if (p.space.chart == target_chart) return p;
    Space target(p.space.kind, p.space.dim, target_chart);
    return Point(target, detail::from_canonical_coords(target, detail::to_canonical_coords(p)));
}

inline bool antipodal(const Point& a, const Point& b, double tol = 1e-9) {
    if (a.space.kind != Kind::spherical) return false;
    return (a.coords + b.coords).norm() <= tol;
}

inline double dist(const Point& a, const Point& b) {
    require(a.space == b.space, "E_SPACE", "dist requires points of the same space and chart");
    const Eigen::VectorXd& u = a.coords;
    const Eigen::VectorXd& v = b.coords;
    switch (a.space.chart) {
        case Chart::cartesian: return (u - v).norm();
        case Chart::sphere_embedded: {
            double h = (u - v).norm() / 2.0;
            return 2.0 * std::asin(std::min(1.0, h));
        }
        case Chart::half_space: {
            double un = u(u.size() - 1), vn = v(v.size() - 1);
            require(un > 0.0 && vn > 0.0, "E_POINT", "half-space chart needs positive last coordinate");
            return 2.0 * std::asinh((u - v).norm() / (2.0 * std::sqrt(un * vn)));
        }
        case Chart::ball: {
            double du = 1.0 - u.squaredNorm(), dv = 1.0 - v.squaredNorm();
            require(du > 0.0 && dv > 0.0, "E_POINT", "ball chart needs norm < 1");
            return 2.0 * std::asinh((u - v).norm() / std::sqrt(du * dv));
        }
        case Chart::klein: {
            Eigen::VectorXd hu = detail::klein_to_hyperboloid(u);
            Eigen::VectorXd hv = detail::klein_to_hyperboloid(v);
            double q = lorentz_inner(hu - hv, hu - hv);
            return 2.0 * std::asinh(std::sqrt(std::max(0.0, q)) / 2.0);
        }
        case Chart::hyperboloid: {
            double q = lorentz_inner(u - v, u - v);
            return 2.0 * std::asinh(std::sqrt(std::max(0.0, q)) / 2.0);
        }
    }
    return 0.0;
}

// Canonical-chart basepoint: origin, the last coordinate axis on the sphere,
// or the hyperboloid apex.
inline Point basepoint(const Space& s) {
    Space cs = s.canonical();
    Eigen::VectorXd c = Eigen::VectorXd::Zero(cs.ambient_dim());
    if (cs.kind != Kind::euclidean) c(c.size() - 1) = 1.0;
    Point p(cs, c);
    return s.chart == cs.chart ? p : convert(p, s.chart);
}

}  // namespace poincare
