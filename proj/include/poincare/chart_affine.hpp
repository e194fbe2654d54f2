#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "poincare/halfspace.hpp"
#include "poincare/linprog.hpp"
#include "poincare/space.hpp"

namespace poincare {

// Convex region {u : u^T Q u + q.u + q0 <= 0} with an anchor point strictly
// inside, used for lazy cutting-plane separation.
struct QuadraticRegion {
    Eigen::MatrixXd Q;
    Eigen::VectorXd q;
    double q0 = 0.0;
    Eigen::VectorXd anchor;

    double value(const Eigen::VectorXd& u) const { return u.dot(Q * u) + q.dot(u) + q0; }
    Eigen::VectorXd gradient(const Eigen::VectorXd& u) const { return 2.0 * Q * u + q; }
    double scale() const {
        double s = 1.0 + std::abs(q0);
        if (Q.size() > 0) s += Q.cwiseAbs().maxCoeff();
        if (q.size() > 0) s += q.cwiseAbs().maxCoeff();
        return s;
    }
};

// Affine chart in which half-spaces are linear: cartesian for R^n, Klein for
// H^n (plus the open unit ball as a domain region), gnomonic projection on a
// per-system hemisphere for S^n. Strict feasibility becomes a margin LP with
// lazy cuts for the quadratic pieces.
struct FeasibilityChart {
    Space space;             // canonical
    double box = 100.0;
    Eigen::VectorXd pole;    // spherical only: unit chart pole
    Eigen::MatrixXd basis;   // spherical only: (n+1) x n tangent basis at pole

    int dim() const { return space.dim; }

    Eigen::VectorXd to_chart(const Eigen::VectorXd& c) const {
        const int n = space.dim;
        switch (space.kind) {
            case Kind::euclidean: return c;
            case Kind::hyperbolic: return c.head(n) / c(n);
            case Kind::spherical: {
                double t = pole.dot(c);
                require(t > 1e-12, "E_HEMISPHERE", "point outside the chart hemisphere");
                return (basis.transpose() * c) / t;
            }
        }
        return c;
    }

    Eigen::VectorXd from_chart(const Eigen::VectorXd& u) const {
        switch (space.kind) {
            case Kind::euclidean: return u;
            case Kind::hyperbolic: {
                Eigen::VectorXd h(u.size() + 1);
                double r2 = u.squaredNorm();
                require(r2 < 1.0, "E_CHART", "klein coordinates left the unit ball");
                double s = 1.0 / std::sqrt(1.0 - r2);
                h.head(u.size()) = s * u;
                h(u.size()) = s;
                return h;
            }
            case Kind::spherical: {
                Eigen::VectorXd x = pole + basis * u;
                return x / x.norm();
            }
        }
        return u;
    }

    // linear form a.u <= b equivalent to the half-space in this chart
    std::pair<Eigen::VectorXd, double> row(const HalfSpace& z) const {
        const int n = space.dim;
        switch (space.kind) {
            case Kind::euclidean: return {z.normal, z.offset};
            case Kind::hyperbolic: {
                Eigen::VectorXd a = z.normal.head(n);
                return {a, z.normal(n)};
            }
            case Kind::spherical: {
                Eigen::VectorXd a = basis.transpose() * z.normal;
                return {a, -pole.dot(z.normal)};
            }
        }
        return {z.normal, z.offset};
    }

    // the chart's own validity region (open unit ball for Klein), if any
    std::optional<QuadraticRegion> domain_region() const {
        if (space.kind != Kind::hyperbolic) return std::nullopt;
        const int n = space.dim;
        QuadraticRegion r;
        r.Q = Eigen::MatrixXd::Identity(n, n);
        r.q = Eigen::VectorXd::Zero(n);
        double rad = 1.0 - 1e-12;
        r.q0 = -rad * rad;
        r.anchor = Eigen::VectorXd::Zero(n);
        return r;
    }

    // metric ball {x : d(x, center) <= radius} as a quadratic chart region
    QuadraticRegion metric_ball(const Eigen::VectorXd& center_canonical, double radius) const {
        const int n = space.dim;
        QuadraticRegion r;
        r.anchor = to_chart(center_canonical);
        switch (space.kind) {
            case Kind::euclidean:
                r.Q = Eigen::MatrixXd::Identity(n, n);
                r.q = -2.0 * center_canonical;
                r.q0 = center_canonical.squaredNorm() - radius * radius;
                break;
            case Kind::hyperbolic: {
                // (C_last - u.Ch)^2 <= cosh^2(r) (1 - |u|^2)
                Eigen::VectorXd ch = center_canonical.head(n);
                double cl = center_canonical(n);
                double c2 = std::cosh(radius);
                c2 *= c2;
                r.Q = ch * ch.transpose() + c2 * Eigen::MatrixXd::Identity(n, n);
                r.q = -2.0 * cl * ch;
                r.q0 = cl * cl - c2;
                break;
            }
            case Kind::spherical: {
                require(radius < M_PI / 2.0, "E_WINDOW", "spherical window radius must be < pi/2");
                double alpha = pole.dot(center_canonical);
                Eigen::VectorXd beta = basis.transpose() * center_canonical;
                double c2 = std::cos(radius);
                c2 *= c2;
                // PSD exactly when the cap stays inside the chart hemisphere
                require(beta.squaredNorm() <= c2 + 1e-12, "E_WINDOW",
                        "window cap leaves the chart hemisphere");
                r.Q = c2 * Eigen::MatrixXd::Identity(n, n) - beta * beta.transpose();
                r.q = -2.0 * alpha * beta;
                r.q0 = c2 - alpha * alpha;
                break;
            }
        }
        return r;
    }
};

namespace detail {

inline Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& pole) {
    const int m = static_cast<int>(pole.size());
    // last column of a deterministic orthonormal completion of {pole}
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    Eigen::MatrixXd basis(m, m - 1);
    int col = 0;
    for (int i = 0; i < m && col < m - 1; ++i) {
        Eigen::VectorXd v = a.col(i) - pole.dot(a.col(i)) * pole;
        for (int j = 0; j < col; ++j) v -= basis.col(j).dot(v) * basis.col(j);
        double n = v.norm();
        if (n > 1e-8) basis.col(col++) = v / n;
    }
    require(col == m - 1, "E_CHART", "failed to build a tangent basis");
    return basis;
}

}  // namespace detail

// Chart for LP work over the given half-spaces. For spherical systems picks a
// hemisphere pole (an interior direction of the constraint cone, or the
// anchor), and rejects systems that do not fit in the open hemisphere.
inline FeasibilityChart make_chart(const Space& space_in,
                                   const std::vector<HalfSpace>& rows,
                                   const std::optional<Eigen::VectorXd>& anchor_canonical =
                                       std::nullopt) {
    FeasibilityChart ct;
    ct.space = space_in.canonical();
    const int n = ct.space.dim;
    switch (ct.space.kind) {
        case Kind::euclidean: {
            double scale = 1.0;
            for (const auto& z : rows) scale = std::max(scale, std::abs(z.offset));
            if (anchor_canonical) scale = std::max(scale, anchor_canonical->lpNorm<Eigen::Infinity>());
            ct.box = std::min(1e7, 16.0 * (1.0 + scale));
            break;
        }
        case Kind::hyperbolic:
            ct.box = 2.0;
            break;
        case Kind::spherical: {
            ct.box = 1e4;
            lp::Rows cone;
            for (const auto& z : rows) cone.add(z.normal, 0.0);
            auto mp = lp::margin_point(cone, n + 1, 1.0);
            if (mp.feasible && mp.margin > 1e-9 && mp.u.norm() > 1e-9) {
                ct.pole = mp.u / mp.u.norm();
            } else if (anchor_canonical) {
                ct.pole = *anchor_canonical / anchor_canonical->norm();
            } else {
                Eigen::VectorXd p = Eigen::VectorXd::Zero(n + 1);
                p(n) = 1.0;
                ct.pole = p;
            }
            // reject systems leaving the open hemisphere: the cone must meet
            // {pole . y <= 0} only at the origin
            lp::Rows closed = cone;
            closed.add(ct.pole, 0.0);
            for (int i = 0; i < n + 1; ++i) {
                for (double sgn : {1.0, -1.0}) {
                    auto sol = lp::maximize(closed, sgn * Eigen::VectorXd::Unit(n + 1, i), 1.0);
                    if (sol.feasible && sol.value > 1e-7)
                        fail("E_HEMISPHERE",
                             "spherical system does not fit in an open hemisphere");
                }
            }
            ct.basis = detail::tangent_basis(ct.pole);
            break;
        }
    }
    return ct;
}

// u = p + Q v with Q column-orthonormal; parametrizes an affine flat.
struct AffineMap {
    Eigen::VectorXd p;
    Eigen::MatrixXd Q;

    static AffineMap full(int n) {
        return {Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n)};
    }
    int rank() const { return static_cast<int>(Q.cols()); }
    Eigen::VectorXd up(const Eigen::VectorXd& v) const { return p + Q * v; }
    Eigen::VectorXd down(const Eigen::VectorXd& u) const { return Q.transpose() * (u - p); }
};

// least-norm solution + kernel basis of the equality system A u = b
inline std::optional<AffineMap> solve_flat(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                           double tol = 1e-8) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    double thresh = std::max(1e-12, tol * std::max(1.0, smax));
    int rank = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > thresh) ++rank;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(A.cols());
    for (int i = 0; i < rank; ++i)
        p += (svd.matrixU().col(i).dot(b) / svd.singularValues()(i)) * svd.matrixV().col(i);
    if ((A * p - b).lpNorm<Eigen::Infinity>() > tol * (1.0 + b.lpNorm<Eigen::Infinity>()))
        return std::nullopt;  // inconsistent equalities
    AffineMap m;
    m.p = p;
    m.Q = svd.matrixV().rightCols(A.cols() - rank);
    return m;
}

inline lp::Rows restrict_rows(const lp::Rows& rows, const AffineMap& map) {
    lp::Rows out;
    for (int i = 0; i < rows.size(); ++i)
        out.add(map.Q.transpose() * rows.a[i], rows.b[i] - rows.a[i].dot(map.p));
    return out;
}

inline QuadraticRegion restrict_region(const QuadraticRegion& r, const AffineMap& map) {
    QuadraticRegion out;
    out.Q = map.Q.transpose() * r.Q * map.Q;
    out.q = map.Q.transpose() * (2.0 * r.Q * map.p + r.q);
    out.q0 = map.p.dot(r.Q * map.p) + r.q.dot(map.p) + r.q0;
    // anchor: unconstrained minimizer of the restricted quadratic
    Eigen::MatrixXd reg = out.Q + 1e-13 * Eigen::MatrixXd::Identity(out.Q.rows(), out.Q.cols());
    out.anchor = reg.ldlt().solve(-0.5 * out.q);
    return out;
}

struct StrictPoint {
    enum class Status { ok, thin, empty };
    Status status = Status::empty;
    Eigen::VectorXd u;   // chart coordinates (ok / thin)
    double margin = 0.0;
    lp::Rows cuts;       // accumulated separation cuts (reusable by callers)
};

// Search for a point satisfying every row with uniform slack >= thick_tol and
// lying inside every region. Regions are handled by lazy tangent cuts.
inline StrictPoint strict_point(const FeasibilityChart& ct, const lp::Rows& rows,
                                const std::vector<QuadraticRegion>& regions, double thick_tol,
                                int dim = -1) {
    StrictPoint out;
    if (dim < 0) dim = ct.dim();
    lp::Rows sys = rows;
    const int max_cuts = 96;
    for (int iter = 0; iter <= max_cuts; ++iter) {
        auto mp = lp::margin_point(sys, dim, ct.box);
        if (!mp.feasible || mp.margin < -1e-8) {
            out.status = StrictPoint::Status::empty;
            return out;
        }
        int worst = -1;
        double worst_rel = 0.0;
        for (int i = 0; i < static_cast<int>(regions.size()); ++i) {
            double rel = regions[i].value(mp.u) / regions[i].scale();
            if (rel > worst_rel) {
                worst_rel = rel;
                worst = i;
            }
        }
        if (worst < 0 || worst_rel <= 1e-10) {
            out.status = mp.margin >= thick_tol ? StrictPoint::Status::ok
                                                : StrictPoint::Status::thin;
            out.u = mp.u;
            out.margin = mp.margin;
            return out;
        }
        if (iter == max_cuts) break;
        // tangent cut at the region boundary along [anchor, u*]
        const QuadraticRegion& reg = regions[worst];
        double lo = 0.0, hi = 1.0;
        Eigen::VectorXd diff = mp.u - reg.anchor;
        if (reg.value(reg.anchor) >= 0.0) {
            out.status = StrictPoint::Status::empty;  // region (restricted) has no interior
            return out;
        }
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            if (reg.value(reg.anchor + mid * diff) <= 0.0)
                lo = mid;
            else
                hi = mid;
        }
        Eigen::VectorXd p = reg.anchor + lo * diff;
        Eigen::VectorXd grad = reg.gradient(p);
        double gn = grad.norm();
        if (gn < 1e-13) {
            out.status = StrictPoint::Status::empty;
            return out;
        }
        grad /= gn;
        sys.add(grad, grad.dot(p));
        out.cuts.add(grad, grad.dot(p));
    }
    // cut budget exhausted without certification; report conservatively
    out.status = StrictPoint::Status::empty;
    return out;
}

// Parameter interval {t : a.(u0 + t d) <= b for all rows} intersected with
// [t0, t1]; nullopt when empty.
inline std::optional<std::pair<double, double>> segment_interval(
    const lp::Rows& rows, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1, double t0,
    double t1, double eps = 1e-12) {
    double lo = t0, hi = t1;
    Eigen::VectorXd d = u1 - u0;
    for (int i = 0; i < rows.size(); ++i) {
        double num = rows.b[i] - rows.a[i].dot(u0);
        double den = rows.a[i].dot(d);
        if (std::abs(den) <= 1e-13 * (1.0 + rows.a[i].norm() * d.norm())) {
            if (num < -eps) return std::nullopt;
            continue;
        }
        double t = num / den;
        if (den > 0.0)
            hi = std::min(hi, t);
        else
            lo = std::max(lo, t);
        if (lo > hi + eps) return std::nullopt;
    }
    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

// Clip [t0, t1] against the quadratic region along the same segment.
inline std::optional<std::pair<double, double>> clip_by_region(
    const QuadraticRegion& reg, const Eigen::VectorXd& u0, const Eigen::VectorXd& u1, double t0,
    double t1) {
    Eigen::VectorXd d = u1 - u0;
    double A = d.dot(reg.Q * d);
    double B = 2.0 * u0.dot(reg.Q * d) + reg.q.dot(d);
    double C = reg.value(u0);
    double scl = reg.scale();
    if (std::abs(A) <= 1e-14 * scl) {
        if (std::abs(B) <= 1e-14 * scl) return C <= 1e-10 * scl ? std::make_optional(std::make_pair(t0, t1)) : std::nullopt;
        double t = -C / B;
        if (B > 0.0) return t < t0 ? std::nullopt : std::make_optional(std::make_pair(t0, std::min(t1, t)));
        return t > t1 ? std::nullopt : std::make_optional(std::make_pair(std::max(t0, t), t1));
    }
    double disc = B * B - 4.0 * A * C;
    if (disc < 0.0) return A < 0.0 ? std::make_optional(std::make_pair(t0, t1)) : std::nullopt;
    double sq = std::sqrt(disc);
    double r1 = (-B - sq) / (2.0 * A), r2 = (-B + sq) / (2.0 * A);
    if (r1 > r2) std::swap(r1, r2);
    if (A > 0.0) {  // region between the roots
        double lo = std::max(t0, r1), hi = std::min(t1, r2);
        if (lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    }
    // concave: region outside the roots; keep the piece containing t0 side
    if (t0 < r1) return std::make_pair(t0, std::min(t1, r1));
    if (t1 > r2) return std::make_pair(std::max(t0, r2), t1);
    return std::nullopt;
}

}  // namespace poincare
