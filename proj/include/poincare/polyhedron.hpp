#pragma once

#include <Eigen/Dense>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "poincare/chart_affine.hpp"
#include "poincare/halfspace.hpp"
#include "poincare/linprog.hpp"

namespace poincare {

// Inequality system over a feasibility chart, ready for LP work.
struct LinearSystem {
    FeasibilityChart chart;
    lp::Rows rows;
    std::vector<QuadraticRegion> regions;
};

inline LinearSystem make_system(const Space& space, const std::vector<HalfSpace>& halfspaces,
                                const std::optional<Eigen::VectorXd>& anchor = std::nullopt) {
    LinearSystem sys;
    sys.chart = make_chart(space, halfspaces, anchor);
    for (const auto& z : halfspaces) {
        auto [a, b] = sys.chart.row(z);
        sys.rows.add(a, b);
    }
    if (auto dom = sys.chart.domain_region()) sys.regions.push_back(*dom);
    return sys;
}

struct SystemAnalysis {
    enum class Status { ok, thin, empty };
    Status status = Status::empty;
    Eigen::VectorXd chart_point;  // relative-interior point (ok / thin)
    AffineMap hull;               // affine hull parametrization u = p + Qv
    int codim = -1;               // chart codimension of the hull
    double margin = 0.0;

    bool empty() const { return status == Status::empty; }
};

// Relative-interior search: peel off constraints that are tight on the whole
// feasible set until a strictly feasible point exists inside the hull.
inline SystemAnalysis analyze_system(const LinearSystem& sys,
                                     const std::vector<std::pair<Eigen::VectorXd, double>>&
                                         forced_equalities = {},
                                     double thick_tol = 1e-7) {
    const int n = sys.chart.dim();
    SystemAnalysis out;
    std::vector<std::pair<Eigen::VectorXd, double>> equalities = forced_equalities;
    AffineMap map = AffineMap::full(n);
    if (!equalities.empty()) {
        Eigen::MatrixXd A(equalities.size(), n);
        Eigen::VectorXd b(equalities.size());
        for (size_t i = 0; i < equalities.size(); ++i) {
            A.row(i) = equalities[i].first;
            b(i) = equalities[i].second;
        }
        auto flat = solve_flat(A, b);
        if (!flat) return out;
        map = *flat;
    }

    for (int round = 0; round <= n + 1; ++round) {
        lp::Rows rrows = restrict_rows(sys.rows, map);
        std::vector<QuadraticRegion> rregions;
        rregions.reserve(sys.regions.size());
        for (const auto& r : sys.regions) rregions.push_back(restrict_region(r, map));
        auto sp = strict_point(sys.chart, rrows, rregions, thick_tol, map.rank());
        if (sp.status == StrictPoint::Status::empty) return out;
        if (sp.status == StrictPoint::Status::ok || map.rank() == 0) {
            out.status = SystemAnalysis::Status::ok;
            out.chart_point = map.up(sp.u);
            out.hull = map;
            out.codim = n - map.rank();
            out.margin = sp.margin;
            return out;
        }
        // thin: identify rows whose slack vanishes on the whole set
        lp::Rows slack_sys = rrows;
        for (int i = 0; i < sp.cuts.size(); ++i) slack_sys.add(sp.cuts.a[i], sp.cuts.b[i]);
        bool grew = false;
        for (int i = 0; i < sys.rows.size(); ++i) {
            Eigen::VectorXd ar = map.Q.transpose() * sys.rows.a[i];
            if (ar.norm() < 1e-11) continue;  // constant on the flat already
            double br = sys.rows.b[i] - sys.rows.a[i].dot(map.p);
            auto sol = lp::maximize(slack_sys, -ar, sys.chart.box);
            if (!sol.feasible) return out;
            // sol.value = max of -ar.v, so br + sol.value = max slack of row i
            double max_slack = br + sol.value;
            if (max_slack <= 1e-8 * (1.0 + std::abs(br))) {
                equalities.emplace_back(sys.rows.a[i], sys.rows.b[i]);
                grew = true;
            }
        }
        if (!grew) {
            out.status = SystemAnalysis::Status::thin;
            out.chart_point = map.up(sp.u);
            out.hull = map;
            out.codim = n - map.rank();
            out.margin = sp.margin;
            return out;
        }
        Eigen::MatrixXd A(equalities.size(), n);
        Eigen::VectorXd b(equalities.size());
        for (size_t i = 0; i < equalities.size(); ++i) {
            A.row(i) = equalities[i].first;
            b(i) = equalities[i].second;
        }
        auto flat = solve_flat(A, b);
        if (!flat) return out;
        if (flat->rank() >= map.rank()) {
            out.status = SystemAnalysis::Status::thin;
            out.chart_point = map.up(sp.u);
            out.hull = map;
            out.codim = n - map.rank();
            out.margin = sp.margin;
            return out;
        }
        map = *flat;
    }
    return out;
}

namespace detail {
struct EssentialCache {
    std::once_flag once;
    std::vector<bool> flags;
};
}  // namespace detail

// Finite intersection of closed half-spaces. Immutable; the essentiality
// flags are cached with compute-once semantics.
struct Polyhedron {
    Space space;
    std::vector<HalfSpace> halfspaces;

    Polyhedron() = default;
    Polyhedron(const Space& s, std::vector<HalfSpace> hs)
        : space(s.canonical()), halfspaces(std::move(hs)),
          cache_(std::make_shared<detail::EssentialCache>()) {
        for (const auto& z : halfspaces)
            require(z.space.same_geometry(space), "E_SPACE",
                    "half-space geometry differs from the polyhedron space");
    }

    static Polyhedron whole_space(const Space& s) { return Polyhedron(s, {}); }

    std::shared_ptr<detail::EssentialCache> cache_ = std::make_shared<detail::EssentialCache>();
};

inline bool contains(const Polyhedron& p, const Point& x, double tol = 1e-9) {
    Eigen::VectorXd c = detail::to_canonical_coords(x);
    for (const auto& z : p.halfspaces)
        if (z.value_canonical(c) > tol) return false;
    return true;
}

inline bool contains_strictly(const Polyhedron& p, const Point& x, double tol = 1e-9) {
    Eigen::VectorXd c = detail::to_canonical_coords(x);
    for (const auto& z : p.halfspaces)
        if (z.value_canonical(c) > -tol) return false;
    return true;
}

inline SystemAnalysis analyze(const Polyhedron& p, double thick_tol = 1e-7,
                              const std::optional<Eigen::VectorXd>& anchor = std::nullopt) {
    return analyze_system(make_system(p.space, p.halfspaces, anchor), {}, thick_tol);
}

// True iff some point satisfies every inequality strictly. Empty polyhedra
// are reported distinctly.
inline bool is_thick(const Polyhedron& p, const Tolerances& tols = {}) {
    auto a = analyze(p, tols.combinatorial);
    require(!a.empty(), "E_EMPTY", "polyhedron is empty");
    return a.status == SystemAnalysis::Status::ok && a.codim == 0;
}

inline Point chart_point_to_space(const FeasibilityChart& ct, const Eigen::VectorXd& u) {
    return Point(ct.space, ct.from_chart(u));
}

inline Point relative_interior_point(const Polyhedron& p, const Tolerances& tols = {}) {
    auto sys = make_system(p.space, p.halfspaces);
    auto a = analyze_system(sys, {}, tols.combinatorial);
    require(!a.empty(), "E_EMPTY", "polyhedron is empty");
    return chart_point_to_space(sys.chart, a.chart_point);
}

inline std::vector<bool> essential_flags(const Polyhedron& p, const Tolerances& tols = {}) {
    auto compute = [&]() {
        const size_t m = p.halfspaces.size();
        std::vector<bool> flags(m, false);
        auto sys = make_system(p.space, p.halfspaces);
        auto whole = analyze_system(sys, {}, tols.combinatorial);
        require(!whole.empty(), "E_EMPTY", "polyhedron is empty");
        require(whole.status == SystemAnalysis::Status::ok && whole.codim == 0, "E_NOT_THICK",
                "essential half-spaces are defined for thick polyhedra");
        // drop duplicate half-spaces (same normalized data): keep the first
        std::vector<int> rep(m);
        for (size_t i = 0; i < m; ++i) {
            rep[i] = static_cast<int>(i);
            for (size_t j = 0; j < i; ++j) {
                if ((p.halfspaces[i].normal - p.halfspaces[j].normal).lpNorm<Eigen::Infinity>() <=
                        1e-9 &&
                    std::abs(p.halfspaces[i].offset - p.halfspaces[j].offset) <= 1e-9) {
                    rep[i] = static_cast<int>(j);
                    break;
                }
            }
        }
        for (size_t i = 0; i < m; ++i) {
            if (rep[i] != static_cast<int>(i)) continue;
            auto [a, b] = sys.chart.row(p.halfspaces[i]);
            auto res = analyze_system(sys, {{a, b}}, tols.combinatorial);
            // essential iff P meets the boundary hyperplane in a set that is
            // thick within the hyperplane
            flags[i] = res.status == SystemAnalysis::Status::ok && res.codim == 1;
        }
        return flags;
    };
    std::call_once(p.cache_->once, [&] { p.cache_->flags = compute(); });
    return p.cache_->flags;
}

inline std::vector<HalfSpace> essential_halfspaces(const Polyhedron& p,
                                                   const Tolerances& tols = {}) {
    auto flags = essential_flags(p, tols);
    std::vector<HalfSpace> out;
    for (size_t i = 0; i < flags.size(); ++i)
        if (flags[i]) out.push_back(p.halfspaces[i]);
    return out;
}

inline Polyhedron essential_polyhedron(const Polyhedron& p, const Tolerances& tols = {}) {
    return Polyhedron(p.space, essential_halfspaces(p, tols));
}

inline Polyhedron transform(const Isometry& g, const Polyhedron& p) {
    std::vector<HalfSpace> hs;
    hs.reserve(p.halfspaces.size());
    for (const auto& z : p.halfspaces) hs.push_back(transform(g, z));
    return Polyhedron(p.space, std::move(hs));
}

}  // namespace poincare
