#pragma once

#include <optional>
#include <vector>

#include "poincare/dirichlet.hpp"
#include "poincare/presentation.hpp"

namespace poincare {

struct GroupStructure {
    Polyhedron domain;
    Exploration ex;
    CellComplex cells;
    PairingSet pairings;
    Presentation presentation;
    std::optional<DirichletResult> dirichlet;
};

namespace detail {

// distance from a point to a wall hyperplane, from the normalized predicate
inline double wall_distance(const HalfSpace& z, const Eigen::VectorXd& canonical) {
    double v = std::abs(z.value_canonical(canonical));
    switch (z.space.kind) {
        case Kind::euclidean: return v;
        case Kind::hyperbolic: return std::asinh(v);
        case Kind::spherical: return std::asin(std::min(1.0, v));
    }
    return v;
}

}  // namespace detail

// Default exploration window: centered at an interior point, wide enough to
// reach past every wall of the domain.
inline Window default_window(const Polyhedron& domain, const Point& center) {
    Eigen::VectorXd c = detail::to_canonical_coords(center);
    double reach = 0.0;
    for (const auto& z : domain.halfspaces)
        reach = std::max(reach, detail::wall_distance(z, c));
    double radius = 2.0 * reach + 1.0;
    if (domain.space.kind == Kind::spherical) radius = std::min(radius, M_PI / 2 - 1e-3);
    return Window(center, radius);
}

// End-to-end: explore the orbit of the domain, classify its cells, match the
// side pairings against the candidates, and assemble the presentation.
// Edge loops that fall off the window enlarge it by x1.5, up to three times.
inline GroupStructure present_polyhedron(const Polyhedron& domain,
                                         const std::vector<Isometry>& step_generators,
                                         const std::vector<Isometry>& candidates,
                                         std::optional<Window> window = std::nullopt,
                                         const ExploreOptions& opts = {}, double tol = 1e-8) {
    GroupStructure out;
    out.domain = essential_polyhedron(domain, opts.tols);
    Point center = relative_interior_point(out.domain, opts.tols);
    Window win = window ? *window : default_window(out.domain, center);
    const int growth_budget = 3;
    for (int attempt = 0;; ++attempt) {
        try {
            out.ex = explore_tiles(out.domain, step_generators, win, opts);
            out.cells = classify_cells(out.ex);
            // window completeness: every essential wall must carry a side,
            // otherwise the window stopped short of part of the boundary
            for (const auto& z : out.domain.halfspaces) {
                bool carried = false;
                for (const Cell& s : out.cells.sides)
                    carried |= std::abs(z.value(s.rep)) <= opts.tols.combinatorial;
                require(carried, "E_WINDOW",
                        "a wall of the domain has no side inside the window");
            }
            out.pairings = side_pairings(out.ex, out.cells.sides, candidates);
            out.presentation = build_presentation(out.ex, out.cells, out.pairings, tol);
            return out;
        } catch (const error& err) {
            if (err.code() != "E_WINDOW" || attempt >= growth_budget) throw;
            win = Window(win.center, win.radius * 1.5);
        }
    }
}

// Group-first entry point: build the Dirichlet domain from generators, then
// present it with the discovered wall pairings.
inline GroupStructure present_group(const GroupInput& input,
                                    std::optional<Window> window = std::nullopt,
                                    const ExploreOptions& opts = {}, double tol = 1e-8) {
    DirichletResult dr = dirichlet_domain(input);
    require(!dr.domain.halfspaces.empty(), "E_INPUT",
            "trivial group: the domain is the whole space and has no sides");
    std::vector<Isometry> steps = dr.wall_pairings;
    GroupStructure out = present_polyhedron(dr.domain, steps, steps, window, opts, tol);
    out.dirichlet = std::move(dr);
    return out;
}

}  // namespace poincare
