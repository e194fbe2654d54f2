#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "poincare/geodesic.hpp"
#include "poincare/polyhedron.hpp"

namespace poincare {

// Metric ball bounding an exploration; only finitely many tiles may meet it.
struct Window {
    Point center;
    double radius = 1.0;

    Window() = default;
    Window(const Point& c, double r) : center(to_canonical(c)), radius(r) {
        require(r > 0.0, "E_WINDOW", "window radius must be positive");
    }
};

struct Tile {
    std::vector<int> word;  // generator indices along the BFS provenance
    Isometry element;
    Polyhedron poly;
};

// Cell of the explored tessellation: the intersection of the tiles listed,
// with a relative-interior representative. Tile index sets identify cells.
struct Cell {
    std::vector<int> tiles;  // sorted indices into the exploration tile list
    int codim = 0;
    Point rep;
};

inline bool same_cell(const Cell& a, const Cell& b) { return a.tiles == b.tiles; }

struct ExploreOptions {
    int max_tiles = 20000;
    bool cap_is_error = true;  // false: truncate at the cap and mark the result
    Tolerances tols;
    // additionally keep tiles meeting these geodesic segments (canonical-chart
    // endpoint pairs); used to reach far targets without growing the window
    std::vector<std::pair<Point, Point>> segments;
    bool use_window = true;
};

struct Exploration {
    Space space;
    Polyhedron base;  // reduced to essential half-spaces
    std::vector<Isometry> pairings;
    Window window;
    ExploreOptions opts;
    FeasibilityChart chart;
    std::vector<Tile> tiles;
    std::vector<lp::Rows> tile_rows;  // chart rows per tile, aligned with tiles
    bool capped = false;              // tile cap hit with cap_is_error == false

    bool tile_contains(int i, const Eigen::VectorXd& canonical, double tol) const {
        for (const auto& z : tiles[i].poly.halfspaces)
            if (z.value_canonical(canonical) > tol) return false;
        return true;
    }

    std::vector<int> tiles_containing(const Eigen::VectorXd& canonical, double tol) const {
        std::vector<int> out;
        for (int i = 0; i < static_cast<int>(tiles.size()); ++i)
            if (tile_contains(i, canonical, tol)) out.push_back(i);
        return out;
    }

};

namespace detail {

inline std::vector<int64_t> quantize_matrix(const Eigen::MatrixXd& m, double grid = 1e-6) {
    std::vector<int64_t> key(m.size());
    for (int i = 0; i < m.size(); ++i) key[i] = llround(*(m.data() + i) / grid);
    return key;
}

inline lp::Rows rows_of(const FeasibilityChart& ct, const Polyhedron& p) {
    lp::Rows rows;
    for (const auto& z : p.halfspaces) {
        auto [a, b] = ct.row(z);
        rows.add(a, b);
    }
    return rows;
}

// chart suited to a window-bounded exploration
inline FeasibilityChart window_chart(const Space& space, const Window& w, double extra_reach) {
    FeasibilityChart ct;
    ct.space = space.canonical();
    switch (ct.space.kind) {
        case Kind::euclidean:
            ct.box = std::min(1e7, 16.0 * (1.0 + w.center.coords.lpNorm<Eigen::Infinity>() +
                                           w.radius + extra_reach));
            break;
        case Kind::hyperbolic:
            ct.box = 2.0;
            break;
        case Kind::spherical: {
            ct.box = 1e4;
            ct.pole = w.center.coords;
            ct.basis = tangent_basis(ct.pole);
            require(w.radius < M_PI / 2, "E_WINDOW", "spherical window radius must be < pi/2");
            break;
        }
    }
    return ct;
}

}  // namespace detail

// Nonemptiness of (tile rows) ∩ (window ball), decided by margin LP with lazy
// cuts; boundary tangency resolves within the combinatorial tolerance band.
inline bool meets_window(const FeasibilityChart& ct, const lp::Rows& rows,
                         const QuadraticRegion& ball, double tol) {
    std::vector<QuadraticRegion> regions{ball};
    if (auto dom = ct.domain_region()) regions.push_back(*dom);
    auto sp = strict_point(ct, rows, regions, tol);
    return sp.status != StrictPoint::Status::empty;
}

inline bool meets_segment(const lp::Rows& rows, const Eigen::VectorXd& u0,
                          const Eigen::VectorXd& u1) {
    return segment_interval(rows, u0, u1, 0.0, 1.0, 1e-9).has_value();
}

// BFS over words in the pairing generators, keeping tiles that meet the
// window (or one of the requested segments). Output order: word length, then
// lexicographic word. The two-sided guard detects runaway inputs: a tile cap
// and a near-identity check for non-discontinuous groups.
inline Exploration explore_tiles(const Polyhedron& p, const std::vector<Isometry>& pairings,
                                 const Window& window, const ExploreOptions& opts = {}) {
    Exploration ex;
    ex.space = p.space;
    ex.base = essential_polyhedron(p, opts.tols);
    ex.pairings = pairings;
    ex.window = window;
    ex.opts = opts;
    for (const auto& g : pairings)
        require(g.space.same_geometry(p.space), "E_SPACE", "pairing space mismatch");

    double reach = 0.0;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> segs;
    for (const auto& [a, b] : opts.segments) {
        reach = std::max({reach, a.coords.lpNorm<Eigen::Infinity>(),
                          b.coords.lpNorm<Eigen::Infinity>()});
        segs.emplace_back(Eigen::VectorXd(), Eigen::VectorXd());
    }
    ex.chart = detail::window_chart(ex.space, window, reach);
    for (size_t i = 0; i < segs.size(); ++i) {
        segs[i].first = ex.chart.to_chart(detail::to_canonical_coords(opts.segments[i].first));
        segs[i].second = ex.chart.to_chart(detail::to_canonical_coords(opts.segments[i].second));
    }
    QuadraticRegion ball =
        ex.chart.metric_ball(detail::to_canonical_coords(window.center), window.radius);

    auto keeps = [&](const lp::Rows& rows) {
        if (opts.use_window && meets_window(ex.chart, rows, ball, opts.tols.combinatorial))
            return true;
        for (const auto& [u0, u1] : segs)
            if (meets_segment(rows, u0, u1)) return true;
        return false;
    };

    struct Pending {
        std::vector<int> word;
        Isometry element;
    };
    std::map<std::vector<int64_t>, int> seen;  // quantized matrix -> pending index
    std::vector<Pending> found;                // all kept tiles, BFS order
    std::deque<int> frontier;

    auto try_add = [&](std::vector<int> word, const Isometry& g) {
        if (!word.empty()) {
            // heuristic non-discontinuity guard: a matrix close to but not
            // equal to the identity signals an indiscrete input
            const int m = g.space.rep_dim();
            double gap = (g.matrix - Eigen::MatrixXd::Identity(m, m)).lpNorm<Eigen::Infinity>();
            if (gap < 1e-6 && !iso_eq(g, Isometry::identity(g.space), 1e-9))
                fail("E_NOT_DISCONTINUOUS",
                     "near-identity non-identity element encountered; input is likely not "
                     "discontinuous");
        }
        auto key = detail::quantize_matrix(g.matrix);
        if (auto it = seen.find(key); it != seen.end()) {
            // confirm the grid hit; distinct elements may share a key
            if (it->second < 0 || iso_eq(found[it->second].element, g, 1e-7)) return;
        }
        for (const auto& pend : found)
            if ((pend.element.matrix - g.matrix).lpNorm<Eigen::Infinity>() <= 1e-8) {
                seen.emplace(std::move(key), -1);
                return;
            }
        Polyhedron tp = transform(g, ex.base);
        if (!keeps(detail::rows_of(ex.chart, tp))) {
            seen.emplace(std::move(key), -1);
            return;
        }
        if (static_cast<int>(found.size()) >= opts.max_tiles) {
            require(!opts.cap_is_error, "E_EXPLORATION_CAP",
                    "tile cap exceeded; non-discontinuous input or too-large window");
            ex.capped = true;
            return;
        }
        found.push_back({std::move(word), g});
        seen.emplace(std::move(key), static_cast<int>(found.size()) - 1);
        frontier.push_back(static_cast<int>(found.size()) - 1);
    };

    try_add({}, Isometry::identity(ex.space));
    require(!found.empty(), "E_WINDOW", "base tile does not meet the window or segments");
    while (!frontier.empty() && !ex.capped) {
        int idx = frontier.front();
        frontier.pop_front();
        for (int gi = 0; gi < static_cast<int>(pairings.size()); ++gi) {
            std::vector<int> w = found[idx].word;
            w.push_back(gi);
            try_add(std::move(w), compose(found[idx].element, pairings[gi]));
        }
    }

    std::vector<int> order(found.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (found[a].word.size() != found[b].word.size())
            return found[a].word.size() < found[b].word.size();
        return found[a].word < found[b].word;
    });
    for (int i : order) {
        Tile t{found[i].word, found[i].element, transform(found[i].element, ex.base)};
        ex.tile_rows.push_back(detail::rows_of(ex.chart, t.poly));
        ex.tiles.push_back(std::move(t));
    }
    return ex;
}

// Partial tessellation from explicitly given tiles (carrying identity
// elements); cell and loop queries work on it like on an explored orbit.
inline Exploration make_partial_tessellation(const Space& space,
                                             const std::vector<Polyhedron>& polys,
                                             const Window& window,
                                             const ExploreOptions& opts = {}) {
    Exploration ex;
    ex.space = space.canonical();
    require(!polys.empty(), "E_WINDOW", "no tiles given");
    ex.base = polys.front();
    ex.window = window;
    ex.opts = opts;
    ex.chart = detail::window_chart(ex.space, window, 0.0);
    for (const auto& p : polys) {
        Tile t{{}, Isometry::identity(ex.space), p};
        ex.tile_rows.push_back(detail::rows_of(ex.chart, p));
        ex.tiles.push_back(std::move(t));
    }
    return ex;
}

// Smallest cell containing x: the intersection of the tiles containing it,
// with x in its relative interior. Codimension is read off the rank of the
// active constraint normals at x.
inline Cell cell_generated_by(const Exploration& ex, const Point& x) {
    Eigen::VectorXd c = detail::to_canonical_coords(x);
    double tol = ex.opts.tols.combinatorial;
    std::vector<int> owners = ex.tiles_containing(c, tol);
    require(!owners.empty(), "E_OUTSIDE", "point lies outside the explored tiles");
    std::vector<Eigen::VectorXd> active;
    for (int i : owners)
        for (const auto& z : ex.tiles[i].poly.halfspaces)
            if (std::abs(z.value_canonical(c)) <= tol) {
                auto [a, b] = ex.chart.row(z);
                double n = a.norm();
                if (n > 1e-12) active.push_back(a / n);
            }
    int rank = 0;
    if (!active.empty()) {
        Eigen::MatrixXd m(active.size(), active[0].size());
        for (size_t i = 0; i < active.size(); ++i) m.row(i) = active[i];
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
        for (int i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > 1e-6) ++rank;
    }
    return Cell{std::move(owners), rank, Point(ex.space.canonical(), c)};
}

// Relative-interior analysis of the intersection of a family of tiles.
inline SystemAnalysis intersect_tiles(const Exploration& ex, const std::vector<int>& which) {
    LinearSystem sys;
    sys.chart = ex.chart;
    for (int i : which)
        for (int r = 0; r < ex.tile_rows[i].size(); ++r)
            sys.rows.add(ex.tile_rows[i].a[r], ex.tile_rows[i].b[r]);
    if (auto dom = sys.chart.domain_region()) sys.regions.push_back(*dom);
    return analyze_system(sys, {}, ex.opts.tols.combinatorial);
}

struct CellComplex {
    std::vector<Cell> sides;  // codim-1 cells of the base tile, sorted by partner
    std::vector<Cell> edges;  // codim-2 cells of the base tile
};

// Sides of a tile: codim-1 intersections with other explored tiles.
inline std::vector<Cell> sides_of_tile(const Exploration& ex, int tile) {
    std::vector<Cell> sides;
    for (int j = 0; j < static_cast<int>(ex.tiles.size()); ++j) {
        if (j == tile) continue;
        auto an = intersect_tiles(ex, {tile, j});
        if (an.empty() || an.codim != 1) continue;
        std::vector<int> pair = {tile, j};
        std::sort(pair.begin(), pair.end());
        sides.push_back(Cell{pair, 1, chart_point_to_space(ex.chart, an.chart_point)});
    }
    return sides;
}

// Codim-1 and codim-2 cells of the base tile. Sides come from pairwise tile
// intersections; edges from refining pairwise side intersections (which are
// points in dimension 2 and segments on a line in dimension 3).
inline CellComplex classify_cells(const Exploration& ex, int tile = 0) {
    require(!ex.tiles.empty(), "E_WINDOW", "no tiles explored");
    const int n = ex.space.dim;
    require(n == 2 || n == 3, "E_SPACE", "cell classification supports dim 2 and 3");
    CellComplex out;
    out.sides = sides_of_tile(ex, tile);

    auto try_edge_at = [&](const Eigen::VectorXd& chart_u, std::vector<Cell>& into) {
        Eigen::VectorXd canonical;
        try {
            canonical = detail::to_canonical_coords(
                Point(ex.chart.space, ex.chart.from_chart(chart_u)));
        } catch (const error&) {
            return;  // left the chart (ideal boundary etc.)
        }
        Cell cell = cell_generated_by(ex, Point(ex.space.canonical(), canonical));
        if (cell.codim != 2) return;
        if (std::find(cell.tiles.begin(), cell.tiles.end(), tile) == cell.tiles.end()) return;
        for (const Cell& e : into)
            if (same_cell(e, cell)) return;
        into.push_back(std::move(cell));
    };

    for (size_t a = 0; a < out.sides.size(); ++a) {
        for (size_t b = a + 1; b < out.sides.size(); ++b) {
            std::vector<int> group = out.sides[a].tiles;
            for (int t : out.sides[b].tiles)
                if (std::find(group.begin(), group.end(), t) == group.end()) group.push_back(t);
            auto an = intersect_tiles(ex, group);
            if (an.empty() || an.codim != 2) continue;
            if (n == 2) {
                try_edge_at(an.chart_point, out.edges);
                continue;
            }
            // dim 3: the intersection lives on a line; split the base interval
            // at every parameter where the covering tile set can change
            Eigen::VectorXd p = an.chart_point;
            Eigen::VectorXd dir = an.hull.Q.col(0);
            Eigen::VectorXd q = p + dir;
            LinearSystem sys;
            sys.chart = ex.chart;
            for (int t : group)
                for (int r = 0; r < ex.tile_rows[t].size(); ++r)
                    sys.rows.add(ex.tile_rows[t].a[r], ex.tile_rows[t].b[r]);
            auto base_iv = segment_interval(sys.rows, p, q, -ex.chart.box, ex.chart.box, 1e-10);
            if (!base_iv) continue;
            auto [lo, hi] = *base_iv;
            if (auto dom = ex.chart.domain_region()) {
                auto clipped = clip_by_region(*dom, p, q, lo, hi);
                if (!clipped) continue;
                lo = clipped->first;
                hi = clipped->second;
            }
            std::vector<double> cuts = {lo, hi};
            for (size_t t = 0; t < ex.tiles.size(); ++t) {
                auto iv = segment_interval(ex.tile_rows[t], p, q, lo, hi, 1e-10);
                if (!iv) continue;
                cuts.push_back(iv->first);
                cuts.push_back(iv->second);
            }
            std::sort(cuts.begin(), cuts.end());
            for (size_t k = 0; k + 1 < cuts.size(); ++k) {
                if (cuts[k + 1] - cuts[k] <= 1e-9) continue;
                try_edge_at(p + (0.5 * (cuts[k] + cuts[k + 1])) * dir, out.edges);
            }
        }
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Cell& x, const Cell& y) { return x.tiles < y.tiles; });
    return out;
}

// The two sides of the given tile that contain the edge, as index pairs.
inline std::vector<Cell> sides_of_tile_through_edge(const Exploration& ex, const Cell& edge,
                                                    int tile) {
    std::vector<Cell> out;
    for (int q : edge.tiles) {
        if (q == tile) continue;
        auto an = intersect_tiles(ex, {tile, q});
        if (an.empty() || an.codim != 1) continue;
        std::vector<int> pair = {tile, q};
        std::sort(pair.begin(), pair.end());
        out.push_back(Cell{pair, 1, chart_point_to_space(ex.chart, an.chart_point)});
    }
    return out;
}

// Edge loop: the periodic tile sequence around a codim-2 cell, walking from
// (T, S) across sides until the start tile returns. The result lists exactly
// the tiles containing the edge.
inline std::vector<int> edge_loop(const Exploration& ex, const Cell& edge, const Cell& side,
                                  int tile) {
    require(std::find(edge.tiles.begin(), edge.tiles.end(), tile) != edge.tiles.end(),
            "E_INCIDENCE", "tile does not contain the edge");
    require(std::includes(edge.tiles.begin(), edge.tiles.end(), side.tiles.begin(),
                          side.tiles.end()),
            "E_INCIDENCE", "side does not contain the edge");
    require(std::find(side.tiles.begin(), side.tiles.end(), tile) != side.tiles.end(),
            "E_INCIDENCE", "side does not belong to the tile");

    std::vector<int> loop = {tile};
    std::vector<int> cur_side = side.tiles;
    int cur = tile;
    const int cap = 4096;
    for (int step = 0; step < cap; ++step) {
        int next = cur_side[0] == cur ? cur_side[1] : cur_side[0];
        loop.push_back(next);
        if (next == tile) return loop;
        auto sides = sides_of_tile_through_edge(ex, edge, next);
        if (sides.size() != 2)
            fail("E_WINDOW", "edge loop leaves the explored window; enlarge the window");
        if (sides[0].tiles != cur_side && sides[1].tiles != cur_side)
            fail("E_INCIDENCE", "edge loop lost its incoming side (tolerance failure)");
        cur_side = sides[0].tiles == cur_side ? sides[1].tiles : sides[0].tiles;
        cur = next;
    }
    fail("E_INCIDENCE", "edge loop failed to close");
}

struct VerifyCheck {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct VerifyReport {
    bool pass = true;
    std::vector<VerifyCheck> checks;
    int tiles = 0, sides = 0, edges = 0;
};

// Sample-based tessellation verification over the window: coverage,
// interior-disjointness, and the side/edge incidence counts.
inline VerifyReport verify_local_tessellation(const Polyhedron& p,
                                              const std::vector<Isometry>& pairings,
                                              const Window& window, int samples = 400,
                                              uint64_t seed = 0, const ExploreOptions& opts = {}) {
    VerifyReport rep;
    ExploreOptions vopts = opts;
    vopts.cap_is_error = false;
    Exploration ex;
    try {
        ex = explore_tiles(p, pairings, window, vopts);
    } catch (const error& err) {
        rep.pass = false;
        rep.checks.push_back({"exploration", false, err.what()});
        return rep;
    }
    if (ex.capped)
        rep.checks.push_back(
            {"exploration", false, "tile cap exceeded; group is likely not discontinuous"});
    rep.tiles = static_cast<int>(ex.tiles.size());
    double tol = opts.tols.combinatorial;

    QuadraticRegion ball =
        ex.chart.metric_ball(detail::to_canonical_coords(window.center), window.radius);
    // chart bounding box of the window ball, found by bisection along axes
    const int n = ex.chart.dim();
    Eigen::VectorXd lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        for (double sgn : {1.0, -1.0}) {
            double a = 0.0, b = 1.0;
            while (ball.value(ball.anchor + sgn * b * Eigen::VectorXd::Unit(n, i)) < 0.0 &&
                   b < 1e8)
                b *= 2.0;
            for (int k = 0; k < 60; ++k) {
                double m = 0.5 * (a + b);
                (ball.value(ball.anchor + sgn * m * Eigen::VectorXd::Unit(n, i)) < 0.0 ? a : b) =
                    m;
            }
            (sgn > 0 ? hi(i) : lo(i)) = sgn * a;
        }
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    VerifyCheck coverage{"coverage", true, ""};
    VerifyCheck disjoint{"interior-disjointness", true, ""};
    int accepted = 0;
    int guard = 0;
    while (accepted < samples && guard++ < samples * 400) {
        Eigen::VectorXd u(n);
        for (int i = 0; i < n; ++i) u(i) = ball.anchor(i) + lo(i) + (hi(i) - lo(i)) * unit(rng);
        if (ball.value(u) > 0.0) continue;
        if (ex.chart.space.kind == Kind::hyperbolic && u.norm() >= 1.0 - 1e-9) continue;
        ++accepted;
        Eigen::VectorXd c = ex.chart.from_chart(u);
        int owners = 0, strict_owners = 0;
        for (int t = 0; t < static_cast<int>(ex.tiles.size()); ++t) {
            bool inside = ex.tile_contains(t, c, tol);
            owners += inside;
            if (inside) {
                bool strict = true;
                for (const auto& z : ex.tiles[t].poly.halfspaces)
                    strict &= z.value_canonical(c) < -tol;
                strict_owners += strict;
            }
        }
        std::string witness = "sample " + std::to_string(accepted - 1);
        if (owners == 0 && coverage.pass) {
            coverage.pass = false;
            coverage.detail = witness + " uncovered";
        }
        if (strict_owners > 1 && disjoint.pass) {
            disjoint.pass = false;
            disjoint.detail = witness + " lies in " + std::to_string(strict_owners) +
                              " tile interiors";
        }
    }
    rep.checks.push_back(coverage);
    rep.checks.push_back(disjoint);

    VerifyCheck sides_chk{"side-incidence", true, ""};
    VerifyCheck edges_chk{"edge-incidence", true, ""};
    if (ex.capped) {
        for (const auto& c : rep.checks) rep.pass &= c.pass;
        return rep;  // incidence work is meaningless on a truncated orbit
    }
    try {
        CellComplex cc = classify_cells(ex);
        rep.sides = static_cast<int>(cc.sides.size());
        rep.edges = static_cast<int>(cc.edges.size());
        for (const Cell& s : cc.sides) {
            auto owners = ex.tiles_containing(detail::to_canonical_coords(s.rep), tol);
            if (owners.size() != 2) {
                sides_chk.pass = false;
                sides_chk.detail = "side has " + std::to_string(owners.size()) + " tiles";
                break;
            }
        }
        for (const Cell& e : cc.edges) {
            for (int t : e.tiles) {
                if (sides_of_tile_through_edge(ex, e, t).size() != 2) {
                    edges_chk.pass = false;
                    edges_chk.detail = "edge not in exactly two sides of tile " +
                                       std::to_string(t);
                    break;
                }
            }
            if (!edges_chk.pass) break;
        }
    } catch (const error& err) {
        edges_chk.pass = false;
        edges_chk.detail = err.what();
    }
    rep.checks.push_back(sides_chk);
    rep.checks.push_back(edges_chk);

    for (const auto& c : rep.checks) rep.pass &= c.pass;
    return rep;
}

}  // namespace poincare
