#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "poincare/presentation.hpp"

namespace poincare::svg {

// Deterministic SVG of a 2-D exploration: each tile's sides drawn as
// polylines in the requested display chart (straight lines in cartesian and
// Klein charts, arcs elsewhere come out of the dense sampling), color-keyed
// by the pairing of the underlying base side, clipped to the window box.
inline std::string render(const Exploration& ex, const CellComplex& cells,
                          const PairingSet& pairings, Chart display_chart,
                          int samples_per_side = 64) {
    require(ex.space.dim == 2, "E_DRAW", "drawing supports dimension 2 only");
    const std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    auto fmt = [](double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.6f", v);
        return std::string(buf);
    };

    // window bounding box in the display chart, from exp-map boundary samples
    Eigen::VectorXd wc = detail::to_canonical_coords(ex.window.center);
    Space cs = ex.space.canonical();
    double minx = 1e300, maxx = -1e300, miny = 1e300, maxy = -1e300;
    for (int i = 0; i < 64; ++i) {
        double th = 2 * M_PI * i / 64;
        Eigen::VectorXd dir(2);
        dir << std::cos(th), std::sin(th);
        Eigen::VectorXd c = wc;
        if (cs.kind == Kind::euclidean) {
            c += ex.window.radius * dir;
        } else {
            Eigen::VectorXd tangent = Eigen::VectorXd::Zero(cs.ambient_dim());
            tangent.head(2) = dir;
            if (cs.kind == Kind::hyperbolic) {
                tangent = tangent + lorentz_inner(tangent, wc) * wc;
                tangent /= std::sqrt(std::max(1e-14, lorentz_inner(tangent, tangent)));
                c = std::cosh(ex.window.radius) * wc + std::sinh(ex.window.radius) * tangent;
            } else {
                tangent = tangent - tangent.dot(wc) * wc;
                if (tangent.norm() < 1e-12) continue;
                tangent /= tangent.norm();
                c = std::cos(ex.window.radius) * wc + std::sin(ex.window.radius) * tangent;
            }
        }
        Eigen::VectorXd d = convert(Point(cs, c), display_chart).coords;
        minx = std::min(minx, d(0));
        maxx = std::max(maxx, d(0));
        miny = std::min(miny, d(1));
        maxy = std::max(maxy, d(1));
    }
    double pad = 0.04 * std::max(maxx - minx, maxy - miny);
    minx -= pad;
    maxx += pad;
    miny -= pad;
    maxy += pad;

    QuadraticRegion window_ball =
        ex.chart.metric_ball(wc, ex.window.radius * 1.05 + 0.05);

    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(minx) + " " +
           fmt(-maxy) + " " + fmt(maxx - minx) + " " + fmt(maxy - miny) + "\">\n";
    out += "<defs><clipPath id=\"win\"><rect x=\"" + fmt(minx) + "\" y=\"" + fmt(-maxy) +
           "\" width=\"" + fmt(maxx - minx) + "\" height=\"" + fmt(maxy - miny) +
           "\"/></clipPath></defs>\n";
    out += "<g clip-path=\"url(#win)\" fill=\"none\" stroke-linecap=\"round\">\n";

    // base-side carriers as oriented half-spaces of the base polyhedron
    std::vector<HalfSpace> side_walls;
    for (const Cell& side : cells.sides) {
        Eigen::VectorXd rep = detail::to_canonical_coords(side.rep);
        const HalfSpace* wall = nullptr;
        for (const auto& z : ex.base.halfspaces)
            if (std::abs(z.value_canonical(rep)) <= ex.opts.tols.combinatorial) wall = &z;
        require(wall != nullptr, "E_DRAW", "side representative is not on any wall");
        side_walls.push_back(*wall);
    }

    for (size_t ti = 0; ti < ex.tiles.size(); ++ti) {
        for (size_t si = 0; si < cells.sides.size(); ++si) {
            HalfSpace moved = transform(ex.tiles[ti].element, side_walls[si]);
            auto [a, b] = ex.chart.row(moved);
            if (a.norm() < 1e-12) continue;
            // carrier line of the wall in chart coordinates
            Eigen::VectorXd p0 = (b / a.squaredNorm()) * a;
            Eigen::VectorXd dir(2);
            dir << -a(1), a(0);
            dir /= dir.norm();
            double span = 4.0 * (std::abs(maxx - minx) + std::abs(maxy - miny)) + 4.0;
            auto iv = segment_interval(ex.tile_rows[ti], p0, p0 + dir, -span, span, 1e-10);
            if (!iv) continue;
            double lo = iv->first, hi = iv->second;
            if (auto dom = ex.chart.domain_region()) {
                auto clip = clip_by_region(*dom, p0, p0 + dir, lo, hi);
                if (!clip) continue;
                lo = clip->first;
                hi = clip->second;
            }
            if (auto clip = clip_by_region(window_ball, p0, p0 + dir, lo, hi)) {
                lo = clip->first;
                hi = clip->second;
            } else {
                continue;
            }
            if (hi - lo <= 1e-9) continue;
            std::string pts;
            for (int k = 0; k <= samples_per_side; ++k) {
                double t = lo + (hi - lo) * k / samples_per_side;
                Eigen::VectorXd canon;
                try {
                    canon = ex.chart.from_chart(p0 + t * dir);
                } catch (const error&) {
                    continue;
                }
                Eigen::VectorXd d = convert(Point(cs, canon), display_chart).coords;
                if (!pts.empty()) pts += " ";
                pts += fmt(d(0)) + "," + fmt(-d(1));
            }
            if (pts.empty()) continue;
            const std::string& color = palette[pairings.by_side[si].letter.gen % palette.size()];
            double width = ti == 0 ? 0.010 : 0.004;
            out += "<polyline points=\"" + pts + "\" stroke=\"" + color + "\" stroke-width=\"" +
                   fmt(width * (maxx - minx)) + "\"/>\n";
        }
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace poincare::svg
