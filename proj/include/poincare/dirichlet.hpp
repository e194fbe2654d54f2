#pragma once

#include <string>
#include <utility>
#include <vector>

#include "poincare/polyhedron.hpp"
#include "poincare/tessellation.hpp"

namespace poincare {

struct NamedIsometry {
    std::string name;
    Isometry value;
};

struct GroupInput {
    Space space;
    std::vector<NamedIsometry> generators;
    Point basepoint;
    int word_radius = 4;
    Tolerances tols;
};

struct DirichletResult {
    Polyhedron domain;                    // reduced to essential walls
    std::vector<Isometry> wall_pairings;  // aligned with domain.halfspaces
    bool stabilized = false;              // radius+1 produced the same walls
};

namespace detail {

struct OrbitPoint {
    Isometry element;
    Eigen::VectorXd coords;  // canonical coordinates of element(basepoint)
};

// distinct orbit points of the basepoint under words of length <= radius;
// words are enumerated breadth-first over the generators and their inverses
inline std::vector<OrbitPoint> enumerate_orbit(const GroupInput& input, int radius) {
    std::vector<Isometry> steps;
    for (const auto& g : input.generators) {
        steps.push_back(g.value);
        steps.push_back(inverse(g.value));
    }
    Point base = to_canonical(input.basepoint);
    std::vector<Isometry> elements = {Isometry::identity(input.space)};
    std::vector<OrbitPoint> orbit;
    size_t frontier_begin = 0;
    for (int len = 1; len <= radius; ++len) {
        size_t frontier_end = elements.size();
        for (size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& s : steps) {
                Isometry g = compose(elements[i], s);
                bool dup = false;
                for (const auto& e : elements)
                    if ((e.matrix - g.matrix).lpNorm<Eigen::Infinity>() <= 1e-8) {
                        dup = true;
                        break;
                    }
                if (dup) continue;
                elements.push_back(g);
                Eigen::VectorXd o = detail::to_canonical_coords(apply(g, base));
                require(dist(Point(base.space, o), base) > 1e-8, "E_STABILIZER",
                        "basepoint is fixed by a non-identity word");
                bool seen = false;
                for (const auto& op : orbit)
                    if ((op.coords - o).lpNorm<Eigen::Infinity>() <= 1e-9) {
                        seen = true;
                        break;
                    }
                if (!seen) orbit.push_back({g, o});
            }
        }
        frontier_begin = frontier_end;
    }
    return orbit;
}

}  // namespace detail

// Dirichlet fundamental domain: the intersection of the bisector half-spaces
// {x : d(x, x0) <= d(x, g x0)} over the enumerated orbit, reduced to its
// essential walls. Each wall keeps the orbit element that produced it — that
// element is the side-pairing transformation of the wall. The result is
// flagged stabilized when radius+1 adds nothing.
inline DirichletResult dirichlet_domain(const GroupInput& input) {
    require(valid_point(input.basepoint), "E_POINT", "invalid basepoint");
    require(input.word_radius >= 1, "E_INPUT", "word radius must be at least 1");
    Point base = to_canonical(input.basepoint);

    auto build = [&](int radius) {
        auto orbit = detail::enumerate_orbit(input, radius);
        std::vector<HalfSpace> walls;
        std::vector<Isometry> pairings;
        for (const auto& op : orbit) {
            walls.push_back(bisector(base, Point(base.space, op.coords)));
            pairings.push_back(op.element);
        }
        return std::pair(walls, pairings);
    };

    auto [walls, pairings] = build(input.word_radius);
    DirichletResult out;
    if (walls.empty()) {  // trivial group: the whole space
        out.domain = Polyhedron::whole_space(input.space);
        out.stabilized = true;
        return out;
    }
    Polyhedron full(input.space, walls);
    auto flags = essential_flags(full, input.tols);
    std::vector<HalfSpace> ess;
    for (size_t i = 0; i < walls.size(); ++i)
        if (flags[i]) {
            ess.push_back(walls[i]);
            out.wall_pairings.push_back(pairings[i]);
        }
    out.domain = Polyhedron(input.space, ess);

    // stability: one more shell of words must not change the essential walls
    auto [walls2, pairings2] = build(input.word_radius + 1);
    Polyhedron full2(input.space, walls2);
    auto flags2 = essential_flags(full2, input.tols);
    std::vector<const HalfSpace*> ess2;
    for (size_t i = 0; i < walls2.size(); ++i)
        if (flags2[i]) ess2.push_back(&walls2[i]);
    out.stabilized = ess2.size() == ess.size();
    if (out.stabilized) {
        for (const auto& z : ess) {
            bool found = false;
            for (const auto* z2 : ess2)
                found |= (z.normal - z2->normal).lpNorm<Eigen::Infinity>() <= 1e-6 &&
                         std::abs(z.offset - z2->offset) <= 1e-6;
            if (!found) {
                out.stabilized = false;
                break;
            }
        }
    }
    return out;
}

}  // namespace poincare
