#pragma once

#include <cmath>
#include <vector>

#include "poincare/dirichlet.hpp"
#include "poincare/halfspace.hpp"
#include "poincare/polyhedron.hpp"

namespace fixtures {

using namespace poincare;

inline Space e2() { return Space::euclidean(2); }
inline Space e3() { return Space::euclidean(3); }
inline Space h2() { return Space::hyperbolic(2); }

inline Point pt2(double x, double y) { return Point(e2(), Eigen::Vector2d(x, y)); }
inline Point pt3(double x, double y, double z) { return Point(e3(), Eigen::Vector3d(x, y, z)); }

// acute wedge between the half-lines at angles 0 and pi/n
inline Polyhedron wedge(int n) {
    double a = M_PI / n;
    return Polyhedron(e2(), {HalfSpace(e2(), Eigen::Vector2d(0, -1), 0.0),
                             HalfSpace(e2(), Eigen::Vector2d(-std::sin(a), std::cos(a)), 0.0)});
}

inline std::vector<Isometry> wedge_reflections(int n) {
    auto p = wedge(n);
    return {reflection(p.halfspaces[0]), reflection(p.halfspaces[1])};
}

inline Polyhedron unit_square() {
    std::vector<HalfSpace> hs;
    for (int axis = 0; axis < 2; ++axis)
        for (double s : {1.0, -1.0})
            hs.push_back(HalfSpace(e2(), s * Eigen::Vector2d::Unit(axis), 0.5));
    return Polyhedron(e2(), hs);
}

inline std::vector<Isometry> square_translations() {
    std::vector<Isometry> gens;
    for (int axis = 0; axis < 2; ++axis)
        for (double s : {1.0, -1.0})
            gens.push_back(translation(e2(), s * Eigen::Vector2d::Unit(axis)));
    return gens;
}

inline Polyhedron unit_cube() {
    std::vector<HalfSpace> hs;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0})
            hs.push_back(HalfSpace(e3(), s * Eigen::Vector3d::Unit(axis), 0.5));
    return Polyhedron(e3(), hs);
}

inline std::vector<Isometry> cube_translations() {
    std::vector<Isometry> gens;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0})
            gens.push_back(translation(e3(), s * Eigen::Vector3d::Unit(axis)));
    return gens;
}

// PSL(2, Z) in the Lorentz picture: T: z -> z + 1 and S: z -> -1/z
inline Isometry psl_T() { return lorentz_from_moebius(1, 1, 0, 1); }
inline Isometry psl_S() { return lorentz_from_moebius(0, -1, 1, 0); }

inline GroupInput psl2z_input(int radius = 3) {
    GroupInput in;
    in.space = h2();
    in.generators = {{"T", psl_T()}, {"S", psl_S()}};
    in.basepoint = half_plane_point(0, 2);
    in.word_radius = radius;
    return in;
}

inline GroupInput z2_input(int radius = 2) {
    GroupInput in;
    in.space = e2();
    in.generators = {{"x", translation(e2(), Eigen::Vector2d(1, 0))},
                     {"y", translation(e2(), Eigen::Vector2d(0, 1))}};
    in.basepoint = pt2(0, 0);
    in.word_radius = radius;
    return in;
}

}  // namespace fixtures
