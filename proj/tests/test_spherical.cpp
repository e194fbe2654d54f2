#include <doctest.h>

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "poincare/pipeline.hpp"

using namespace poincare;
using namespace fixtures;

namespace {

Space s2 = Space::spherical(2);

// Fundamental chamber of the full tetrahedral reflection group on S^2: the
// Moebius triangle with angles (pi/2, pi/3, pi/3) cut out by the mirrors
// x = y, y = z, and x = -y.
Polyhedron tetrahedral_chamber() {
    std::vector<HalfSpace> hs = {
        HalfSpace(s2, Eigen::Vector3d(1, -1, 0)),   // x <= y
        HalfSpace(s2, Eigen::Vector3d(0, 1, -1)),   // y <= z
        HalfSpace(s2, Eigen::Vector3d(-1, -1, 0)),  // x + y >= 0
    };
    return Polyhedron(s2, hs);
}

std::vector<Isometry> chamber_reflections() {
    auto p = tetrahedral_chamber();
    return {reflection(p.halfspaces[0]), reflection(p.halfspaces[1]),
            reflection(p.halfspaces[2])};
}

Point sph(double x, double y, double z) {
    Eigen::Vector3d v(x, y, z);
    return Point(s2, v / v.norm());
}

}  // namespace

TEST_CASE("the tetrahedral chamber is a thick spherical triangle") {
    Polyhedron p = tetrahedral_chamber();
    CHECK(is_thick(p));
    CHECK(essential_halfspaces(p).size() == 3);
    Point c = relative_interior_point(p);
    CHECK(contains_strictly(p, c, 1e-4));
}

TEST_CASE("spherical exploration tiles the sphere chamber by chamber") {
    Polyhedron p = tetrahedral_chamber();
    Window win(sph(0, 0.35, 1), 1.1);
    Exploration ex = explore_tiles(p, chamber_reflections(), win);
    CHECK(ex.tiles.size() >= 6);
    CHECK(ex.tiles.size() <= 24);  // the full group has order 24
    // sampled interior points lie in at most one tile interior
    auto rng = std::mt19937_64(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        Eigen::Vector3d v(u(rng), u(rng), u(rng));
        if (v.norm() < 1e-6) continue;
        v /= v.norm();
        int strict = 0;
        for (const auto& t : ex.tiles) {
            bool inside = true;
            for (const auto& z : t.poly.halfspaces) inside &= z.value_canonical(v) < -1e-7;
            strict += inside;
        }
        CHECK(strict <= 1);
    }
}

TEST_CASE("the (2,3,3) triangle group presentation") {
    Polyhedron p = tetrahedral_chamber();
    GroupStructure gs = present_polyhedron(p, chamber_reflections(), chamber_reflections(),
                                           Window(sph(0, 0.35, 1), 1.15));
    CHECK(gs.cells.sides.size() == 3);
    CHECK(gs.cells.edges.size() == 3);
    CHECK(gs.pairings.generators.size() == 3);
    for (const auto& g : gs.pairings.generators) CHECK(g.involution);

    // cycle exponents at the three corners: one right angle, two pi/3 angles
    std::multiset<int> ts;
    for (const auto& c : gs.presentation.cycles) {
        CHECK(c.k == 2);
        ts.insert(c.t);
    }
    CHECK(ts == std::multiset<int>({2, 3, 3}));

    // relations: three squares plus the three corner words
    REQUIRE(gs.presentation.relations.size() == 6);
    for (const auto& r : gs.presentation.relations) {
        Isometry val = gs.pairings.eval(r.expanded(), s2);
        CHECK(iso_eq(val, Isometry::identity(s2), 1e-9));
    }
}

TEST_CASE("spherical local tessellation verifies and factors round trip") {
    Polyhedron p = tetrahedral_chamber();
    VerifyReport rep = verify_local_tessellation(p, chamber_reflections(),
                                                 Window(sph(0, 0.35, 1), 1.0), 300, 0);
    CHECK(rep.pass);

    GroupStructure gs = present_polyhedron(p, chamber_reflections(), chamber_reflections(),
                                           Window(sph(0, 0.35, 1), 1.15));
    auto rng = std::mt19937_64(7);
    for (int i = 0; i < 10; ++i) {
        Word w;
        int len = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < len; ++k)
            w.append({static_cast<int>(rng() % gs.pairings.generators.size()), 1});
        Isometry g = gs.pairings.eval(w, s2);
        FactorResult fr = factor_element(g, gs.domain, gs.pairings, 100 + i);
        CHECK(iso_eq(gs.pairings.eval(fr.word, s2), g, 1e-8));
    }
}

TEST_CASE("a lune-shaped spherical domain is rejected by the hemisphere policy") {
    // the Dirichlet cell of the cyclic rotation group about (1,1,1) is a lune
    // whose closure contains antipodal points; such domains are out of scope
    Eigen::Vector3d axis = Eigen::Vector3d(1, 1, 1).normalized();
    Eigen::Matrix3d rot = Eigen::AngleAxisd(2 * M_PI / 3, axis).toRotationMatrix();
    GroupInput in;
    in.space = s2;
    in.generators = {{"r", Isometry(s2, rot)}};
    in.basepoint = sph(1, 0, 0);
    in.word_radius = 2;
    CHECK_THROWS_WITH_AS(dirichlet_domain(in), doctest::Contains("hemisphere"), error);
}

TEST_CASE("spherical Dirichlet domain of the tetrahedral rotation group") {
    Eigen::Vector3d axis = Eigen::Vector3d(1, 1, 1).normalized();
    Eigen::Matrix3d r3 = Eigen::AngleAxisd(2 * M_PI / 3, axis).toRotationMatrix();
    Eigen::Matrix3d r2 = Eigen::AngleAxisd(M_PI, Eigen::Vector3d(0, 0, 1)).toRotationMatrix();
    GroupInput in;
    in.space = s2;
    in.generators = {{"a", Isometry(s2, r3)}, {"b", Isometry(s2, r2)}};
    in.basepoint = sph(0.31, 0.14, 0.94);
    in.word_radius = 4;
    DirichletResult dr = dirichlet_domain(in);
    CHECK(dr.stabilized);
    CHECK(is_thick(dr.domain));
    CHECK(contains_strictly(dr.domain, in.basepoint, 1e-6));
    VerifyReport rep = verify_local_tessellation(dr.domain, dr.wall_pairings,
                                                 Window(in.basepoint, 0.9), 300, 0);
    CHECK(rep.pass);
}
