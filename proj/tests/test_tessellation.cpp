#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "poincare/tessellation.hpp"
#include "test_util.hpp"

using namespace poincare;

namespace {

Space e2 = Space::euclidean(2);
Space e3 = Space::euclidean(3);

Polyhedron wedge(int n) {
    double a = M_PI / n;
    return Polyhedron(e2, {HalfSpace(e2, Eigen::Vector2d(0, -1), 0.0),
                           HalfSpace(e2, Eigen::Vector2d(-std::sin(a), std::cos(a)), 0.0)});
}

std::vector<Isometry> wedge_reflections(int n) {
    auto p = wedge(n);
    return {reflection(p.halfspaces[0]), reflection(p.halfspaces[1])};
}

Polyhedron unit_square_centered() {
    std::vector<HalfSpace> hs;
    for (int axis = 0; axis < 2; ++axis)
        for (double s : {1.0, -1.0})
            hs.push_back(HalfSpace(e2, s * Eigen::Vector2d::Unit(axis), 0.5));
    return Polyhedron(e2, hs);
}

std::vector<Isometry> square_translations() {
    std::vector<Isometry> gens;
    for (int axis = 0; axis < 2; ++axis)
        for (double s : {1.0, -1.0}) gens.push_back(translation(e2, s * Eigen::Vector2d::Unit(axis)));
    return gens;
}

Polyhedron unit_cube_centered() {
    std::vector<HalfSpace> hs;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0})
            hs.push_back(HalfSpace(e3, s * Eigen::Vector3d::Unit(axis), 0.5));
    return Polyhedron(e3, hs);
}

std::vector<Isometry> cube_translations() {
    std::vector<Isometry> gens;
    for (int axis = 0; axis < 3; ++axis)
        for (double s : {1.0, -1.0}) gens.push_back(translation(e3, s * Eigen::Vector3d::Unit(axis)));
    return gens;
}

Point pt2(double x, double y) { return Point(e2, Eigen::Vector2d(x, y)); }
Point pt3(double x, double y, double z) { return Point(e3, Eigen::Vector3d(x, y, z)); }

// axis box as a polyhedron of R^3
Polyhedron box3(double x0, double x1, double y0, double y1, double z0, double z1) {
    std::vector<HalfSpace> hs = {
        HalfSpace(e3, Eigen::Vector3d(-1, 0, 0), -x0), HalfSpace(e3, Eigen::Vector3d(1, 0, 0), x1),
        HalfSpace(e3, Eigen::Vector3d(0, -1, 0), -y0), HalfSpace(e3, Eigen::Vector3d(0, 1, 0), y1),
        HalfSpace(e3, Eigen::Vector3d(0, 0, -1), -z0), HalfSpace(e3, Eigen::Vector3d(0, 0, 1), z1)};
    return Polyhedron(e3, hs);
}

// Staggered brick complex with an oblique roof cut: around the segment
// {y=1, z=1, 0<x<3} five tiles meet, and the loop through them has period 5.
// Tile letters follow the roles: A and B are the oblique lower wedges, C the
// front-bottom box under A, D the back-bottom box, E the upper wedge, F the
// back-top box.
Exploration staggered_bricks() {
    std::vector<Polyhedron> tiles;
    // 0: C = front-bottom-left box
    tiles.push_back(box3(0, 3, 0, 1, 0, 1));
    // 1: front-bottom-right box
    tiles.push_back(box3(3, 6, 0, 1, 0, 1));
    // 2: D = back-bottom box
    tiles.push_back(box3(0, 6, 1, 2, 0, 1));
    // 3: F = back-top box
    tiles.push_back(box3(0, 6, 1, 2, 1, 2));
    // 4: A = front lower wedge (left), below the oblique plane y + z = 2
    {
        auto b = box3(0, 3, 0, 1, 1, 2);
        auto hs = b.halfspaces;
        hs.push_back(HalfSpace(e3, Eigen::Vector3d(0, 1, 1), 2.0));
        tiles.push_back(Polyhedron(e3, hs));
    }
    // 5: B = front lower wedge (right)
    {
        auto b = box3(3, 6, 0, 1, 1, 2);
        auto hs = b.halfspaces;
        hs.push_back(HalfSpace(e3, Eigen::Vector3d(0, 1, 1), 2.0));
        tiles.push_back(Polyhedron(e3, hs));
    }
    // 6: E = upper wedge above the oblique plane, full width
    {
        auto b = box3(0, 6, 0, 1, 1, 2);
        auto hs = b.halfspaces;
        hs.push_back(HalfSpace(e3, Eigen::Vector3d(0, -1, -1), -2.0));
        tiles.push_back(Polyhedron(e3, hs));
    }
    return make_partial_tessellation(e3, tiles, Window(pt3(2, 1, 1), 3.0));
}

std::set<int> loop_set(const std::vector<int>& loop) {
    return std::set<int>(loop.begin(), loop.end());
}

}  // namespace

TEST_CASE("dihedral wedge n=3 explores six tiles around the origin") {
    Exploration ex = explore_tiles(wedge(3), wedge_reflections(3), Window(pt2(0, 0), 1.0));
    CHECK(ex.tiles.size() == 6);
    CHECK(ex.tiles[0].word.empty());
    // interiors of distinct tiles are disjoint at sampled points
    auto g = testutil::rng(2);
    for (int i = 0; i < 200; ++i) {
        Eigen::Vector2d x(testutil::uniform(g, -1, 1), testutil::uniform(g, -1, 1));
        int strict = 0;
        for (int t = 0; t < 6; ++t) {
            bool inside = true;
            for (const auto& z : ex.tiles[t].poly.halfspaces)
                inside &= z.value_canonical(x) < -1e-7;
            strict += inside;
        }
        CHECK(strict <= 1);
    }
}

TEST_CASE("a window inside the interior sees one tile") {
    Exploration ex = explore_tiles(wedge(4), wedge_reflections(4),
                                   Window(pt2(1.0, 0.3), 0.05));
    CHECK(ex.tiles.size() == 1);
}

TEST_CASE("square lattice: nine tiles meet the 1.1 ball, matching brute force") {
    Exploration ex = explore_tiles(unit_square_centered(), square_translations(),
                                   Window(pt2(0, 0), 1.1));
    // oracle: translate (i,j) meets the ball iff the clamped corner distance does
    std::set<std::pair<int, int>> expect;
    for (int i = -4; i <= 4; ++i)
        for (int j = -4; j <= 4; ++j) {
            double dx = std::max(0.0, std::abs(i) - 0.5), dy = std::max(0.0, std::abs(j) - 0.5);
            if (std::hypot(dx, dy) <= 1.1) expect.insert({i, j});
        }
    CHECK(ex.tiles.size() == expect.size());
    CHECK(expect.size() == 9);
    std::set<std::pair<int, int>> got;
    for (const auto& t : ex.tiles) {
        Eigen::VectorXd tr = t.element.matrix.topRightCorner(2, 1);
        got.insert({llround(tr(0)), llround(tr(1))});
    }
    CHECK(got == expect);
}

TEST_CASE("exploration order is deterministic and sorted") {
    Exploration a = explore_tiles(unit_square_centered(), square_translations(),
                                  Window(pt2(0, 0), 1.1));
    Exploration b = explore_tiles(unit_square_centered(), square_translations(),
                                  Window(pt2(0, 0), 1.1));
    for (size_t i = 0; i < a.tiles.size(); ++i) {
        CHECK(a.tiles[i].word == b.tiles[i].word);
        if (i > 0) CHECK(a.tiles[i - 1].word.size() <= a.tiles[i].word.size());
    }
}

TEST_CASE("tile elements match the product of generators along the word") {
    Exploration ex = explore_tiles(wedge(5), wedge_reflections(5), Window(pt2(0, 0), 1.0));
    for (const auto& t : ex.tiles) {
        Isometry prod = Isometry::identity(e2);
        for (int gi : t.word) prod = compose(prod, ex.pairings[gi]);
        CHECK(iso_eq(prod, t.element, 1e-9));
    }
}

TEST_CASE("cell_generated_by: interior, side, and the dihedral vertex") {
    int n = 4;
    Exploration ex = explore_tiles(wedge(n), wedge_reflections(n), Window(pt2(0, 0), 1.0));
    CHECK(ex.tiles.size() == 2 * n);

    Cell inside = cell_generated_by(ex, pt2(0.9, 0.2));
    CHECK(inside.codim == 0);
    CHECK(inside.tiles.size() == 1);

    Cell wall = cell_generated_by(ex, pt2(0.7, 0.0));
    CHECK(wall.codim == 1);
    CHECK(wall.tiles.size() == 2);

    Cell vertex = cell_generated_by(ex, pt2(0, 0));
    CHECK(vertex.codim == 2);
    CHECK(vertex.tiles.size() == 2 * n);

    Exploration sq = explore_tiles(unit_square_centered(), square_translations(),
                                   Window(pt2(0, 0), 1.1));
    CHECK_THROWS_AS(cell_generated_by(sq, pt2(50, 50)), error);
}

TEST_CASE("classify_cells: wedge has 2 sides and 1 edge") {
    Exploration ex = explore_tiles(wedge(3), wedge_reflections(3), Window(pt2(0, 0), 1.0));
    CellComplex cc = classify_cells(ex);
    CHECK(cc.sides.size() == 2);
    REQUIRE(cc.edges.size() == 1);
    CHECK(cc.edges[0].tiles.size() == 6);
}

TEST_CASE("classify_cells: unit square has 4 sides and 4 vertex edges") {
    Exploration ex = explore_tiles(unit_square_centered(), square_translations(),
                                   Window(pt2(0, 0), 1.2));
    CellComplex cc = classify_cells(ex);
    CHECK(cc.sides.size() == 4);
    CHECK(cc.edges.size() == 4);
    for (const Cell& e : cc.edges) CHECK(e.tiles.size() == 4);
}

TEST_CASE("classify_cells: unit cube has 6 sides and 12 edges") {
    Exploration ex = explore_tiles(unit_cube_centered(), cube_translations(),
                                   Window(pt3(0, 0, 0), 1.2));
    CHECK(ex.tiles.size() == 27);
    CellComplex cc = classify_cells(ex);
    CHECK(cc.sides.size() == 6);
    CHECK(cc.edges.size() == 12);
    for (const Cell& e : cc.edges) CHECK(e.tiles.size() == 4);
}

TEST_CASE("edge loops: dihedral vertex loop visits all 2n wedges") {
    int n = 3;
    Exploration ex = explore_tiles(wedge(n), wedge_reflections(n), Window(pt2(0, 0), 1.0));
    CellComplex cc = classify_cells(ex);
    REQUIRE(cc.edges.size() == 1);
    auto sides0 = sides_of_tile_through_edge(ex, cc.edges[0], 0);
    REQUIRE(sides0.size() == 2);
    auto loop = edge_loop(ex, cc.edges[0], sides0[0], 0);
    CHECK(loop.size() == 2 * n + 1);
    CHECK(loop.front() == loop.back());
    // oracle: exhaustive incidence — the loop tiles are exactly those containing the edge
    CHECK(loop_set(loop) == std::set<int>(cc.edges[0].tiles.begin(), cc.edges[0].tiles.end()));
    // starting from the other side gives the reversed loop
    auto rev = edge_loop(ex, cc.edges[0], sides0[1], 0);
    std::vector<int> expect(loop.rbegin(), loop.rend());
    CHECK(rev == expect);
}

TEST_CASE("edge loops: square lattice vertex has period 4") {
    Exploration ex = explore_tiles(unit_square_centered(), square_translations(),
                                   Window(pt2(0, 0), 1.2));
    CellComplex cc = classify_cells(ex);
    REQUIRE(!cc.edges.empty());
    for (const Cell& e : cc.edges) {
        auto sides0 = sides_of_tile_through_edge(ex, e, 0);
        REQUIRE(sides0.size() == 2);
        auto loop = edge_loop(ex, e, sides0[0], 0);
        CHECK(loop.size() == 5);
        CHECK(loop_set(loop) == std::set<int>(e.tiles.begin(), e.tiles.end()));
    }
}

TEST_CASE("staggered bricks reproduce the period-5 edge loop") {
    Exploration ex = staggered_bricks();
    const int C = 0, D = 2, F = 3, A = 4, E = 5 + 1;
    // the red edge {y=1, z=1, x in (0,3)}
    Cell red = cell_generated_by(ex, pt3(1.5, 1, 1));
    CHECK(red.codim == 2);
    CHECK(red.tiles == std::vector<int>({C, D, F, A, E}));

    // start (A, A∩C): expect (A, C, D, F, E, A)
    auto sidesA = sides_of_tile_through_edge(ex, red, A);
    REQUIRE(sidesA.size() == 2);
    Cell AC = sidesA[0].tiles == std::vector<int>({C, A}) ? sidesA[0] : sidesA[1];
    std::vector<int> ac = {C, A};
    REQUIRE(AC.tiles == ac);
    auto loop = edge_loop(ex, red, AC, A);
    CHECK(loop == std::vector<int>({A, C, D, F, E, A}));

    // start (D, C∩D): period 5 through the same five tiles
    auto sidesD = sides_of_tile_through_edge(ex, red, D);
    REQUIRE(sidesD.size() == 2);
    Cell CD = sidesD[0].tiles == std::vector<int>({C, D}) ? sidesD[0] : sidesD[1];
    auto loopD = edge_loop(ex, red, CD, D);
    CHECK(loopD.size() == 6);
    CHECK(loop_set(loopD) == std::set<int>({A, C, D, F, E}));

    // the blue edge {y=1, z=1, x in (3,6)} also has five tiles
    Cell blue = cell_generated_by(ex, pt3(4.5, 1, 1));
    CHECK(blue.codim == 2);
    CHECK(blue.tiles.size() == 5);
}

TEST_CASE("every explored edge lies in exactly two sides of each containing tile") {
    Exploration ex = explore_tiles(unit_cube_centered(), cube_translations(),
                                   Window(pt3(0, 0, 0), 1.2));
    CellComplex cc = classify_cells(ex);
    for (const Cell& e : cc.edges)
        for (int t : e.tiles) CHECK(sides_of_tile_through_edge(ex, e, t).size() == 2);
}

TEST_CASE("verify_local_tessellation passes for good inputs and fails a perturbed one") {
    VerifyReport ok1 = verify_local_tessellation(wedge(4), wedge_reflections(4),
                                                 Window(pt2(0, 0), 1.0), 300, 0);
    CHECK(ok1.pass);
    CHECK(ok1.tiles == 8);

    VerifyReport ok2 = verify_local_tessellation(unit_square_centered(), square_translations(),
                                                 Window(pt2(0, 0), 1.2), 300, 0);
    CHECK(ok2.pass);

    // wedge with a wrong pairing: rotation by 2 pi / n + epsilon
    int n = 4;
    double eps = 0.17;
    Isometry bad = rotation_about_basepoint(e2, 2 * M_PI / n + eps);
    ExploreOptions small_cap;
    small_cap.max_tiles = 300;
    VerifyReport fail_rep = verify_local_tessellation(
        wedge(n), {bad, inverse(bad)}, Window(pt2(0, 0), 1.0), 300, 0, small_cap);
    CHECK(!fail_rep.pass);
    bool witnessed = false;
    for (const auto& c : fail_rep.checks) witnessed |= !c.pass && !c.detail.empty();
    CHECK(witnessed);
}

TEST_CASE("exploration cap reports non-discontinuous-style blowup") {
    ExploreOptions opts;
    opts.max_tiles = 5;
    CHECK_THROWS_WITH_AS(explore_tiles(unit_square_centered(), square_translations(),
                                       Window(pt2(0, 0), 3.0), opts),
                         doctest::Contains("tile cap"), error);
}

TEST_CASE("near-identity non-identity pairing is flagged") {
    Isometry tiny = rotation_about_basepoint(e2, 1e-7);
    CHECK_THROWS_WITH_AS(explore_tiles(wedge(3), {tiny, inverse(tiny)}, Window(pt2(0, 0), 1.0)),
                         doctest::Contains("near-identity"), error);
}
