#include <doctest.h>

#include "fixtures.hpp"
#include "poincare/io.hpp"
#include "poincare/svg.hpp"

using namespace poincare;
using namespace fixtures;
using io::json;

namespace {

json dihedral_input(int n) {
    auto refl = wedge_reflections(n);
    json j;
    j["space"] = {{"kind", "euclidean"}, {"dim", 2}};
    j["generators"] = json::array();
    j["generators"].push_back(
        {{"name", "r1"}, {"matrix", io::matrix_to_json(refl[0].matrix)}});
    j["generators"].push_back(
        {{"name", "r2"}, {"matrix", io::matrix_to_json(refl[1].matrix)}});
    json hs = json::array();
    for (const auto& z : wedge(n).halfspaces) hs.push_back(io::halfspace_to_json(z));
    j["polyhedron"] = {{"halfspaces", hs}};
    j["basepoint"] = {0.9, 0.3};
    j["window"] = {{"center", {0.0, 0.0}}, {"radius", 1.0}};
    return j;
}

}  // namespace

TEST_CASE("job input round trip: spaces, matrices, half-spaces") {
    json j = dihedral_input(3);
    io::JobInput in = io::input_from_json(j);
    CHECK(in.space == e2());
    CHECK(in.generators.size() == 2);
    CHECK(in.polyhedron.has_value());
    CHECK(in.polyhedron->halfspaces.size() == 2);
    CHECK(in.window.has_value());
    CHECK(in.window->radius == 1.0);
    CHECK(iso_eq(in.generators[0].value, wedge_reflections(3)[0], 1e-12));
}

TEST_CASE("schema violations carry stable codes") {
    CHECK_THROWS_WITH_AS(io::input_from_json(json{{"foo", 1}}), doctest::Contains("E_SCHEMA"),
                         error);
    json bad = dihedral_input(3);
    bad["space"]["kind"] = "elliptic";
    CHECK_THROWS_WITH_AS(io::input_from_json(bad), doctest::Contains("E_SCHEMA"), error);
    json badgen = dihedral_input(3);
    badgen["generators"][0]["matrix"] = io::matrix_to_json(2.0 * Eigen::Matrix3d::Identity());
    CHECK_THROWS_WITH_AS(io::input_from_json(badgen), doctest::Contains("E_INVALID_ISOMETRY"),
                         error);
}

TEST_CASE("generator words evaluate with inverses and powers") {
    io::JobInput in = io::input_from_json(dihedral_input(4));
    Isometry r1 = in.generators[0].value, r2 = in.generators[1].value;
    CHECK(iso_eq(io::eval_generator_word(e2(), in.generators, "r1*r2"), compose(r1, r2), 1e-10));
    CHECK(iso_eq(io::eval_generator_word(e2(), in.generators, "r1^-1"), inverse(r1), 1e-10));
    CHECK(iso_eq(io::eval_generator_word(e2(), in.generators, "r1^2"), compose(r1, r1), 1e-10));
    CHECK_THROWS_AS(io::eval_generator_word(e2(), in.generators, "bogus"), error);
}

TEST_CASE("presentation serialization: JSON fields and GAP text") {
    GroupStructure gs = present_polyhedron(wedge(3), wedge_reflections(3), wedge_reflections(3),
                                           Window(pt2(0, 0), 1.0));
    json pj = io::presentation_to_json(gs.presentation);
    CHECK(pj["generators"].size() == 2);
    CHECK(pj["relations"] == json::array({"a^2", "b^2", "(a*b)^3"}));
    CHECK(pj["cycles"].size() == 1);
    CHECK(pj["cycles"][0]["k"] == 2);
    CHECK(pj["cycles"][0]["t"] == 3);

    std::string gap = io::presentation_to_gap(gs.presentation);
    CHECK(gap.find("F := FreeGroup(\"a\", \"b\");") != std::string::npos);
    CHECK(gap.find("rels := [a^2, b^2, (a*b)^3];") != std::string::npos);
}

TEST_CASE("svg output is deterministic and plausibly structured") {
    GroupStructure gs = present_polyhedron(wedge(3), wedge_reflections(3), wedge_reflections(3),
                                           Window(pt2(0, 0), 1.0));
    std::string a = svg::render(gs.ex, gs.cells, gs.pairings, Chart::cartesian);
    std::string b = svg::render(gs.ex, gs.cells, gs.pairings, Chart::cartesian);
    CHECK(a == b);
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("polyline") != std::string::npos);
    // two pairing colors
    CHECK(a.find("#1f77b4") != std::string::npos);
    CHECK(a.find("#d62728") != std::string::npos);
}

TEST_CASE("hyperbolic svg renders in the half-space chart") {
    GroupStructure gs = present_group(psl2z_input());
    std::string s = svg::render(gs.ex, gs.cells, gs.pairings, Chart::half_space);
    CHECK(s.find("<svg") == 0);
    CHECK(s.find("polyline") != std::string::npos);
}

TEST_CASE("diagnostics are JSON lines with stable codes") {
    std::string line = io::diagnostic_line("E_TEST", "message");
    json j = json::parse(line);
    CHECK(j["code"] == "E_TEST");
    CHECK(j["message"] == "message");
}
