#include <doctest.h>

#include "poincare/chart_affine.hpp"
#include "poincare/linprog.hpp"

using namespace poincare;

namespace {

lp::Rows rows2(std::initializer_list<std::pair<Eigen::Vector2d, double>> rs) {
    lp::Rows out;
    for (const auto& [a, b] : rs) out.add(a, b);
    return out;
}

}  // namespace

TEST_CASE("lp::maximize on a triangle") {
    // x >= 0, y >= 0, x + y <= 1
    lp::Rows r = rows2({{{-1, 0}, 0.0}, {{0, -1}, 0.0}, {{1, 1}, 1.0}});
    auto s1 = lp::maximize(r, Eigen::Vector2d(1, 0), 10.0);
    REQUIRE(s1.feasible);
    CHECK(s1.value == doctest::Approx(1.0).epsilon(1e-9));
    auto s2 = lp::maximize(r, Eigen::Vector2d(1, 1), 10.0);
    CHECK(s2.value == doctest::Approx(1.0).epsilon(1e-9));
    auto s3 = lp::maximize(r, Eigen::Vector2d(-1, -1), 10.0);
    CHECK(s3.value == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("lp::maximize detects infeasibility and respects the box") {
    lp::Rows r = rows2({{{1, 0}, 0.0}, {{-1, 0}, -1.0}});  // x <= 0 and x >= 1
    CHECK(!lp::maximize(r, Eigen::Vector2d(1, 0), 10.0).feasible);

    lp::Rows open_up = rows2({{{-1, 0}, 0.0}});  // x >= 0 only
    auto s = lp::maximize(open_up, Eigen::Vector2d(0, 1), 7.0);
    REQUIRE(s.feasible);
    CHECK(s.value == doctest::Approx(7.0));  // clamped by the box
}

TEST_CASE("margin_point finds the deepest point of a square") {
    lp::Rows r = rows2({{{1, 0}, 1.0}, {{-1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, -1}, 1.0}});
    auto m = lp::margin_point(r, 2, 50.0);
    REQUIRE(m.feasible);
    CHECK(m.margin == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m.u.lpNorm<Eigen::Infinity>() <= 1e-8);
}

TEST_CASE("margin_point goes negative on an empty system") {
    lp::Rows r = rows2({{{1, 0}, -2.0}, {{-1, 0}, -2.0}});  // x <= -2 and x >= 2
    auto m = lp::margin_point(r, 2, 50.0);
    REQUIRE(m.feasible);         // the relaxed system is solvable
    CHECK(m.margin < -1.9);      // but only with a large violation
}

TEST_CASE("strict_point cuts the feasible region down to the unit ball") {
    FeasibilityChart ct;
    ct.space = Space::hyperbolic(2);
    ct.box = 2.0;
    // a single row that is satisfied far outside the Klein ball
    lp::Rows r = rows2({{{-1, 0}, -0.9}});  // u_x >= 0.9
    std::vector<QuadraticRegion> regions = {*ct.domain_region()};
    auto sp = strict_point(ct, r, regions, 1e-7);
    CHECK(sp.status != StrictPoint::Status::empty);
    CHECK(sp.u(0) >= 0.9 - 1e-9);
    CHECK(sp.u.norm() < 1.0);

    lp::Rows impossible = rows2({{{-1, 0}, -1.1}});  // u_x >= 1.1: outside the ball
    auto sp2 = strict_point(ct, impossible, regions, 1e-7);
    CHECK(sp2.status == StrictPoint::Status::empty);
}

TEST_CASE("segment_interval and quadratic clipping") {
    lp::Rows r = rows2({{{1, 0}, 0.5}});  // x <= 0.5
    Eigen::Vector2d u0(0, 0), u1(1, 0);
    auto iv = segment_interval(r, u0, u1, 0.0, 1.0);
    REQUIRE(iv.has_value());
    CHECK(iv->first == doctest::Approx(0.0));
    CHECK(iv->second == doctest::Approx(0.5));

    QuadraticRegion ball;  // |u| <= 0.25
    ball.Q = Eigen::Matrix2d::Identity();
    ball.q = Eigen::Vector2d::Zero();
    ball.q0 = -0.0625;
    ball.anchor = Eigen::Vector2d::Zero();
    auto clipped = clip_by_region(ball, u0, u1, iv->first, iv->second);
    REQUIRE(clipped.has_value());
    CHECK(clipped->second == doctest::Approx(0.25).epsilon(1e-9));
}
