#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ifslab/ifs.hpp"
#include "ifslab/presets.hpp"

using namespace ifslab;

namespace {

const Space kCircle = Space::circle();
const Space kBox = Space::planar_box(Point(0, 0), Point(1, 1));

MapSpec scaling_half() {
  Affine2D a;
  a.linear = 0.5 * Eigen::Matrix2d::Identity();
  return a;
}

std::vector<MapSpec> circle_variants() {
  return {
      Rotation{0.25},
      Moebius{0.0, 0.5, 0.5},
      Moebius{0.3, 0.8, 0.7},
      Parabolic{0.2},
      PLCircleHomeo{{0.0, 0.25, 0.5}, {0.1, 0.5, 0.7}},
  };
}

}  // namespace

TEST_CASE("space distances") {
  CHECK(circle_distance(0.9, 0.1) == doctest::Approx(0.2));
  CHECK(circle_distance(0.0, 0.5) == doctest::Approx(0.5));
  CHECK(kBox.distance(Point(0, 0), Point(3.0 / 5, 4.0 / 5)) == doctest::Approx(1.0));
  // metric axioms on samples
  std::mt19937_64 rng(1);
  auto u = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (int i = 0; i < 200; ++i) {
    Point a(u(), 0), b(u(), 0), c(u(), 0);
    double ab = kCircle.distance(a, b);
    CHECK(ab >= 0.0);
    CHECK(ab == doctest::Approx(kCircle.distance(b, a)));
    CHECK(ab <= kCircle.distance(a, c) + kCircle.distance(c, b) + 1e-12);
  }
  CHECK(kCircle.distance(Point(0.3, 0), Point(0.3, 0)) == 0.0);
}

TEST_CASE("eval_map basics") {
  CHECK(eval_map(scaling_half(), kBox, Point(1, 1)).isApprox(Point(0.5, 0.5)));
  CHECK(eval_map(Rotation{0.25}, kCircle, Point(0.9, 0)).x() == doctest::Approx(0.15));
  CHECK(eval_map(Parabolic{0.2}, kCircle, Point(0, 0)).x() == 0.0);

  // circle canonicalization: results always in [0,1)
  std::mt19937_64 rng(7);
  auto u = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (const MapSpec& m : circle_variants())
    for (int i = 0; i < 500; ++i) {
      double y = eval_map(m, kCircle, Point(u() * 3.0 - 1.0, 0)).x();
      CHECK(y >= 0.0);
      CHECK(y < 1.0);
    }
}

TEST_CASE("eval_inverse round trips") {
  CHECK(eval_inverse(Rotation{0.25}, kCircle, Point(0.15, 0)).x() == doctest::Approx(0.9));
  CHECK(eval_inverse(scaling_half(), kBox, Point(0.5, 0.5)).isApprox(Point(1, 1)));

  double y = eval_map(Parabolic{0.2}, kCircle, Point(0.3, 0)).x();
  CHECK(eval_inverse(Parabolic{0.2}, kCircle, Point(y, 0)).x() == doctest::Approx(0.3).epsilon(1e-12));

  // inverse round-trip within 1e-9 on 1000 samples per invertible variant
  std::mt19937_64 rng(11);
  auto u = [&] { return (rng() >> 11) * 0x1.0p-53; };
  for (const MapSpec& m : circle_variants()) {
    for (int i = 0; i < 1000; ++i) {
      double x = u();
      double rt = eval_inverse(m, kCircle, eval_map(m, kCircle, Point(x, 0))).x();
      CHECK(circle_distance(rt, x) < 1e-9);
    }
  }
  Affine2D gen;
  gen.linear << 0.8, 0.3, -0.2, 0.6;
  gen.offset << 0.1, -0.4;
  for (int i = 0; i < 1000; ++i) {
    Point x(u() * 2 - 1, u() * 2 - 1);
    Point rt = eval_inverse(gen, kBox, eval_map(gen, kBox, x));
    CHECK((rt - x).norm() < 1e-9);
  }

  Affine2D singular;
  singular.linear << 1, 2, 2, 4;
  CHECK_THROWS_AS(eval_inverse(MapSpec(singular), kBox, Point(0, 0)), NotInvertibleError);
}

TEST_CASE("moebius fixed points and multiplier") {
  Moebius m{0.2, 0.7, 0.5};
  CHECK(eval_map(m, kCircle, Point(0.2, 0)).x() == 0.2);
  CHECK(eval_map(m, kCircle, Point(0.7, 0)).x() == 0.7);

  // finite-difference derivative at the attracting point equals the
  // multiplier within 1e-4
  double d = 1e-6;
  double fd = circle_distance(eval_map(m, kCircle, Point(0.2 + d, 0)).x(), 0.2) / d;
  CHECK(fd == doctest::Approx(0.5).epsilon(1e-4));
  double fd_r = circle_distance(eval_map(m, kCircle, Point(0.7 + d, 0)).x(), 0.7) / d;
  CHECK(fd_r == doctest::Approx(2.0).epsilon(1e-4));

  // analytic lift derivative agrees with finite differences everywhere
  for (double x : {0.01, 0.3, 0.49999, 0.5, 0.77, 0.95}) {
    double fd2 = circle_distance(eval_map(m, kCircle, Point(x + d, 0)).x(),
                                 eval_map(m, kCircle, Point(x, 0)).x()) / d;
    CHECK(lift_derivative(m, x) == doctest::Approx(fd2).epsilon(1e-4));
  }

  // attraction: orbits converge to the attracting fixed point
  double x = 0.45;
  for (int i = 0; i < 60; ++i) x = eval_map(m, kCircle, Point(x, 0)).x();
  CHECK(circle_distance(x, 0.2) < 1e-6);
}

TEST_CASE("parabolic map structure") {
  Parabolic p{0.2};
  // unique fixed point: |f(x) - x| > 0 away from the cell containing 0
  int zero_cells = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = (i + 0.5) / 10000.0;
    double gap = std::abs(lift_eval(p, x) - x);
    if (gap == 0.0) ++zero_cells;
    if (x > 1e-4 && x < 1.0 - 1e-4) CHECK(gap > 0.0);
  }
  CHECK(zero_cells == 0);  // grid centers never hit the fixed point exactly
  // derivative exactly 1 at the fixed point, positive everywhere
  CHECK(lift_derivative(p, 0.0) == 1.0);
  for (int i = 0; i < 1000; ++i) CHECK(lift_derivative(p, i / 1000.0) > 0.0);
}

TEST_CASE("pl homeomorphism lift") {
  PLCircleHomeo pl{{0.0, 0.5}, {0.2, 0.6}};
  MapSpec m = pl;
  CHECK(eval_map(m, kCircle, Point(0.0, 0)).x() == doctest::Approx(0.2));
  CHECK(eval_map(m, kCircle, Point(0.5, 0)).x() == doctest::Approx(0.6));
  CHECK(eval_map(m, kCircle, Point(0.25, 0)).x() == doctest::Approx(0.4));
  // lift equivariance F(x+1) = F(x)+1
  for (double x : {-0.7, 0.1, 0.6, 2.3})
    CHECK(lift_eval(m, x + 1.0) == doctest::Approx(lift_eval(m, x) + 1.0));
  // monotone
  double prev = lift_eval(m, 0.0);
  for (int i = 1; i <= 200; ++i) {
    double cur = lift_eval(m, i / 200.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("map validation") {
  CHECK_THROWS_AS(validate_map(Moebius{0.3, 0.3, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(validate_map(Parabolic{0.5}), std::invalid_argument);  // >= 1/pi
  CHECK_THROWS_AS(validate_map(PLCircleHomeo{{0.0, 0.5}, {0.6, 0.2}}), std::invalid_argument);
  CHECK_THROWS_AS(validate_map(Rotation{1.5}), std::invalid_argument);
  CHECK_NOTHROW(validate_map(Parabolic{0.2}));
}

TEST_CASE("lipschitz bounds") {
  Affine2D half;
  half.linear = 0.5 * Eigen::Matrix2d::Identity();
  half.offset << 0.3, 0.7;
  CHECK(lipschitz_bound(MapSpec(half), kBox) == doctest::Approx(0.5));

  double rot = lipschitz_bound(MapSpec(Rotation{0.33}), kCircle);
  CHECK(rot >= 1.0);
  CHECK(rot <= 1.05 + 1e-12);

  // parabolic: true sup of the derivative is 1 + 0.2*pi at x = 1/4
  double expect = 1.0 + 0.2 * std::numbers::pi;
  double got = lipschitz_bound(MapSpec(Parabolic{0.2}), kCircle);
  CHECK(got >= expect - 1e-9);
  CHECK(got <= expect * 1.05 + 1e-9);
}

TEST_CASE("orbital branch composition") {
  auto sier = make_preset("sierpinski");
  // word (1,2) at the origin: f2(f1(0,0)) = (0.5, 0)
  Point p = orbital_branch(sier.ifs, SymbolWord({1, 2}, 3), Point(0, 0));
  CHECK(p.isApprox(Point(0.5, 0.0)));
  // empty word is the identity
  CHECK(orbital_branch(sier.ifs, SymbolWord({}, 3), Point(0.3, 0.4)).isApprox(Point(0.3, 0.4)));

  // cocycle law on 100 random words of length <= 8:
  // branch(u.v, x) == branch(v, branch(u, x))
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> u(rng() % 9), v(rng() % 9);
    for (auto& s : u) s = 1 + static_cast<int>(rng() % 3);
    for (auto& s : v) s = 1 + static_cast<int>(rng() % 3);
    Point x((rng() >> 11) * 0x1.0p-53, (rng() >> 11) * 0x1.0p-53);
    std::vector<int> uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    Point lhs = orbital_branch(sier.ifs, SymbolWord(uv, 3), x);
    Point rhs = orbital_branch(sier.ifs, SymbolWord(v, 3), orbital_branch(sier.ifs, SymbolWord(u, 3), x));
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("fiberwise orbit") {
  Ifs rot(Space::circle(), {Rotation{golden_angle()}});
  auto stream = SymbolStream::champernowne(1);
  CHECK(fiberwise_orbit(rot, stream, Point(0.1, 0), 0).empty());

  auto s2 = SymbolStream::champernowne(1);
  auto orbit = fiberwise_orbit(rot, s2, Point(0.1, 0), 3);
  REQUIRE(orbit.size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(orbit[static_cast<std::size_t>(i)].x() ==
          doctest::Approx(wrap01(0.1 + (i + 1) * golden_angle())));
  CHECK(s2.position() == 3);

  // prefix property: orbit(n+1) extends orbit(n)
  auto s3 = SymbolStream::champernowne(1);
  auto longer = fiberwise_orbit(rot, s3, Point(0.1, 0), 4);
  for (int i = 0; i < 3; ++i)
    CHECK(longer[static_cast<std::size_t>(i)].x() == orbit[static_cast<std::size_t>(i)].x());

  // finite stream exhaustion
  auto fin = SymbolStream::explicit_word(SymbolWord({1, 1}, 1));
  CHECK_THROWS_AS(fiberwise_orbit(rot, fin, Point(0, 0), 3), StreamExhaustedError);
}

TEST_CASE("skew step") {
  auto pre = make_preset("circle_minimal");
  auto stream = SymbolStream::champernowne(2);
  SkewState st{0, Point(0.37, 0)};
  auto replay = stream.clone();
  auto orbit = fiberwise_orbit(pre.ifs, replay, Point(0.37, 0), 5);
  for (int i = 0; i < 5; ++i) {
    st = skew_step(pre.ifs, st, stream);
    CHECK(st.stream_position == i + 1);
    CHECK(st.point.x() == doctest::Approx(orbit[static_cast<std::size_t>(i)].x()));
  }
}
