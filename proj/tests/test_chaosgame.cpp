#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ifslab/chaos_game.hpp"
#include "ifslab/diagnostics.hpp"
#include "ifslab/minimality.hpp"
#include "ifslab/presets.hpp"

using namespace ifslab;

namespace {

GridSet sierpinski_reference(const Ifs& ifs, double h) {
  GridSet seed(ifs.space, h);
  seed.stamp_point(Point(0, 0));
  auto [limit, trace] = hutchinson_iterate(ifs, seed, 60, 2 * h);
  REQUIRE(trace.converged);
  return limit;
}

}  // namespace

TEST_CASE("probabilistic runner basics") {
  auto sier = make_preset("sierpinski");
  double h = 1.0 / 64;
  GridSet ref = sierpinski_reference(sier.ifs, h);

  // N == burn_in leaves an empty post-burn-in orbit
  auto empty = run_probabilistic(sier.ifs, Point(0, 0),
                                 SymbolStream::bernoulli({1. / 3, 1. / 3, 1. / 3}, 1), 50, 50,
                                 h, ref);
  CHECK(empty.coverage == 0.0);
  CHECK(empty.hit_cells == 0);

  auto rep = run_probabilistic(sier.ifs, Point(0, 0),
                               SymbolStream::bernoulli({1. / 3, 1. / 3, 1. / 3}, 1), 100000,
                               100, h, ref);
  CHECK(rep.coverage >= 0.99);
  CHECK(rep.hit_cells <= rep.attractor_cells);
  // curve non-decreasing, and coverage(N2) >= coverage(N1)
  for (std::size_t i = 1; i < rep.curve.size(); ++i) {
    CHECK(rep.curve[i].second >= rep.curve[i - 1].second);
    CHECK(rep.curve[i].first > rep.curve[i - 1].first);
  }
  CHECK(rep.curve.back().second == rep.coverage);

  // orbit stays near the attractor
  CHECK(hausdorff_distance(rep.orbit, ref) <= 3 * ref.cell_diagonal());
}

TEST_CASE("deterministic runner replays one stream") {
  auto sier = make_preset("sierpinski");
  double h = 1.0 / 64;
  GridSet ref = sierpinski_reference(sier.ifs, h);
  std::vector<Point> seeds{Point(0, 0), Point(0.9, 0.9), Point(0.5, 0.1)};
  auto stream = SymbolStream::champernowne(3);

  auto reports = run_deterministic(sier.ifs, seeds, stream, 200000, 100, h, ref);
  REQUIRE(reports.size() == 3);
  for (const auto& r : reports) CHECK(r.coverage >= 0.99);

  // bit-identical replay
  auto again = run_deterministic(sier.ifs, seeds, stream, 200000, 100, h, ref);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].hit_cells == again[i].hit_cells);
    CHECK(reports[i].orbit == again[i].orbit);
    CHECK(reports[i].curve == again[i].curve);
  }
}

TEST_CASE("deterministic chaos game also succeeds with a shuffled disjunctive stream") {
  auto sier = make_preset("sierpinski");
  double h = 1.0 / 64;
  GridSet ref = sierpinski_reference(sier.ifs, h);
  std::vector<Point> seeds{Point(0, 0), Point(0.9, 0.9)};
  auto champ = run_deterministic(sier.ifs, seeds, SymbolStream::champernowne(3), 200000, 100, h, ref);
  auto shuffled = run_deterministic(sier.ifs, seeds, SymbolStream::champernowne_shuffled(3, 5),
                                    200000, 100, h, ref);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    CHECK(champ[i].coverage >= 0.99);
    CHECK(shuffled[i].coverage >= 0.99);
  }
}

TEST_CASE("single rotation covers the circle deterministically") {
  Ifs rot(Space::circle(), {Rotation{golden_angle()}});
  GridSet ref = grid_full(Space::circle(), 1e-2);
  std::vector<Point> seeds{Point(0, 0), Point(0.37, 0), Point(0.71, 0)};
  auto reports = run_deterministic(rot, seeds, SymbolStream::champernowne(1), 1000, 0, 1e-2, ref);
  for (const auto& r : reports) CHECK(r.coverage == 1.0);
}

TEST_CASE("forward minimality checker") {
  // an irrational rotation is minimal
  Ifs rot(Space::circle(), {Rotation{golden_angle()}});
  auto v = check_forward_minimality(rot, 0.01, 8, 200000);
  CHECK(v.verdict == Verdict::MinimalAtResolution);

  // a single north-south map is not: orbits accumulate at the attractor
  Ifs ns(Space::circle(), {Moebius{0.0, 0.5, 0.5}});
  auto w = check_forward_minimality(ns, 0.01, 8, 200000);
  CHECK(w.verdict == Verdict::NotMinimal);
  REQUIRE(w.witness_seed.has_value());
  REQUIRE(w.missed_cell.has_value());
  REQUIRE(w.witness_set.has_value());
  // the witness cell really is far from the saturated orbit
  std::vector<double> field = w.witness_set->distance_field();
  int ix, iy;
  REQUIRE(w.witness_set->locate(*w.missed_cell, ix, iy));
  CHECK(field[static_cast<std::size_t>(iy) * w.witness_set->nx() + ix] > 0.01);

  // rotation + parabolic (the minimal example)
  auto ex = make_preset("circle_example_44");
  auto m = check_forward_minimality(ex.ifs, 0.01, 8, 200000);
  CHECK(m.verdict == Verdict::MinimalAtResolution);
}

TEST_CASE("backward minimality checker") {
  // rotation: any arc saturates to the whole circle
  Ifs rot(Space::circle(), {Rotation{golden_angle()}});
  auto v = check_backward_minimality(rot, 0.01, 8, 2000000);
  CHECK(v.verdict == Verdict::MinimalAtResolution);

  // a single north-south map: the attracting basin is forward invariant and
  // misses the repeller
  Ifs one_ns(Space::circle(), {Moebius{0.0, 0.5, 0.5}});
  auto single = check_backward_minimality(one_ns, 0.01, 8, 2000000);
  CHECK(single.verdict == Verdict::NotMinimal);
  REQUIRE(single.witness_set.has_value());
  int rx, ry;
  REQUIRE(single.witness_set->locate(Point(0.5, 0), rx, ry));
  CHECK_FALSE(single.witness_set->occupied(rx, ry));  // repeller excluded

  // ns_pair: arcs around the attracting point stay proper
  auto ns = make_preset("ns_pair");
  auto w = check_backward_minimality(ns.ifs, 0.01, 8, 2000000);
  CHECK(w.verdict == Verdict::NotMinimal);
  REQUIRE(w.witness_set.has_value());
  // soundness pairing: one hutchinson step of the witness stays inside its
  // one-cell dilation
  GridSet step = hutchinson_step(ns.ifs, *w.witness_set);
  CHECK(step.subset_of(w.witness_set->dilate(1)));
  // and the witness is genuinely proper
  CHECK(w.witness_set->occupied_count() < w.witness_set->cell_count() / 2);

  // sierpinski restricted to its attractor grid is backward minimal there
  auto sier = make_preset("sierpinski");
  double h_int = 0.05 / 2;
  GridSet seed(sier.ifs.space, h_int);
  seed.stamp_point(Point(0, 0));
  GridSet domain = hutchinson_iterate(sier.ifs, seed, 60, 2 * h_int).first;
  auto s = check_backward_minimality(sier.ifs, 0.05, 4, 20000000, domain);
  CHECK(s.verdict == Verdict::MinimalAtResolution);
}

TEST_CASE("budget exhaustion is Inconclusive, not NotMinimal") {
  auto pre = make_preset("circle_minimal");
  auto v = check_forward_minimality(pre.ifs, 0.01, 4, 3);
  CHECK(v.verdict == Verdict::Inconclusive);
  auto b = check_backward_minimality(pre.ifs, 0.01, 4, 3);
  CHECK(b.verdict == Verdict::Inconclusive);
}

TEST_CASE("lipschitz bound over a grid region") {
  const Space circle = Space::circle();
  // the parabolic lift derivative 1 + c*pi*sin(2*pi*x) peaks at x = 1/4 and
  // bottoms out at x = 3/4
  GridSet near_peak = grid_from_arc(circle, 1.0 / 256, 0.2, 0.3);
  GridSet near_trough = grid_from_arc(circle, 1.0 / 256, 0.7, 0.8);
  MapSpec m = Parabolic{0.2};
  CHECK(lipschitz_bound(m, near_peak) > 1.5);
  CHECK(lipschitz_bound(m, near_trough) < 0.5);
  GridSet empty(circle, 1.0 / 256);
  CHECK_THROWS_AS(lipschitz_bound(m, empty), EmptySetError);
}

TEST_CASE("theorem_b_witness mechanics") {
  auto ns = make_preset("ns_pair");
  double h = 1e-3;
  GridSet k = grid_from_arc(Space::circle(), h, 0.1, 0.9);

  // n = 0: K_0 = K and x in K
  auto w0 = theorem_b_witness(ns.ifs, k, SymbolStream::champernowne(2), 0);
  CHECK(w0.k_n == k);
  int ix, iy;
  REQUIRE(k.locate(w0.x, ix, iy));
  CHECK(k.occupied(ix, iy));

  // the repeller 0.5 is fixed by both generators and lies in K forever
  for (const auto& g : ns.ifs.generators)
    CHECK(eval_map(g, ns.ifs.space, Point(0.5, 0)).x() == 0.5);

  // nested: K_{n+1} inside a one-cell dilation of K_n
  auto stream = SymbolStream::champernowne(2);
  std::vector<GridSet> kn;
  for (int n = 0; n <= 5; ++n)
    kn.push_back(theorem_b_witness(ns.ifs, k, stream, n).k_n);
  for (int n = 0; n < 5; ++n)
    CHECK(kn[static_cast<std::size_t>(n + 1)].subset_of(
        kn[static_cast<std::size_t>(n)].dilate(1)));

  // the full witness: orbit of x never leaves the dilated K
  auto w = theorem_b_witness(ns.ifs, k, SymbolStream::champernowne(2), 1000);
  CHECK(w.orbit_stays);
  CHECK(w.first_exit == -1);
  CHECK(w.orbit.size() == 1000);
  CHECK_FALSE(w.k_n.empty());

  // an invalid K (not backward invariant) empties out
  GridSet tiny = grid_from_arc(Space::circle(), h, 0.45, 0.46);
  CHECK_THROWS_AS(theorem_b_witness(ns.ifs, tiny, SymbolStream::champernowne(2), 50),
                  EmptyWitnessError);
}

TEST_CASE("fibre diameter") {
  auto sier = make_preset("sierpinski");
  double h = 1.0 / 128;
  GridSet attractor = sierpinski_reference(sier.ifs, h);
  double diam_a = grid_diameter(attractor);
  CHECK(diam_a == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));

  std::mt19937_64 rng(41);
  for (int len = 1; len <= 4; ++len) {
    std::vector<int> word(static_cast<std::size_t>(len));
    for (auto& s : word) s = 1 + static_cast<int>(rng() % 3);
    double d = fibre_diameter(sier.ifs, SymbolWord(word, 3), attractor);
    // affine ratio 1/2 per symbol, plus grid inflation
    CHECK(d <= diam_a * std::pow(0.5, len) + 6 * h);
    CHECK(d >= diam_a * std::pow(0.5, len) - 6 * h);
  }

  // prefix monotonicity within grid slack
  std::vector<int> word{1, 2, 3, 1, 2, 3};
  double prev = diam_a;
  for (int len = 1; len <= 6; ++len) {
    double d = fibre_diameter(sier.ifs, SymbolWord({word.begin(), word.begin() + len}, 3),
                              attractor);
    CHECK(d <= prev + 2 * h);
    prev = d;
  }

  // circle homeomorphisms: every fibre is the whole circle, exactly
  auto ex = make_preset("circle_example_44");
  GridSet full = grid_full(Space::circle(), 1e-3);
  for (int trial = 0; trial < 10; ++trial) {
    int len = 1 + static_cast<int>(rng() % 20);
    std::vector<int> w(static_cast<std::size_t>(len));
    for (auto& s : w) s = 1 + static_cast<int>(rng() % 2);
    CHECK(fibre_diameter(ex.ifs, SymbolWord(w, 2), full) == 1.0);
  }

  CHECK_THROWS_AS(fibre_diameter(sier.ifs, SymbolWord({}, 3), attractor),
                  std::invalid_argument);
}

TEST_CASE("contractibility diagnostic") {
  // identity-only IFS cannot contract anything
  Affine2D id;
  Ifs identity(Space::planar_box(Point(0, 0), Point(1, 1)), {id});
  GridSet a = grid_full(identity.space, 1.0 / 32);
  GridSet k = grid_from_box(identity.space, 1.0 / 32, Point(0.2, 0.2), Point(0.8, 0.8));
  auto diag = contractibility_diagnostic(identity, a, k, 5, 8);
  CHECK(diag.best_diameter == doctest::Approx(diag.initial_diameter));

  // sierpinski contracts everything by 1/2 per symbol
  auto sier = make_preset("sierpinski");
  GridSet attractor = sierpinski_reference(sier.ifs, 1.0 / 128);
  auto d2 = contractibility_diagnostic(sier.ifs, attractor, attractor, 5, 8);
  CHECK(d2.best_diameter <= grid_diameter(attractor) / 32 + 1e-9);

  // curve is non-increasing
  for (std::size_t i = 1; i < d2.curve.size(); ++i)
    CHECK(d2.curve[i].second <= d2.curve[i - 1].second);

  // rotation + parabolic contracts any proper arc below 0.01 within 200 letters
  auto ex = make_preset("circle_example_44");
  GridSet circle = grid_full(Space::circle(), 1e-3);
  GridSet arc = grid_from_arc(Space::circle(), 1e-3, 0.1, 0.9);
  auto d3 = contractibility_diagnostic(ex.ifs, circle, arc, 200, 64);
  CHECK(d3.best_diameter < 0.01);
  CHECK(d3.best_word.size() <= 200);
}

TEST_CASE("skew density check") {
  // k = 1 rotation at depth 1: equidistribution fills all product cells
  Ifs rot(Space::circle(), {Rotation{golden_angle()}});
  auto res = skew_density_check(rot, SymbolStream::champernowne(1), Point(0, 0), 1,
                                1.0 / 32, 10000);
  CHECK(res.dense);
  CHECK(res.total == 32);

  // N = 0 visits nothing
  auto zero = skew_density_check(rot, SymbolStream::champernowne(1), Point(0, 0), 1,
                                 1.0 / 32, 0);
  CHECK_FALSE(zero.dense);
  CHECK(zero.visited == 0);
  CHECK(zero.missing.size() == 32);

  // circle_minimal at depth 2 on a coarse fiber grid
  auto pre = make_preset("circle_minimal");
  auto r2 = skew_density_check(pre.ifs, SymbolStream::champernowne(2), Point(0, 0), 2,
                               1.0 / 16, 400000);
  CHECK(r2.dense);
  CHECK(r2.total == 4 * 16);
}
