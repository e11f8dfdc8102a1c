#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/hutchinson.hpp"

namespace ifslab {

enum class Direction { Forward, Backward };

// Verdicts are resolution-qualified: a finite computation can falsify
// minimality (with a witness) or confirm it at scale eps, never prove it.
// Running out of budget is Inconclusive, which is distinct from NotMinimal.
enum class Verdict { MinimalAtResolution, NotMinimal, Inconclusive };

const char* verdict_name(Verdict v);
const char* direction_name(Direction d);

struct MinimalityVerdict {
  Direction direction = Direction::Forward;
  Verdict verdict = Verdict::Inconclusive;

  // NotMinimal always carries a checkable witness:
  //  - forward: a seed whose saturated orbit grid misses `missed_cell`;
  //  - backward: a proper forward-invariant open set (grid surrogate).
  std::optional<GridSet> witness_set;
  std::optional<Point> witness_seed;
  std::optional<Point> missed_cell;

  // parameters used
  double eps = 0.0;
  double h_internal = 0.0;
  int seeds = 0;
  std::int64_t max_steps = 0;

  std::string summary() const;
};

// Saturate the Gamma-orbit of each seed on a uniform seed grid
// (breadth-first over generators, deduplicated on a grid of resolution
// eps/2) and test eps-density. seed_grid counts seeds per axis.
MinimalityVerdict check_forward_minimality(const Ifs& ifs, double eps, int seed_grid,
                                           std::int64_t max_steps);

// Backward minimality via the open-complement characterization: grow the
// smallest forward-invariant open set (outer-approximated grid saturation)
// around each small seed ball/arc; a proper saturation with an eps margin
// certifies a proper backward-invariant closed complement. `domain`
// restricts "the whole space" to a sub-grid (e.g. an attractor) when given.
MinimalityVerdict check_backward_minimality(const Ifs& ifs, double eps, int arc_seeds,
                                            std::int64_t max_steps,
                                            const std::optional<GridSet>& domain = {});

// The nested-preimage witness: K_n = f^-1_{w1} o ... o f^-1_{wn}(K) along
// the stream's first n symbols (outer-approximated, clipped to a one-cell
// dilation of K), together with a point x picked by applying the same
// inverse composition to the most interior point of K. The forward orbit of
// x along the stream is simulated and checked against the one-cell dilation
// of K.
struct TheoremBWitness {
  GridSet k_n;
  Point x = Point::Zero();
  std::vector<Point> orbit;        // first n forward points of x
  bool orbit_stays = true;         // orbit within dilate(K, 1)
  std::int64_t first_exit = -1;    // step of first violation, if any
};

TheoremBWitness theorem_b_witness(const Ifs& ifs, const GridSet& k, SymbolStream stream,
                                  std::int64_t n);

}  // namespace ifslab
