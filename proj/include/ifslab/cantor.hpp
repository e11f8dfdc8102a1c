#pragma once

#include <vector>

#include "ifslab/map.hpp"

namespace ifslab {

// A closed arc [lo, hi] of the circle with 0 <= lo <= hi < lo + 1.
struct Arc {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

// Level-L approximation of a middle-cut Cantor set: 2^L pairwise disjoint
// closed arcs, each level splitting every arc into two of `ratio` times its
// length (one at each end).
struct CantorApprox {
  int level = 0;
  std::vector<Arc> intervals;  // sorted by lo
  double ratio = 1.0 / 3.0;
  Arc base;

  double total_length() const;
  // 2 * intervals.size() endpoints, ascending.
  std::vector<double> endpoints() const;
};

// Middle-(1-2*ratio) construction inside base, to depth `level` (level <= 20).
CantorApprox cantor_set(Arc base, double ratio, int level);

// One extra subdivision level (doubles the arc count).
CantorApprox subdivide(const CantorApprox& k);

// Merge two approximations with pairwise disjoint arcs into one (used to
// build a strictly larger Cantor structure K_big = K union translate(K)).
CantorApprox cantor_union(const CantorApprox& a, const CantorApprox& b);

// The orientation-preserving PL circle homeomorphism mapping K's endpoint
// set onto K_big's endpoint set in cyclic order (affine on every gap).
// Requires equal endpoint counts with strictly ascending coordinates;
// re-level with subdivide() first when the counts differ. Consequently
// h(K approx) equals the K_big approx arc-by-arc.
MapSpec cantor_expanding_homeo(const CantorApprox& k, const CantorApprox& k_big);

}  // namespace ifslab
