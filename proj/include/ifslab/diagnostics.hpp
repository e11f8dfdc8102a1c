#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ifslab/hutchinson.hpp"

namespace ifslab {

// Best-effort search for semigroup elements that contract a target set.
struct ContractDiag {
  SymbolWord best_word;       // g = f_{w_n} o ... o f_{w_1}
  double best_diameter = 0.0;
  std::vector<std::pair<int, double>> curve;  // (word length, best diameter so far)
  double initial_diameter = 0.0;
};

// Beam search over words up to max_len, scoring diam(g(K)) via mapped sample
// points of K (up to 128 cell centers). Not a decision procedure: reports the
// best contraction found and the word witnessing it.
ContractDiag contractibility_diagnostic(const Ifs& ifs, const GridSet& a, const GridSet& k,
                                        int max_len, int beam = 64);

// Diameter of f_{w_1} o ... o f_{w_n}(A) - note the reversed composition
// order relative to orbital branches (these are the strongly-fibred sets
// A_omega). Estimated through sound grid images of A, so a surjective image
// of the full circle stays the full circle and reports diameter exactly 1.
double fibre_diameter(const Ifs& ifs, const SymbolWord& w, const GridSet& a);

// Diameter of a grid set: largest center-to-center distance on the plane;
// on the circle, the length of the smallest covering arc (1 when every cell
// is occupied).
double grid_diameter(const GridSet& g);

// Diameter of a finite point sample under the same conventions.
double sample_diameter(const Space& s, const std::vector<Point>& pts);

struct SkewDensityResult {
  bool dense = false;
  std::int64_t visited = 0;
  std::int64_t total = 0;
  // (word, fiber cell index) pairs never visited; capped at 64 entries.
  std::vector<std::pair<SymbolWord, int>> missing;
};

// Product-density check for the skew product: iterate N steps and mark the
// cell (next `depth` symbols of the shifted stream, eps-cell of the fiber
// point); dense iff every k^depth * cell-count product cell is visited.
SkewDensityResult skew_density_check(const Ifs& ifs, SymbolStream stream, const Point& x,
                                     int depth, double eps, std::int64_t n);

}  // namespace ifslab
