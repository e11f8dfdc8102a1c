#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ifslab/grid.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

// Pointwise evaluator plus a per-cell expansion bound, the two things a
// stamping pass needs. Keeping the bound local to each cell makes image
// grids exactly union-distributive. Maps with a diagonal linear part also
// carry the exact per-axis cell-image half-width scales, which lets the
// stamping cover the exact image rectangle instead of its bounding disc.
struct CellMap {
  std::function<Point(const Point&)> eval;
  std::function<double(const Point& center, double halfwidth)> local_lip;
  std::optional<Eigen::Vector2d> axis_scale;
};

CellMap forward_cell_map(const MapSpec& m, const Space& s);
CellMap inverse_cell_map(const MapSpec& m, const Space& s);

// Sound outer approximation of the image of the set under the map: each
// occupied cell's center c is mapped and a disc of radius
// L(cell)*diag/2 + diag/2 is stamped around it, so every true image point of
// every point of the cell lands in an occupied output cell.
GridSet outer_image(const CellMap& map, const GridSet& a);

// F(A) = union of the generators' outer images. Requires A nonempty.
GridSet hutchinson_step(const Ifs& ifs, const GridSet& a);

struct TraceEntry {
  std::int64_t n = 0;    // iterate index (distance is d_H(F^n, F^{n+1}))
  double dh = 0.0;
  std::int64_t cells = 0;  // occupied cells of F^{n+1}
};

struct ConvergenceTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;
  std::int64_t final_iterate = 0;
};

// Iterate F until d_H(F^n, F^{n+1}) <= tol or max_n is reached. Hitting the
// budget is reported in the trace, not thrown. Requires tol >= h.
std::pair<GridSet, ConvergenceTrace> hutchinson_iterate(const Ifs& ifs, const GridSet& seed,
                                                        std::int64_t max_n, double tol);

// Lipschitz bound of a generator over the occupied region of a grid.
double lipschitz_bound(const MapSpec& m, const GridSet& region);

std::string trace_to_csv(const ConvergenceTrace& t, const std::string& comment);

}  // namespace ifslab
