#include "ifslab/hutchinson.hpp"

#include <sstream>

#include "ifslab/textio.hpp"

namespace ifslab {

namespace {

std::optional<Eigen::Vector2d> diagonal_scale(const MapSpec& m) {
  const auto* a = std::get_if<Affine2D>(&m);
  if (!a) return std::nullopt;
  if (a->linear(0, 1) != 0.0 || a->linear(1, 0) != 0.0) return std::nullopt;
  return Eigen::Vector2d(std::abs(a->linear(0, 0)), std::abs(a->linear(1, 1)));
}

}  // namespace

CellMap forward_cell_map(const MapSpec& m, const Space& s) {
  CellMap cm;
  cm.eval = [m, s](const Point& p) { return eval_map(m, s, p); };
  cm.local_lip = [m, s](const Point& c, double hw) { return local_lipschitz(m, s, c, hw); };
  cm.axis_scale = diagonal_scale(m);
  return cm;
}

CellMap inverse_cell_map(const MapSpec& m, const Space& s) {
  if (!is_invertible(m)) throw NotInvertibleError("inverse image of a singular map");
  CellMap cm;
  cm.eval = [m, s](const Point& p) { return eval_inverse(m, s, p); };
  cm.local_lip = [m, s](const Point& c, double hw) {
    return local_inverse_lipschitz(m, s, c, hw);
  };
  if (auto scale = diagonal_scale(m); scale && scale->x() > 0.0 && scale->y() > 0.0)
    cm.axis_scale = Eigen::Vector2d(1.0 / scale->x(), 1.0 / scale->y());
  return cm;
}

GridSet outer_image(const CellMap& map, const GridSet& a) {
  GridSet out(a.space(), a.h());
  double diag = a.cell_diagonal();
  double halfwidth = 0.5 * a.cell_width();
  a.for_each_occupied([&](int ix, int iy) {
    Point c = a.cell_center(ix, iy);
    Point y = a.space().canonicalize(map.eval(c));
    if (map.axis_scale) {
      out.stamp_rect_cover(y, map.axis_scale->x() * halfwidth, map.axis_scale->y() * halfwidth);
    } else {
      double lip = map.local_lip(c, halfwidth);
      out.stamp_disc_cover(y, 0.5 * diag * lip);
    }
  });
  return out;
}

GridSet hutchinson_step(const Ifs& ifs, const GridSet& a) {
  if (a.empty()) throw EmptySetError("hutchinson_step of the empty set");
  GridSet out(a.space(), a.h());
  for (const auto& g : ifs.generators) out.unite(outer_image(forward_cell_map(g, ifs.space), a));
  return out;
}

std::pair<GridSet, ConvergenceTrace> hutchinson_iterate(const Ifs& ifs, const GridSet& seed,
                                                        std::int64_t max_n, double tol) {
  if (seed.empty()) throw EmptySetError("hutchinson_iterate needs a nonempty seed");
  if (tol < seed.h()) throw std::invalid_argument("tolerance below grid resolution");
  ConvergenceTrace trace;
  GridSet cur = seed;
  for (std::int64_t n = 0; n < max_n; ++n) {
    GridSet next = hutchinson_step(ifs, cur);
    double d = hausdorff_distance(cur, next);
    trace.entries.push_back({n, d, next.occupied_count()});
    cur = std::move(next);
    trace.final_iterate = n + 1;
    if (d <= tol) {
      trace.converged = true;
      break;
    }
  }
  return {std::move(cur), std::move(trace)};
}

double lipschitz_bound(const MapSpec& m, const GridSet& region) {
  if (region.empty()) throw EmptySetError("lipschitz_bound over an empty region");
  double best = 0.0;
  double hw = 0.5 * region.cell_width();
  region.for_each_occupied([&](int ix, int iy) {
    best = std::max(best, local_lipschitz(m, region.space(), region.cell_center(ix, iy), hw));
  });
  return best;
}

std::string trace_to_csv(const ConvergenceTrace& t, const std::string& comment) {
  std::ostringstream os;
  for (const auto& line : split_lines(comment)) os << "# " << line << "\n";
  os << "n,dh,cells\n";
  for (const auto& e : t.entries)
    os << e.n << "," << format_double(e.dh) << "," << e.cells << "\n";
  return os.str();
}

}  // namespace ifslab
