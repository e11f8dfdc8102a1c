#include "ifslab/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace ifslab {

namespace {

// Convex hull (monotone chain) so planar diameters stay exact without the
// quadratic scan over every occupied cell.
std::vector<Point> convex_hull(std::vector<Point> pts) {
  if (pts.size() < 3) return pts;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  auto cross = [](const Point& o, const Point& a, const Point& b) {
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
  };
  std::vector<Point> hull(2 * pts.size());
  std::size_t n = 0;
  for (const Point& p : pts) {
    while (n >= 2 && cross(hull[n - 2], hull[n - 1], p) <= 0) --n;
    hull[n++] = p;
  }
  std::size_t lower = n + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (n >= lower && cross(hull[n - 2], hull[n - 1], *it) <= 0) --n;
    hull[n++] = *it;
  }
  hull.resize(n - 1);
  return hull;
}

double planar_diameter(const std::vector<Point>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Point> hull = convex_hull(pts);
  double best = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j)
      best = std::max(best, (hull[i] - hull[j]).norm());
  return best;
}

// Smallest covering arc of a set of circle points: 1 - largest gap.
double circle_diameter(std::vector<double> xs) {
  if (xs.size() < 2) return 0.0;
  std::sort(xs.begin(), xs.end());
  double max_gap = xs.front() + 1.0 - xs.back();
  for (std::size_t i = 1; i < xs.size(); ++i) max_gap = std::max(max_gap, xs[i] - xs[i - 1]);
  return 1.0 - max_gap;
}

std::vector<Point> sample_cells(const GridSet& g, std::size_t cap) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(g.occupied_count()));
  g.for_each_occupied([&](int ix, int iy) { pts.push_back(g.cell_center(ix, iy)); });
  if (pts.size() <= cap) return pts;
  // keep a deterministic stride subsample, always retaining the last point
  std::vector<Point> out;
  std::size_t stride = (pts.size() + cap - 1) / cap;
  for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
  if ((pts.size() - 1) % stride != 0) out.push_back(pts.back());
  return out;
}

}  // namespace

double sample_diameter(const Space& s, const std::vector<Point>& pts) {
  if (s.is_circle()) {
    std::vector<double> xs;
    xs.reserve(pts.size());
    for (const Point& p : pts) xs.push_back(wrap01(p.x()));
    return circle_diameter(std::move(xs));
  }
  return planar_diameter(pts);
}

double grid_diameter(const GridSet& g) {
  if (g.empty()) return 0.0;
  if (g.space().is_circle()) {
    if (g.occupied_count() == g.cell_count()) return 1.0;
    // largest run of empty cells, as an exact arc length
    int n = g.nx();
    int first_occ = -1;
    for (int i = 0; i < n; ++i)
      if (g.occupied(i, 0)) {
        first_occ = i;
        break;
      }
    int longest = 0, run = 0;
    for (int step = 0; step < n; ++step) {
      int i = (first_occ + 1 + step) % n;
      if (g.occupied(i, 0)) {
        longest = std::max(longest, run);
        run = 0;
      } else {
        ++run;
      }
    }
    longest = std::max(longest, run);
    return 1.0 - static_cast<double>(longest) * g.cell_width();
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(g.occupied_count()));
  g.for_each_occupied([&](int ix, int iy) { pts.push_back(g.cell_center(ix, iy)); });
  return planar_diameter(pts);
}

ContractDiag contractibility_diagnostic(const Ifs& ifs, const GridSet& a, const GridSet& k,
                                        int max_len, int beam) {
  a.require_same_frame(k);
  if (k.empty()) throw EmptySetError("contractibility target must be nonempty");
  if (!k.subset_of(a)) throw DomainError("contractibility target must lie inside A");
  if (beam < 1) throw std::invalid_argument("beam must be >= 1");

  struct State {
    std::vector<int> word;
    std::vector<Point> pts;
    double diam;
  };

  std::vector<Point> base = sample_cells(k, 128);
  ContractDiag out;
  out.initial_diameter = sample_diameter(ifs.space, base);
  out.best_diameter = out.initial_diameter;
  out.best_word = SymbolWord({}, std::max(ifs.k(), 1));

  std::vector<State> frontier{State{{}, base, out.initial_diameter}};
  double running_best = out.initial_diameter;
  for (int len = 1; len <= max_len; ++len) {
    std::vector<State> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(ifs.k()));
    for (const State& st : frontier) {
      for (int sym = 1; sym <= ifs.k(); ++sym) {
        State ext;
        ext.word = st.word;
        ext.word.push_back(sym);
        ext.pts.reserve(st.pts.size());
        const MapSpec& g = ifs.generator(sym);
        for (const Point& p : st.pts)
          ext.pts.push_back(ifs.space.canonicalize(eval_map(g, ifs.space, p)));
        ext.diam = sample_diameter(ifs.space, ext.pts);
        next.push_back(std::move(ext));
      }
    }
    std::sort(next.begin(), next.end(),
              [](const State& x, const State& y) { return x.diam < y.diam; });
    if (static_cast<int>(next.size()) > beam) next.resize(static_cast<std::size_t>(beam));
    if (!next.empty() && next.front().diam < running_best) {
      running_best = next.front().diam;
      out.best_diameter = running_best;
      out.best_word = SymbolWord(next.front().word, std::max(ifs.k(), 1));
    }
    out.curve.emplace_back(len, running_best);
    frontier = std::move(next);
  }
  return out;
}

double fibre_diameter(const Ifs& ifs, const SymbolWord& w, const GridSet& a) {
  if (w.empty()) throw std::invalid_argument("fibre_diameter needs a nonempty word");
  if (a.empty()) throw EmptySetError("fibre_diameter of an empty set");
  // f_{w_1} o ... o f_{w_n}(A): the last symbol acts on A first.
  GridSet s = a;
  for (std::size_t i = w.size(); i-- > 0;)
    s = outer_image(forward_cell_map(ifs.generator(w.symbols[i]), ifs.space), s);
  return grid_diameter(s);
}

SkewDensityResult skew_density_check(const Ifs& ifs, SymbolStream stream, const Point& x,
                                     int depth, double eps, std::int64_t n) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  GridSet fiber(ifs.space, eps);
  std::int64_t words = 1;
  for (int i = 0; i < depth; ++i) {
    words *= ifs.k();
    if (words * fiber.cell_count() > GridSet::kDefaultCellBudget)
      throw ResolutionError("product cell count exceeds the budget");
  }
  std::int64_t cells = fiber.cell_count();
  SkewDensityResult res;
  res.total = words * cells;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(res.total), 0);

  SkewState st;
  st.point = ifs.space.canonicalize(x);
  st.stream_position = stream.position();
  for (std::int64_t step = 0; step < n; ++step) {
    st = skew_step(ifs, st, stream);
    std::int64_t word_ix = 0;
    for (int d = 0; d < depth; ++d)
      word_ix = word_ix * ifs.k() + (stream.at(st.stream_position + d) - 1);
    int ix, iy;
    fiber.locate(st.point, ix, iy);
    std::int64_t cell_ix = static_cast<std::int64_t>(iy) * fiber.nx() + ix;
    std::size_t idx = static_cast<std::size_t>(word_ix * cells + cell_ix);
    if (!seen[idx]) {
      seen[idx] = 1;
      ++res.visited;
      if (res.visited == res.total) break;
    }
  }
  res.dense = res.visited == res.total;
  if (!res.dense) {
    for (std::int64_t w = 0; w < words && res.missing.size() < 64; ++w)
      for (std::int64_t c = 0; c < cells && res.missing.size() < 64; ++c)
        if (!seen[static_cast<std::size_t>(w * cells + c)]) {
          std::vector<int> syms(static_cast<std::size_t>(depth));
          std::int64_t v = w;
          for (int d = depth - 1; d >= 0; --d) {
            syms[static_cast<std::size_t>(d)] = static_cast<int>(v % ifs.k()) + 1;
            v /= ifs.k();
          }
          res.missing.emplace_back(SymbolWord(syms, std::max(ifs.k(), 1)),
                                   static_cast<int>(c));
        }
  }
  return res;
}

}  // namespace ifslab
