#include "ifslab/cantor.hpp"

#include <algorithm>
#include <cmath>

namespace ifslab {

double CantorApprox::total_length() const {
  double t = 0.0;
  for (const Arc& a : intervals) t += a.length();
  return t;
}

std::vector<double> CantorApprox::endpoints() const {
  std::vector<double> e;
  e.reserve(2 * intervals.size());
  for (const Arc& a : intervals) {
    e.push_back(a.lo);
    e.push_back(a.hi);
  }
  return e;
}

CantorApprox cantor_set(Arc base, double ratio, int level) {
  if (!(ratio > 0.0 && ratio < 0.5))
    throw std::invalid_argument("cantor ratio must lie in (0, 1/2)");
  if (!(base.hi > base.lo) || base.hi - base.lo > 1.0 || base.lo < 0.0 || base.lo >= 1.0)
    throw std::invalid_argument("cantor base arc must be a proper arc with lo in [0,1)");
  if (level < 0 || level > 20) throw BudgetError("cantor level must lie in [0, 20]");
  CantorApprox k;
  k.level = 0;
  k.ratio = ratio;
  k.base = base;
  k.intervals = {base};
  for (int l = 0; l < level; ++l) k = subdivide(k);
  return k;
}

CantorApprox subdivide(const CantorApprox& k) {
  if (k.intervals.size() > (std::size_t{1} << 20))
    throw BudgetError("cantor subdivision exceeds the arc budget");
  CantorApprox out;
  out.level = k.level + 1;
  out.ratio = k.ratio;
  out.base = k.base;
  out.intervals.reserve(2 * k.intervals.size());
  for (const Arc& a : k.intervals) {
    double cut = a.length() * k.ratio;
    out.intervals.push_back({a.lo, a.lo + cut});
    out.intervals.push_back({a.hi - cut, a.hi});
  }
  return out;
}

CantorApprox cantor_union(const CantorApprox& a, const CantorApprox& b) {
  CantorApprox out;
  out.level = std::max(a.level, b.level);
  out.ratio = a.ratio;
  out.base = a.base;
  out.intervals = a.intervals;
  out.intervals.insert(out.intervals.end(), b.intervals.begin(), b.intervals.end());
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  for (std::size_t i = 1; i < out.intervals.size(); ++i)
    if (out.intervals[i].lo <= out.intervals[i - 1].hi)
      throw IncompatibleStructureError("cantor_union arcs overlap");
  return out;
}

MapSpec cantor_expanding_homeo(const CantorApprox& k, const CantorApprox& k_big) {
  std::vector<double> from = k.endpoints();
  std::vector<double> to = k_big.endpoints();
  if (from.size() != to.size())
    throw IncompatibleStructureError("endpoint counts differ; subdivide the smaller set");
  if (from.empty()) throw IncompatibleStructureError("empty cantor approximation");
  for (std::size_t i = 1; i < from.size(); ++i)
    if (!(from[i] > from[i - 1]) || !(to[i] > to[i - 1]))
      throw IncompatibleStructureError("endpoints must be strictly ascending in cyclic order");
  if (from.back() >= from.front() + 1.0 || to.back() >= to.front() + 1.0)
    throw IncompatibleStructureError("endpoints must fit within one period");
  PLCircleHomeo pl;
  pl.x = std::move(from);
  pl.y = std::move(to);
  // breakpoints must live in [0,1)
  for (double v : pl.x)
    if (v < 0.0 || v >= 1.0)
      throw IncompatibleStructureError("cantor endpoints must lie in [0,1)");
  for (double v : pl.y)
    if (v < 0.0 || v >= 1.0)
      throw IncompatibleStructureError("cantor endpoints must lie in [0,1)");
  MapSpec m = pl;
  validate_map(m);
  return m;
}

}  // namespace ifslab
