#include "ifslab/map.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ifslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLiftSafety = 1.05;
constexpr double kBisectTol = 1e-12;

double frac(double x) { return wrap01(x); }

// --- Moebius -------------------------------------------------------------
//
// The hyperbolic Moebius map with fixed points a (attracting) and r
// (repelling) and multiplier L at a satisfies, in projective coordinates,
//
//   sin(pi (f - a)) / sin(pi (f - r)) = L sin(pi (x - a)) / sin(pi (x - r)).
//
// Solving for (sin pi f : cos pi f) gives a linear action with determinant
// L sin^2(pi (a - r)) > 0; the derivative at x is det / (N^2 + D^2) where
// (N, D) is the unnormalized image pair. No chart shift is ever needed.

struct MoebiusEval {
  double sa, ca, sr, cr, lam, det;
  explicit MoebiusEval(const Moebius& m)
      : sa(std::sin(kPi * m.attracting)),
        ca(std::cos(kPi * m.attracting)),
        sr(std::sin(kPi * m.repelling)),
        cr(std::cos(kPi * m.repelling)),
        lam(m.multiplier) {
    double sigma = std::sin(kPi * (m.attracting - m.repelling));
    det = lam * sigma * sigma;
  }

  void pair(const Moebius& m, double x, double& n, double& d) const {
    double num = lam * std::sin(kPi * (x - m.attracting));
    double den = std::sin(kPi * (x - m.repelling));
    n = sa * den - sr * num;
    d = ca * den - cr * num;
  }

  double value(const Moebius& m, double x) const {
    // Fixed points are exact by contract.
    if (x == m.attracting || x == m.repelling) return x;
    double n, d;
    pair(m, x, n, d);
    double f = std::atan2(n, d) / kPi;
    if (f < 0.0) f += 1.0;
    return frac(f);
  }

  double derivative(const Moebius& m, double x) const {
    double n, d;
    pair(m, x, n, d);
    return det / (n * n + d * d);
  }
};

Moebius inverse_of(const Moebius& m) {
  // Swapping the roles of the fixed points inverts the map: the inverse has
  // derivative multiplier at the old repeller.
  return Moebius{m.repelling, m.attracting, m.multiplier};
}

// --- PL homeomorphism ----------------------------------------------------

std::size_t pl_segment(const PLCircleHomeo& m, double xf) {
  // Index i of the segment [x[i], x[i+1]) containing xf (last segment wraps).
  auto it = std::upper_bound(m.x.begin(), m.x.end(), xf);
  if (it == m.x.begin()) return m.x.size() - 1;  // xf < x[0]: wrapped segment
  return static_cast<std::size_t>(it - m.x.begin()) - 1;
}

double pl_slope(const PLCircleHomeo& m, std::size_t i) {
  std::size_t n = m.x.size();
  double x0 = m.x[i], y0 = m.y[i];
  double x1 = (i + 1 < n) ? m.x[i + 1] : m.x[0] + 1.0;
  double y1 = (i + 1 < n) ? m.y[i + 1] : m.y[0] + 1.0;
  return (y1 - y0) / (x1 - x0);
}

double pl_lift_raw(const PLCircleHomeo& m, double x) {
  double base = std::floor(x);
  double xf = x - base;
  if (xf >= 1.0) {  // guard against floor rounding
    xf -= 1.0;
    base += 1.0;
  }
  std::size_t i = pl_segment(m, xf);
  double x0 = m.x[i], y0 = m.y[i];
  if (xf < x0) {  // wrapped segment entered from below: use x[last]-1
    x0 -= 1.0;
    y0 -= 1.0;
  }
  return base + y0 + pl_slope(m, i) * (xf - x0);
}

// Normalized so that F(0) lies in [0,1); the raw branch can land in (-1,1).
double pl_lift(const PLCircleHomeo& m, double x) {
  double shift = std::floor(pl_lift_raw(m, 0.0));
  return pl_lift_raw(m, x) - shift;
}

// True iff the circle arcs [a, a+la] and [b, b+lb] (mod 1) intersect.
bool arcs_intersect(double a, double la, double b, double lb) {
  if (la >= 1.0 || lb >= 1.0) return true;
  return wrap01(b - a) <= la || wrap01(a - b) <= lb;
}

// Exact maximal slope of the PL map over the arc [lo, lo+len].
double pl_max_slope_on_arc(const PLCircleHomeo& m, double lo, double len) {
  std::size_t n = m.x.size();
  double best = 0.0;
  double a = wrap01(lo);
  for (std::size_t i = 0; i < n; ++i) {
    double seg_lo = m.x[i];
    double seg_len = ((i + 1 < n) ? m.x[i + 1] : m.x[0] + 1.0) - seg_lo;
    if (arcs_intersect(a, len, seg_lo, seg_len)) best = std::max(best, pl_slope(m, i));
  }
  return best;
}

// --- generic lift plumbing -----------------------------------------------

double lift_eval_impl(const MapSpec& m, double x) {
  if (const auto* r = std::get_if<Rotation>(&m)) return x + r->angle;
  if (const auto* p = std::get_if<Parabolic>(&m)) {
    double s = std::sin(kPi * x);
    return x + p->strength * s * s;
  }
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m)) return pl_lift(*pl, x);
  if (const auto* mo = std::get_if<Moebius>(&m)) {
    // Build the lift from the circle value: F(x) = f(frac x) + floor x,
    // bumped by one when the image wraps past the image of 0.
    MoebiusEval ev(*mo);
    double base = std::floor(x);
    double xf = x - base;
    if (xf >= 1.0) {
      xf -= 1.0;
      base += 1.0;
    }
    double f0 = ev.value(*mo, 0.0);
    double fx = ev.value(*mo, xf);
    if (fx < f0) fx += 1.0;
    return fx + base;
  }
  throw DomainError("lift_eval: not a circle map");
}

double lift_derivative_impl(const MapSpec& m, double x) {
  if (std::holds_alternative<Rotation>(m)) return 1.0;
  if (const auto* p = std::get_if<Parabolic>(&m))
    return 1.0 + p->strength * kPi * std::sin(2.0 * kPi * x);
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m))
    return pl_slope(*pl, pl_segment(*pl, frac(x)));
  if (const auto* mo = std::get_if<Moebius>(&m))
    return MoebiusEval(*mo).derivative(*mo, x);
  throw DomainError("lift_derivative: not a circle map");
}

// Invert the monotone lift by bisection on one period; tolerance 1e-12.
double lift_invert_bisect(const MapSpec& m, double y) {
  double f0 = lift_eval_impl(m, 0.0);  // in [0,1)
  // Representative of y (mod 1) inside the branch range [f0, f0+1).
  double target = (y >= f0) ? y : y + 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > kBisectTol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (lift_eval_impl(m, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  if (hi - lo > kBisectTol)
    throw ConvergenceError("lift inversion bisection failed to reach tolerance");
  return frac(0.5 * (lo + hi));
}

double sample_max_abs_derivative(const MapSpec& m, double lo, double hi) {
  // 33 samples per unit of arc, at least 5, endpoints included.
  double len = hi - lo;
  int n = std::max(5, static_cast<int>(std::ceil(len * 33.0)) + 1);
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    double x = lo + len * static_cast<double>(i) / static_cast<double>(n - 1);
    best = std::max(best, std::abs(lift_derivative_impl(m, x)));
  }
  return best;
}

double affine_operator_norm(const Affine2D& a) {
  Eigen::JacobiSVD<Eigen::Matrix2d> svd(a.linear);
  return svd.singularValues()(0);
}

}  // namespace

void validate_map(const MapSpec& m) {
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    if (!a->linear.allFinite() || !a->offset.allFinite())
      throw std::invalid_argument("affine map entries must be finite");
    return;
  }
  if (const auto* r = std::get_if<Rotation>(&m)) {
    if (!(r->angle >= 0.0 && r->angle < 1.0))
      throw std::invalid_argument("rotation angle must lie in [0,1)");
    return;
  }
  if (const auto* mo = std::get_if<Moebius>(&m)) {
    if (!(mo->attracting >= 0.0 && mo->attracting < 1.0) ||
        !(mo->repelling >= 0.0 && mo->repelling < 1.0))
      throw std::invalid_argument("moebius fixed points must lie in [0,1)");
    if (mo->attracting == mo->repelling)
      throw std::invalid_argument("moebius fixed points must be distinct");
    if (!(mo->multiplier > 0.0 && mo->multiplier < 1.0))
      throw std::invalid_argument("moebius multiplier must lie in (0,1)");
    return;
  }
  if (const auto* p = std::get_if<Parabolic>(&m)) {
    if (!(p->strength > 0.0 && p->strength < 1.0 / kPi))
      throw std::invalid_argument("parabolic strength must lie in (0, 1/pi)");
    return;
  }
  const auto& pl = std::get<PLCircleHomeo>(m);
  if (pl.x.size() != pl.y.size() || pl.x.size() < 1)
    throw std::invalid_argument("pl homeomorphism needs matching, nonempty breakpoints");
  for (std::size_t i = 0; i < pl.x.size(); ++i) {
    if (!(pl.x[i] >= 0.0 && pl.x[i] < 1.0) || !(pl.y[i] >= 0.0 && pl.y[i] < 1.0))
      throw std::invalid_argument("pl breakpoints must lie in [0,1)");
    if (i > 0 && !(pl.x[i] > pl.x[i - 1] && pl.y[i] > pl.y[i - 1]))
      throw std::invalid_argument("pl breakpoints must be strictly increasing");
  }
}

bool is_circle_map(const MapSpec& m) { return !std::holds_alternative<Affine2D>(m); }

bool is_invertible(const MapSpec& m) {
  if (const auto* a = std::get_if<Affine2D>(&m))
    return a->linear.determinant() != 0.0;
  return true;  // all circle variants are homeomorphisms
}

const char* map_kind_name(const MapSpec& m) {
  switch (m.index()) {
    case 0: return "affine";
    case 1: return "rotation";
    case 2: return "moebius";
    case 3: return "parabolic";
    default: return "pl";
  }
}

Point eval_map(const MapSpec& m, const Space& s, const Point& x) {
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    if (s.is_circle()) throw DomainError("affine map on circle space");
    return a->linear * x + a->offset;
  }
  if (!s.is_circle()) throw DomainError("circle map on planar space");
  double xc = frac(x.x());
  if (const auto* mo = std::get_if<Moebius>(&m))
    return Point(MoebiusEval(*mo).value(*mo, xc), 0.0);
  return Point(frac(lift_eval_impl(m, xc)), 0.0);
}

Point eval_inverse(const MapSpec& m, const Space& s, const Point& y) {
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    if (s.is_circle()) throw DomainError("affine map on circle space");
    double det = a->linear.determinant();
    if (det == 0.0) throw NotInvertibleError("affine map is singular");
    return a->linear.inverse() * (y - a->offset);
  }
  if (!s.is_circle()) throw DomainError("circle map on planar space");
  double yc = frac(y.x());
  if (const auto* r = std::get_if<Rotation>(&m)) return Point(frac(yc - r->angle), 0.0);
  if (const auto* mo = std::get_if<Moebius>(&m)) {
    Moebius inv = inverse_of(*mo);
    return Point(MoebiusEval(inv).value(inv, yc), 0.0);
  }
  return Point(lift_invert_bisect(m, yc), 0.0);
}

double lift_eval(const MapSpec& m, double x) { return lift_eval_impl(m, x); }

double lift_derivative(const MapSpec& m, double x) { return lift_derivative_impl(m, x); }

double lipschitz_bound(const MapSpec& m, const Space& s) {
  if (const auto* a = std::get_if<Affine2D>(&m)) return affine_operator_norm(*a);
  (void)s;
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m)) {
    double best = 0.0;
    for (std::size_t i = 0; i < pl->x.size(); ++i) best = std::max(best, pl_slope(*pl, i));
    return best * kLiftSafety;
  }
  return sample_max_abs_derivative(m, 0.0, 1.0) * kLiftSafety;
}

double lipschitz_bound(const MapSpec& m, const Space& s, const Point& region_lo,
                       const Point& region_hi) {
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    (void)region_lo;
    (void)region_hi;
    return affine_operator_norm(*a);
  }
  if (!s.is_circle()) throw DomainError("circle map on planar space");
  double lo = region_lo.x(), hi = region_hi.x();
  if (!(hi > lo)) throw DomainError("lipschitz_bound: empty region");
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m))
    return pl_max_slope_on_arc(*pl, lo, std::min(hi - lo, 1.0)) * kLiftSafety;
  return sample_max_abs_derivative(m, lo, hi) * kLiftSafety;
}

double local_lipschitz(const MapSpec& m, const Space& s, const Point& center,
                       double halfwidth) {
  if (const auto* a = std::get_if<Affine2D>(&m)) return affine_operator_norm(*a);
  (void)s;
  // PL slopes are exact per segment; others use 5 samples across the cell
  // with the safety factor.
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m))
    return pl_max_slope_on_arc(*pl, center.x() - halfwidth, 2.0 * halfwidth) * kLiftSafety;
  double best = 0.0;
  for (int i = -2; i <= 2; ++i)
    best = std::max(best, std::abs(lift_derivative_impl(m, center.x() + halfwidth * 0.5 * i)));
  return best * kLiftSafety;
}

double local_inverse_lipschitz(const MapSpec& m, const Space& s, const Point& center,
                               double halfwidth) {
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    double det = a->linear.determinant();
    if (det == 0.0) throw NotInvertibleError("affine map is singular");
    Eigen::Matrix2d inv = a->linear.inverse();
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(inv);
    return svd.singularValues()(0);
  }
  if (const auto* r = std::get_if<Rotation>(&m)) {
    (void)r;
    return kLiftSafety;
  }
  if (const auto* mo = std::get_if<Moebius>(&m)) {
    Moebius inv = inverse_of(*mo);
    return local_lipschitz(MapSpec(inv), s, center, halfwidth);
  }
  if (const auto* pl = std::get_if<PLCircleHomeo>(&m)) {
    // The inverse of a PL homeomorphism is the PL map with swapped
    // breakpoint coordinates; its slopes are exact.
    PLCircleHomeo inv{pl->y, pl->x};
    return pl_max_slope_on_arc(inv, center.x() - halfwidth, 2.0 * halfwidth) * kLiftSafety;
  }
  // Parabolic: sample preimages of the target interval, bound 1/F'.
  double best = 0.0;
  for (int i = -2; i <= 2; ++i) {
    Point pre = eval_inverse(m, s, Point(center.x() + halfwidth * 0.5 * i, 0.0));
    double d = lift_derivative_impl(m, pre.x());
    best = std::max(best, 1.0 / d);
  }
  return best * kLiftSafety;
}

}  // namespace ifslab
