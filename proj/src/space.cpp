#include "ifslab/space.hpp"

#include <cmath>

namespace ifslab {

double wrap01(double x) {
  double f = x - std::floor(x);
  // floor can leave exactly 1.0 when x is a tiny negative number.
  if (f >= 1.0) f -= 1.0;
  if (f < 0.0) f += 1.0;
  return f;
}

double circle_distance(double a, double b) {
  double d = wrap01(a - b);
  return std::min(d, 1.0 - d);
}

Space Space::planar_box(const Point& lo, const Point& hi) {
  if (!(hi.x() > lo.x()) || !(hi.y() > lo.y()))
    throw DomainError("planar box must have positive side lengths");
  if (!lo.allFinite() || !hi.allFinite())
    throw DomainError("planar box corners must be finite");
  Space s;
  s.kind_ = SpaceKind::PlanarBox;
  s.lo_ = lo;
  s.hi_ = hi;
  return s;
}

Space Space::circle() {
  Space s;
  s.kind_ = SpaceKind::Circle;
  return s;
}

const Point& Space::lo() const {
  if (kind_ != SpaceKind::PlanarBox) throw DomainError("lo(): not a planar box");
  return lo_;
}

const Point& Space::hi() const {
  if (kind_ != SpaceKind::PlanarBox) throw DomainError("hi(): not a planar box");
  return hi_;
}

double Space::distance(const Point& a, const Point& b) const {
  if (kind_ == SpaceKind::Circle) return circle_distance(a.x(), b.x());
  return (a - b).norm();
}

Point Space::canonicalize(Point p) const {
  if (kind_ == SpaceKind::Circle) return Point(wrap01(p.x()), 0.0);
  return p;
}

bool Space::contains(const Point& p, double tol) const {
  if (kind_ == SpaceKind::Circle) return std::isfinite(p.x());
  return p.x() >= lo_.x() - tol && p.x() <= hi_.x() + tol &&
         p.y() >= lo_.y() - tol && p.y() <= hi_.y() + tol;
}

bool Space::operator==(const Space& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == SpaceKind::Circle) return true;
  return lo_ == o.lo_ && hi_ == o.hi_;
}

}  // namespace ifslab
