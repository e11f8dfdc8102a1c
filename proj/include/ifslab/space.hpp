#pragma once

#include <Eigen/Core>

#include "ifslab/errors.hpp"

namespace ifslab {

// Points are 2-vectors everywhere. On the circle R/Z only x() is meaningful
// (kept in [0,1)) and y() is zero; keeping one point type lets orbits, grids
// and runners treat both spaces uniformly.
using Point = Eigen::Vector2d;

enum class SpaceKind { PlanarBox, Circle };

// Wrap a real to [0,1).
double wrap01(double x);

// Arc-length distance on R/Z; result in [0, 1/2].
double circle_distance(double a, double b);

// The ambient metric space: an axis-aligned planar box or the circle R/Z.
// This fixes the metric used by every set operation and checker.
class Space {
 public:
  static Space planar_box(const Point& lo, const Point& hi);
  static Space circle();

  SpaceKind kind() const { return kind_; }
  bool is_circle() const { return kind_ == SpaceKind::Circle; }

  // PlanarBox corners; calling these on the circle is a logic error.
  const Point& lo() const;
  const Point& hi() const;

  double distance(const Point& a, const Point& b) const;

  // On the circle, reduce x() mod 1 and zero y(). Identity on a box.
  Point canonicalize(Point p) const;

  bool contains(const Point& p, double tol = 0.0) const;

  bool operator==(const Space& o) const;
  bool operator!=(const Space& o) const { return !(*this == o); }

 private:
  Space() = default;
  SpaceKind kind_ = SpaceKind::Circle;
  Point lo_ = Point::Zero();
  Point hi_ = Point::Zero();
};

}  // namespace ifslab
