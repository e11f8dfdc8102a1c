#pragma once

#include <Eigen/Core>
#include <variant>
#include <vector>

#include "ifslab/space.hpp"

namespace ifslab {

// One continuous self-map of the space. Planar maps are affine; circle maps
// are orientation-preserving homeomorphisms given through monotone lifts
// F: R -> R with F(x+1) = F(x) + 1.

struct Affine2D {
  Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
};

// x -> x + angle (mod 1); angle is the rotation number in [0,1).
struct Rotation {
  double angle = 0.0;
};

// Hyperbolic Moebius transformation of the circle with attracting fixed
// point `attracting`, repelling fixed point `repelling` and derivative
// `multiplier` in (0,1) at the attracting point (1/multiplier at the
// repelling one). Evaluated projectively, so there are no chart
// singularities anywhere; both fixed points are returned bit-exactly.
struct Moebius {
  double attracting = 0.0;
  double repelling = 0.5;
  double multiplier = 0.5;
};

// Lift f(x) = x + c sin^2(pi x) with c in (0, 1/pi). Unique fixed point at 0
// with derivative exactly 1 there; every other point drifts forward, so the
// alpha- and omega-limit of every orbit is the fixed point.
struct Parabolic {
  double strength = 0.2;
};

// Orientation-preserving piecewise-linear circle homeomorphism. Breakpoints
// (x[i], y[i]) are strictly increasing in both coordinates within one period
// (all values in [0,1)); the lift interpolates them and closes up through
// (x[0]+1, y[0]+1).
struct PLCircleHomeo {
  std::vector<double> x;
  std::vector<double> y;
};

using MapSpec = std::variant<Affine2D, Rotation, Moebius, Parabolic, PLCircleHomeo>;

// Throws std::invalid_argument when the parameters violate the variant's
// documented constraints.
void validate_map(const MapSpec& m);

bool is_circle_map(const MapSpec& m);
bool is_invertible(const MapSpec& m);

// Short display name: "affine", "rotation", ...
const char* map_kind_name(const MapSpec& m);

// Forward evaluation. Circle results are canonicalized to [0,1).
Point eval_map(const MapSpec& m, const Space& s, const Point& x);

// Exact inverse where closed form exists (affine, rotation, Moebius);
// monotone-lift bisection to 1e-12 for parabolic and piecewise-linear maps.
// Throws NotInvertibleError for singular affine maps.
Point eval_inverse(const MapSpec& m, const Space& s, const Point& y);

// Monotone lift F of a circle map, with F(x+1) = F(x) + 1 and F(0) in [0,1).
double lift_eval(const MapSpec& m, double x);

// Derivative of the lift (analytic for every variant; for PL maps, the slope
// of the containing segment).
double lift_derivative(const MapSpec& m, double x);

// Smallest L such that d(f(a), f(b)) <= L d(a,b) is guaranteed on the given
// region, estimated from above. Affine maps return the exact operator norm
// of the linear part. Circle maps sample |F'| on the region (33 equispaced
// points per unit arc length, at least 5) and multiply by the 1.05 safety
// factor; piecewise-linear maps use the exact maximal slope of the segments
// meeting the region, also with the safety factor for uniformity.
double lipschitz_bound(const MapSpec& m, const Space& s);
double lipschitz_bound(const MapSpec& m, const Space& s, const Point& region_lo,
                       const Point& region_hi);

// Same bound over one interval [center - halfwidth, center + halfwidth] of
// the circle (or any affine region). Used per-cell by the Hutchinson
// stamping so that image radii depend only on the cell, which keeps the
// operator exactly union-distributive.
double local_lipschitz(const MapSpec& m, const Space& s, const Point& center,
                       double halfwidth);

// The inverse map's Lipschitz bound over an interval of *target* values,
// for outer-approximated preimage stamping.
double local_inverse_lipschitz(const MapSpec& m, const Space& s,
                               const Point& center, double halfwidth);

}  // namespace ifslab
