#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ifslab/space.hpp"

namespace ifslab {

// Occupancy bitmap standing in for a compact subset of the space.
//
// PlanarBox: cells are exact h x h squares laid out from the box's lower
// corner; the grid covers [lo, lo + nx*h] x [lo, lo + ny*h], which may stick
// out slightly past the box. Cell (i,j) has center lo + ((i+.5)h, (j+.5)h).
//
// Circle: a ring of n = ceil(1/h) cells of exact width w = 1/n <= h; cell i
// has center (i+.5)*w. All distances are arc distances.
//
// Grids are comparable only when space and h match exactly.
class GridSet {
 public:
  static constexpr std::int64_t kDefaultCellBudget = std::int64_t{1} << 26;

  GridSet(const Space& space, double h, std::int64_t cell_budget = kDefaultCellBudget);

  const Space& space() const { return space_; }
  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::int64_t cell_count() const { return static_cast<std::int64_t>(nx_) * ny_; }
  std::int64_t occupied_count() const { return occupied_; }
  bool empty() const { return occupied_ == 0; }

  // Actual cell width (h for boxes, 1/n on the circle) and the stamping
  // diagonal (h*sqrt(2) for boxes, the cell width on the circle).
  double cell_width() const;
  double cell_diagonal() const;

  bool occupied(int ix, int iy) const { return bits_[index(ix, iy)] != 0; }
  void set(int ix, int iy, bool value);
  Point cell_center(int ix, int iy) const;

  // Locate the cell containing p; false when p is outside the grid.
  bool locate(const Point& p, int& ix, int& iy) const;

  // Mark the cell containing p (clamped onto the grid when p lies within
  // one cell of the boundary; silently ignored further out).
  void stamp_point(const Point& p);

  // Mark every cell whose center lies within `radius` of p (metric disc on
  // the plane, arc interval on the circle), clipped to the grid.
  void stamp_disc(const Point& p, double radius);

  // Mark every cell the closed disc around p actually touches (clamped
  // point-to-cell distance <= radius; on the circle this equals the center
  // test with radius + w/2). The tight cell cover of the same disc that
  // stamp_disc covers conservatively.
  void stamp_disc_cover(const Point& p, double radius);

  // Mark every cell overlapping the half-open axis-aligned rectangle
  // [p - hw, p + hw). Half-open semantics match locate()'s floor convention,
  // so an exact image rectangle stamps exactly the cells containing image
  // points.
  void stamp_rect_cover(const Point& p, double hw_x, double hw_y);

  bool same_frame(const GridSet& o) const;
  void require_same_frame(const GridSet& o) const;  // ComparabilityError

  GridSet& unite(const GridSet& o);
  GridSet& intersect(const GridSet& o);
  bool subset_of(const GridSet& o) const;
  bool operator==(const GridSet& o) const;

  // Complement within the grid frame.
  GridSet complement() const;

  // Chebyshev dilation by `cells` cells (8-neighborhood steps on the plane,
  // +-cells on the ring).
  GridSet dilate(int cells) const;

  // Distance (in the space metric, center-to-center) from every cell center
  // to the nearest occupied cell center. Exact Euclidean / arc distances;
  // infinity when the set is empty. Row-major [iy*nx + ix].
  std::vector<double> distance_field() const;

  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::vector<std::uint8_t>& mutable_bits() { return bits_; }
  void recount();

  // Iterate occupied cells.
  template <typename F>
  void for_each_occupied(F&& f) const {
    for (int iy = 0; iy < ny_; ++iy)
      for (int ix = 0; ix < nx_; ++ix)
        if (bits_[index(ix, iy)]) f(ix, iy);
  }

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(ix);
  }
  Space space_;
  double h_ = 0.0;
  int nx_ = 0, ny_ = 0;
  std::int64_t occupied_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Grid of the cells containing at least one of the points. Empty input
// yields the empty grid. Throws DomainError when a point lies outside the
// space and ResolutionError when h exceeds the cell budget.
GridSet grid_from_points(std::span<const Point> pts, const Space& s, double h,
                         std::int64_t cell_budget = GridSet::kDefaultCellBudget);

// Cells whose centers lie in the closed arc [lo, hi] (mod 1; hi may exceed 1
// to wrap) of the circle.
GridSet grid_from_arc(const Space& s, double h, double lo, double hi);

// Cells whose centers lie in the axis-aligned sub-box.
GridSet grid_from_box(const Space& s, double h, const Point& lo, const Point& hi);

// Full grid (every cell occupied).
GridSet grid_full(const Space& s, double h);

double directed_hausdorff(const GridSet& from, const GridSet& to);

// Symmetrized center-to-center Hausdorff distance. Throws EmptySetError on
// empty inputs and ComparabilityError on frame mismatch.
double hausdorff_distance(const GridSet& a, const GridSet& b);

// Grids of the orbit suffixes {orbit[m] : m >= n} for each cut n. Cuts must
// be nondecreasing and <= orbit length; the output list is nested
// (decreasing) by construction.
std::vector<GridSet> tail_sets(std::span<const Point> orbit, const Space& s, double h,
                               std::span<const std::int64_t> cut_ns);

// --- exports ---------------------------------------------------------------

// Binary P5 graymap, one pixel per cell, 255 = occupied; rows written from
// the top of the box (max y) down. `comment` is embedded after the magic.
void write_pgm(const GridSet& g, const std::string& path, const std::string& comment);

// Plain-text run-length encoding with exact (round-trip) geometry.
void write_rle(const GridSet& g, const std::string& path, const std::string& comment);
GridSet read_rle(const std::string& path);
std::string to_rle_string(const GridSet& g, const std::string& comment);
GridSet from_rle_string(const std::string& text);

}  // namespace ifslab
