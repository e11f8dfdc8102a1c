#include "ifslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ifslab/textio.hpp"

namespace ifslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared distance transform (lower envelope of parabolas), after
// Felzenszwalb & Huttenlocher. f is the input cost per index, out gets
// min_j (i-j)^2 + f[j].
void dt_1d(const std::vector<double>& f, std::vector<double>& out) {
  int n = static_cast<int>(f.size());
  out.assign(f.size(), 0.0);
  std::vector<int> v(f.size());
  std::vector<double> z(f.size() + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -kInf;
  z[1] = kInf;
  for (int q = 1; q < n; ++q) {
    if (f[static_cast<std::size_t>(q)] == kInf) continue;
    double s;
    while (true) {
      int p = v[static_cast<std::size_t>(k)];
      if (f[static_cast<std::size_t>(p)] == kInf) {
        // no finite site yet: replace
        if (k == 0) {
          v[0] = q;
          z[0] = -kInf;
          z[1] = kInf;
          s = -kInf;
          break;
        }
        --k;
        continue;
      }
      s = ((f[static_cast<std::size_t>(q)] + static_cast<double>(q) * q) -
           (f[static_cast<std::size_t>(p)] + static_cast<double>(p) * p)) /
          (2.0 * q - 2.0 * p);
      if (s <= z[static_cast<std::size_t>(k)]) {
        --k;
        continue;
      }
      ++k;
      v[static_cast<std::size_t>(k)] = q;
      z[static_cast<std::size_t>(k)] = s;
      z[static_cast<std::size_t>(k) + 1] = kInf;
      break;
    }
  }
  int k2 = 0;
  for (int q = 0; q < n; ++q) {
    while (z[static_cast<std::size_t>(k2) + 1] < q) ++k2;
    int p = v[static_cast<std::size_t>(k2)];
    double fp = f[static_cast<std::size_t>(p)];
    out[static_cast<std::size_t>(q)] =
        fp == kInf ? kInf : (static_cast<double>(q) - p) * (static_cast<double>(q) - p) + fp;
  }
}

}  // namespace

GridSet::GridSet(const Space& space, double h, std::int64_t cell_budget) : space_(space), h_(h) {
  if (!(h > 0.0)) throw ResolutionError("grid resolution must be positive");
  if (space.is_circle()) {
    double n = std::ceil(1.0 / h);
    if (n > static_cast<double>(cell_budget))
      throw ResolutionError("circle grid exceeds the cell budget");
    nx_ = static_cast<int>(n);
    ny_ = 1;
  } else {
    double wx = space.hi().x() - space.lo().x();
    double wy = space.hi().y() - space.lo().y();
    double cx = std::ceil(wx / h);
    double cy = std::ceil(wy / h);
    if (cx * cy > static_cast<double>(cell_budget))
      throw ResolutionError("planar grid exceeds the cell budget");
    nx_ = static_cast<int>(cx);
    ny_ = static_cast<int>(cy);
  }
  bits_.assign(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_), 0);
}

double GridSet::cell_width() const { return space_.is_circle() ? 1.0 / nx_ : h_; }

double GridSet::cell_diagonal() const {
  return space_.is_circle() ? cell_width() : h_ * std::sqrt(2.0);
}

void GridSet::set(int ix, int iy, bool value) {
  std::uint8_t& b = bits_[index(ix, iy)];
  if (b && !value) --occupied_;
  if (!b && value) ++occupied_;
  b = value ? 1 : 0;
}

Point GridSet::cell_center(int ix, int iy) const {
  if (space_.is_circle()) return Point((ix + 0.5) * cell_width(), 0.0);
  return Point(space_.lo().x() + (ix + 0.5) * h_, space_.lo().y() + (iy + 0.5) * h_);
}

bool GridSet::locate(const Point& p, int& ix, int& iy) const {
  if (space_.is_circle()) {
    double x = wrap01(p.x());
    ix = static_cast<int>(x * nx_);
    if (ix >= nx_) ix = nx_ - 1;
    iy = 0;
    return true;
  }
  double fx = (p.x() - space_.lo().x()) / h_;
  double fy = (p.y() - space_.lo().y()) / h_;
  ix = static_cast<int>(std::floor(fx));
  iy = static_cast<int>(std::floor(fy));
  return ix >= 0 && ix < nx_ && iy >= 0 && iy < ny_;
}

void GridSet::stamp_point(const Point& p) {
  int ix, iy;
  if (locate(p, ix, iy)) {
    set(ix, iy, true);
    return;
  }
  // clamp points within one cell of the boundary (box-edge images)
  int cx = std::clamp(ix, 0, nx_ - 1);
  int cy = std::clamp(iy, 0, ny_ - 1);
  if (std::abs(cx - ix) <= 1 && std::abs(cy - iy) <= 1) set(cx, cy, true);
}

void GridSet::stamp_disc(const Point& p, double radius) {
  if (space_.is_circle()) {
    double w = cell_width();
    double x = wrap01(p.x());
    int lo = static_cast<int>(std::floor((x - radius) / w));
    int hi = static_cast<int>(std::floor((x + radius) / w));
    if (hi - lo + 1 >= nx_) {
      for (int i = 0; i < nx_; ++i) set(i, 0, true);
      return;
    }
    for (int i = lo; i <= hi; ++i) {
      int iw = ((i % nx_) + nx_) % nx_;
      if (circle_distance((iw + 0.5) * w, x) <= radius) set(iw, 0, true);
    }
    return;
  }
  double lx = space_.lo().x(), ly = space_.lo().y();
  int ix0 = static_cast<int>(std::floor((p.x() - radius - lx) / h_ - 0.5));
  int ix1 = static_cast<int>(std::ceil((p.x() + radius - lx) / h_ - 0.5));
  int iy0 = static_cast<int>(std::floor((p.y() - radius - ly) / h_ - 0.5));
  int iy1 = static_cast<int>(std::ceil((p.y() + radius - ly) / h_ - 0.5));
  ix0 = std::max(ix0, 0);
  iy0 = std::max(iy0, 0);
  ix1 = std::min(ix1, nx_ - 1);
  iy1 = std::min(iy1, ny_ - 1);
  double r2 = radius * radius;
  for (int iy = iy0; iy <= iy1; ++iy) {
    double cy = ly + (iy + 0.5) * h_;
    for (int ix = ix0; ix <= ix1; ++ix) {
      double cx = lx + (ix + 0.5) * h_;
      double dx = cx - p.x(), dy = cy - p.y();
      if (dx * dx + dy * dy <= r2) set(ix, iy, true);
    }
  }
}

void GridSet::stamp_disc_cover(const Point& p, double radius) {
  if (space_.is_circle()) {
    // 1D: interval overlap equals the center test with radius + w/2
    stamp_disc(p, radius + 0.5 * cell_width());
    return;
  }
  double lx = space_.lo().x(), ly = space_.lo().y();
  int ix0 = static_cast<int>(std::floor((p.x() - radius - lx) / h_));
  int ix1 = static_cast<int>(std::floor((p.x() + radius - lx) / h_));
  int iy0 = static_cast<int>(std::floor((p.y() - radius - ly) / h_));
  int iy1 = static_cast<int>(std::floor((p.y() + radius - ly) / h_));
  ix0 = std::max(ix0, 0);
  iy0 = std::max(iy0, 0);
  ix1 = std::min(ix1, nx_ - 1);
  iy1 = std::min(iy1, ny_ - 1);
  double r2 = radius * radius;
  for (int iy = iy0; iy <= iy1; ++iy) {
    double cy0 = ly + iy * h_, cy1 = cy0 + h_;
    double dy = p.y() < cy0 ? cy0 - p.y() : (p.y() > cy1 ? p.y() - cy1 : 0.0);
    for (int ix = ix0; ix <= ix1; ++ix) {
      double cx0 = lx + ix * h_, cx1 = cx0 + h_;
      double dx = p.x() < cx0 ? cx0 - p.x() : (p.x() > cx1 ? p.x() - cx1 : 0.0);
      if (dx * dx + dy * dy <= r2) set(ix, iy, true);
    }
  }
}

void GridSet::stamp_rect_cover(const Point& p, double hw_x, double hw_y) {
  if (space_.is_circle()) {
    stamp_disc(p, hw_x + 0.5 * cell_width());
    return;
  }
  double lx = space_.lo().x(), ly = space_.lo().y();
  // half-open: a cell [a, a+h) overlaps [x0, x1) iff a < x1 and x0 < a+h
  double vx0 = (p.x() - hw_x - lx) / h_, vx1 = (p.x() + hw_x - lx) / h_;
  double vy0 = (p.y() - hw_y - ly) / h_, vy1 = (p.y() + hw_y - ly) / h_;
  int ix0 = static_cast<int>(std::floor(vx0));
  int iy0 = static_cast<int>(std::floor(vy0));
  int ix1 = static_cast<int>(std::floor(vx1));
  int iy1 = static_cast<int>(std::floor(vy1));
  if (static_cast<double>(ix1) == vx1 && ix1 > ix0) --ix1;  // exact boundary: exclusive
  if (static_cast<double>(iy1) == vy1 && iy1 > iy0) --iy1;
  ix0 = std::max(ix0, 0);
  iy0 = std::max(iy0, 0);
  ix1 = std::min(ix1, nx_ - 1);
  iy1 = std::min(iy1, ny_ - 1);
  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix) set(ix, iy, true);
}

bool GridSet::same_frame(const GridSet& o) const {
  return space_ == o.space_ && h_ == o.h_;
}

void GridSet::require_same_frame(const GridSet& o) const {
  if (!same_frame(o))
    throw ComparabilityError("grids have different space or resolution");
}

GridSet& GridSet::unite(const GridSet& o) {
  require_same_frame(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  recount();
  return *this;
}

GridSet& GridSet::intersect(const GridSet& o) {
  require_same_frame(o);
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  recount();
  return *this;
}

bool GridSet::subset_of(const GridSet& o) const {
  require_same_frame(o);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] && !o.bits_[i]) return false;
  return true;
}

bool GridSet::operator==(const GridSet& o) const {
  return same_frame(o) && bits_ == o.bits_;
}

GridSet GridSet::complement() const {
  GridSet out(*this);
  for (auto& b : out.bits_) b = b ? 0 : 1;
  out.recount();
  return out;
}

GridSet GridSet::dilate(int cells) const {
  GridSet out(*this);
  if (cells <= 0 || occupied_ == 0) return out;
  if (space_.is_circle()) {
    for_each_occupied([&](int ix, int) {
      for (int d = -cells; d <= cells; ++d) {
        int j = ((ix + d) % nx_ + nx_) % nx_;
        out.set(j, 0, true);
      }
    });
    return out;
  }
  for_each_occupied([&](int ix, int iy) {
    for (int dy = -cells; dy <= cells; ++dy)
      for (int dx = -cells; dx <= cells; ++dx) {
        int jx = ix + dx, jy = iy + dy;
        if (jx >= 0 && jx < nx_ && jy >= 0 && jy < ny_) out.set(jx, jy, true);
      }
  });
  return out;
}

void GridSet::recount() {
  occupied_ = 0;
  for (std::uint8_t b : bits_) occupied_ += b ? 1 : 0;
}

std::vector<double> GridSet::distance_field() const {
  std::vector<double> out(bits_.size(), kInf);
  if (occupied_ == 0) return out;
  if (space_.is_circle()) {
    // two wrap-around sweeps in each direction give exact ring distances
    std::vector<double> d(bits_.size(), kInf);
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i]) d[i] = 0.0;
    int n = nx_;
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < n; ++i) {
        int prev = (i + n - 1) % n;
        d[static_cast<std::size_t>(i)] =
            std::min(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(prev)] + 1.0);
      }
    for (int pass = 0; pass < 2; ++pass)
      for (int i = n - 1; i >= 0; --i) {
        int nxt = (i + 1) % n;
        d[static_cast<std::size_t>(i)] =
            std::min(d[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(nxt)] + 1.0);
      }
    double w = cell_width();
    for (std::size_t i = 0; i < bits_.size(); ++i) out[i] = std::min(d[i], n - d[i]) * w;
    // distance cannot exceed half the circle
    for (auto& v : out) v = std::min(v, 0.5);
    return out;
  }
  // exact squared EDT: columns then rows
  std::vector<double> col(static_cast<std::size_t>(ny_));
  std::vector<double> colout(static_cast<std::size_t>(ny_));
  std::vector<double> stage(bits_.size());
  for (int ix = 0; ix < nx_; ++ix) {
    for (int iy = 0; iy < ny_; ++iy)
      col[static_cast<std::size_t>(iy)] = bits_[index(ix, iy)] ? 0.0 : kInf;
    dt_1d(col, colout);
    for (int iy = 0; iy < ny_; ++iy) stage[index(ix, iy)] = colout[static_cast<std::size_t>(iy)];
  }
  std::vector<double> row(static_cast<std::size_t>(nx_));
  std::vector<double> rowout(static_cast<std::size_t>(nx_));
  for (int iy = 0; iy < ny_; ++iy) {
    for (int ix = 0; ix < nx_; ++ix) row[static_cast<std::size_t>(ix)] = stage[index(ix, iy)];
    dt_1d(row, rowout);
    for (int ix = 0; ix < nx_; ++ix)
      out[index(ix, iy)] = std::sqrt(rowout[static_cast<std::size_t>(ix)]) * h_;
  }
  return out;
}

GridSet grid_from_points(std::span<const Point> pts, const Space& s, double h,
                         std::int64_t cell_budget) {
  GridSet g(s, h, cell_budget);
  for (const Point& p : pts) {
    if (!s.contains(p)) throw DomainError("point outside the space");
    g.stamp_point(s.canonicalize(p));
  }
  return g;
}

GridSet grid_from_arc(const Space& s, double h, double lo, double hi) {
  if (!s.is_circle()) throw DomainError("grid_from_arc needs a circle space");
  if (!(hi >= lo)) throw DomainError("arc must have hi >= lo");
  GridSet g(s, h);
  double w = g.cell_width();
  double len = std::min(hi - lo, 1.0);
  for (int i = 0; i < g.nx(); ++i) {
    double c = (i + 0.5) * w;
    if (wrap01(c - lo) <= len) g.set(i, 0, true);
  }
  return g;
}

GridSet grid_from_box(const Space& s, double h, const Point& lo, const Point& hi) {
  if (s.is_circle()) throw DomainError("grid_from_box needs a planar space");
  GridSet g(s, h);
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nx(); ++ix) {
      Point c = g.cell_center(ix, iy);
      if (c.x() >= lo.x() && c.x() <= hi.x() && c.y() >= lo.y() && c.y() <= hi.y())
        g.set(ix, iy, true);
    }
  return g;
}

GridSet grid_full(const Space& s, double h) {
  GridSet g(s, h);
  for (auto& b : g.mutable_bits()) b = 1;
  g.recount();
  return g;
}

double directed_hausdorff(const GridSet& from, const GridSet& to) {
  from.require_same_frame(to);
  if (from.empty() || to.empty()) throw EmptySetError("hausdorff distance of an empty set");
  std::vector<double> field = to.distance_field();
  double best = 0.0;
  from.for_each_occupied([&](int ix, int iy) {
    best = std::max(best, field[static_cast<std::size_t>(iy) * from.nx() + ix]);
  });
  return best;
}

double hausdorff_distance(const GridSet& a, const GridSet& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

std::vector<GridSet> tail_sets(std::span<const Point> orbit, const Space& s, double h,
                               std::span<const std::int64_t> cut_ns) {
  for (std::size_t i = 0; i < cut_ns.size(); ++i) {
    if (cut_ns[i] < 0 || cut_ns[i] > static_cast<std::int64_t>(orbit.size()))
      throw IndexError("tail cut exceeds orbit length");
    if (i > 0 && cut_ns[i] < cut_ns[i - 1])
      throw IndexError("tail cuts must be nondecreasing");
  }
  std::vector<GridSet> out;
  if (cut_ns.empty()) return out;
  // build from the largest cut backwards so the grids are nested by
  // construction
  std::vector<GridSet> rev;
  GridSet acc(s, h);
  std::int64_t covered_from = static_cast<std::int64_t>(orbit.size());
  for (std::size_t ci = cut_ns.size(); ci-- > 0;) {
    std::int64_t cut = cut_ns[ci];
    for (std::int64_t m = covered_from - 1; m >= cut; --m)
      acc.stamp_point(s.canonicalize(orbit[static_cast<std::size_t>(m)]));
    covered_from = cut;
    rev.push_back(acc);
  }
  out.assign(rev.rbegin(), rev.rend());
  return out;
}

// --- exports ----------------------------------------------------------------

void write_pgm(const GridSet& g, const std::string& path, const std::string& comment) {
  std::ostringstream os;
  os << "P5\n";
  for (const auto& line : split_lines(comment)) os << "# " << line << "\n";
  os << g.nx() << " " << g.ny() << "\n255\n";
  std::string body;
  body.resize(static_cast<std::size_t>(g.nx()) * static_cast<std::size_t>(g.ny()));
  // top row first (max y)
  std::size_t pos = 0;
  for (int iy = g.ny() - 1; iy >= 0; --iy)
    for (int ix = 0; ix < g.nx(); ++ix)
      body[pos++] = g.occupied(ix, iy) ? static_cast<char>(255) : static_cast<char>(0);
  atomic_write(path, os.str() + body);
}

std::string to_rle_string(const GridSet& g, const std::string& comment) {
  std::ostringstream os;
  os << "ifslab gridset v1\n";
  for (const auto& line : split_lines(comment)) os << "# " << line << "\n";
  if (g.space().is_circle())
    os << "space = circle\n";
  else
    os << "space = box " << format_double(g.space().lo().x()) << " "
       << format_double(g.space().lo().y()) << " " << format_double(g.space().hi().x()) << " "
       << format_double(g.space().hi().y()) << "\n";
  os << "h = " << format_double(g.h()) << "\n";
  os << "dims = " << g.nx() << " " << g.ny() << "\n";
  os << "rle =";
  // row-major runs of (value, count)
  const auto& bits = g.bits();
  std::size_t i = 0;
  while (i < bits.size()) {
    std::size_t j = i;
    while (j < bits.size() && bits[j] == bits[i]) ++j;
    os << " " << (bits[i] ? 1 : 0) << ":" << (j - i);
    i = j;
  }
  os << "\n";
  return os.str();
}

void write_rle(const GridSet& g, const std::string& path, const std::string& comment) {
  atomic_write(path, to_rle_string(g, comment));
}

GridSet from_rle_string(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != "ifslab gridset v1")
    throw ConfigError("not an ifslab gridset file");
  Space space = Space::circle();
  bool have_space = false;
  double h = 0.0;
  int nx = -1, ny = -1;
  std::string rle;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("malformed gridset line: " + line);
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "space") {
      std::istringstream vs(val);
      std::string kind;
      vs >> kind;
      if (kind == "circle") {
        space = Space::circle();
      } else if (kind == "box") {
        double x0, y0, x1, y1;
        vs >> x0 >> y0 >> x1 >> y1;
        space = Space::planar_box(Point(x0, y0), Point(x1, y1));
      } else {
        throw ConfigError("unknown space kind: " + kind);
      }
      have_space = true;
    } else if (key == "h") {
      h = parse_rational(val);
    } else if (key == "dims") {
      std::istringstream vs(val);
      vs >> nx >> ny;
    } else if (key == "rle") {
      rle = val;
    }
  }
  if (!have_space || h <= 0.0 || nx <= 0 || ny <= 0)
    throw ConfigError("gridset file missing space/h/dims");
  GridSet g(space, h);
  if (g.nx() != nx || g.ny() != ny) throw ConfigError("gridset dims do not match space and h");
  auto& bits = g.mutable_bits();
  std::size_t pos = 0;
  std::istringstream rs(rle);
  std::string tok;
  while (rs >> tok) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw ConfigError("malformed rle token: " + tok);
    int value = std::stoi(tok.substr(0, colon));
    std::size_t count = static_cast<std::size_t>(std::stoll(tok.substr(colon + 1)));
    if (pos + count > bits.size()) throw ConfigError("rle overruns the grid");
    std::fill_n(bits.begin() + static_cast<std::ptrdiff_t>(pos), count,
                static_cast<std::uint8_t>(value ? 1 : 0));
    pos += count;
  }
  if (pos != bits.size()) throw ConfigError("rle does not cover the grid");
  g.recount();
  return g;
}

GridSet read_rle(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open gridset file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_rle_string(ss.str());
}

}  // namespace ifslab
