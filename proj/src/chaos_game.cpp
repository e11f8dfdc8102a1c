#include "ifslab/chaos_game.hpp"

#include <cmath>
#include <sstream>

#include "ifslab/textio.hpp"

namespace ifslab {

namespace {

// Log-spaced checkpoints in [1, n], deduplicated, always ending at n.
std::vector<std::int64_t> curve_checkpoints(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n <= 0) return out;
  double lg = std::log(static_cast<double>(n));
  std::int64_t prev = 0;
  for (int i = 1; i <= defaults::kCurvePoints; ++i) {
    auto v = static_cast<std::int64_t>(
        std::llround(std::exp(lg * static_cast<double>(i) / defaults::kCurvePoints)));
    if (v <= prev) v = prev + 1;
    if (v > n) break;
    out.push_back(v);
    prev = v;
  }
  if (out.empty() || out.back() != n) out.push_back(n);
  return out;
}

}  // namespace

CoverageReport run_probabilistic(const Ifs& ifs, const Point& x, SymbolStream stream,
                                 std::int64_t n, std::int64_t burn_in, double h,
                                 const GridSet& reference) {
  if (reference.empty()) throw EmptySetError("coverage needs a nonempty reference");
  if (reference.h() != h || !(reference.space() == ifs.space))
    throw ComparabilityError("reference grid frame does not match the experiment");
  if (burn_in < 0 || n < burn_in) throw std::invalid_argument("need n >= burn_in >= 0");

  CoverageReport rep(ifs.space, h);
  rep.attractor_cells = reference.occupied_count();
  rep.steps = n;
  rep.burn_in = burn_in;
  rep.seed = x;
  rep.driver = stream.spec_string();

  auto checkpoints = curve_checkpoints(n);
  std::size_t next_cp = 0;
  std::int64_t hits = 0;

  Point p = ifs.space.canonicalize(x);
  for (std::int64_t step = 1; step <= n; ++step) {
    p = eval_map(ifs.generator(stream.next()), ifs.space, p);
    if (step > burn_in) {
      int ix, iy;
      if (rep.orbit.locate(p, ix, iy) && !rep.orbit.occupied(ix, iy)) {
        rep.orbit.set(ix, iy, true);
        if (reference.occupied(ix, iy)) ++hits;
      }
    }
    while (next_cp < checkpoints.size() && checkpoints[next_cp] == step) {
      rep.curve.emplace_back(step, static_cast<double>(hits) /
                                       static_cast<double>(rep.attractor_cells));
      ++next_cp;
    }
  }
  if (rep.curve.empty())
    rep.curve.emplace_back(n, static_cast<double>(hits) / static_cast<double>(rep.attractor_cells));
  rep.hit_cells = hits;
  rep.coverage = static_cast<double>(hits) / static_cast<double>(rep.attractor_cells);
  return rep;
}

std::vector<CoverageReport> run_deterministic(const Ifs& ifs, std::span<const Point> seeds,
                                              const SymbolStream& stream, std::int64_t n,
                                              std::int64_t burn_in, double h,
                                              const GridSet& reference) {
  std::vector<CoverageReport> out;
  out.reserve(seeds.size());
  for (const Point& seed : seeds) {
    SymbolStream replay = stream.clone();
    replay.reset();
    out.push_back(run_probabilistic(ifs, seed, std::move(replay), n, burn_in, h, reference));
  }
  return out;
}

std::string coverage_curve_csv(std::span<const CoverageReport> reports,
                               const std::string& comment) {
  auto csv_field = [](const std::string& s) {
    if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    quoted += '"';
    return quoted;
  };
  std::ostringstream os;
  for (const auto& line : split_lines(comment)) os << "# " << line << "\n";
  os << "step,coverage,driver,seed\n";
  for (const auto& r : reports) {
    std::string seed_str = format_double(r.seed.x());
    if (!r.orbit.space().is_circle()) seed_str += ";" + format_double(r.seed.y());
    std::string driver = csv_field(r.driver);
    for (const auto& [step, cov] : r.curve)
      os << step << "," << format_double(cov) << "," << driver << "," << seed_str << "\n";
  }
  return os.str();
}

}  // namespace ifslab
