#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ifslab/grid.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

// Central defaults shared by runners, checkers and the acceptance suite, so
// every tolerance is pinned in one place.
namespace defaults {
inline constexpr std::int64_t kBurnIn = 100;
inline constexpr double kCoverageThreshold = 0.99;
inline constexpr double kCircleCoverageThreshold = 0.999;
inline constexpr double kConvergenceTolFactor = 2.0;  // tol = factor * h
inline constexpr double kHausdorffSlackDiagonals = 3.0;
inline constexpr std::int64_t kCheckerMaxSteps = 200000;
inline constexpr int kContractBeam = 64;
inline constexpr int kCurvePoints = 128;
}  // namespace defaults

// How much of a reference set one fiberwise orbit visits at resolution h.
struct CoverageReport {
  std::int64_t attractor_cells = 0;
  std::int64_t hit_cells = 0;       // reference cells visited after burn-in
  double coverage = 0.0;            // hit/attractor
  std::vector<std::pair<std::int64_t, double>> curve;  // (steps, coverage)
  std::int64_t steps = 0;
  std::int64_t burn_in = 0;
  double h = 0.0;
  Point seed = Point::Zero();
  std::string driver;
  GridSet orbit;  // post-burn-in orbit cells, same frame as the reference

  CoverageReport(const Space& s, double h_) : h(h_), orbit(s, h_) {}
};

// Run the chaos game along the stream from x for n steps, discard the first
// burn_in points, grid the rest and report coverage of `reference` plus the
// growth curve (log-spaced checkpoints). The stream is consumed from its
// cursor.
CoverageReport run_probabilistic(const Ifs& ifs, const Point& x, SymbolStream stream,
                                 std::int64_t n, std::int64_t burn_in, double h,
                                 const GridSet& reference);

// Replays the *same* stream from position 0 for every seed; the
// deterministic chaos game holds at this resolution iff every report clears
// the coverage threshold.
std::vector<CoverageReport> run_deterministic(const Ifs& ifs, std::span<const Point> seeds,
                                              const SymbolStream& stream, std::int64_t n,
                                              std::int64_t burn_in, double h,
                                              const GridSet& reference);

std::string coverage_curve_csv(std::span<const CoverageReport> reports,
                               const std::string& comment);

}  // namespace ifslab
