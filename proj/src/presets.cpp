#include "ifslab/presets.hpp"

namespace ifslab {

// Every pinned constant of the preset registry lives here.
namespace {

constexpr double kGoldenAngle = 0.6180339887;  // badly approximable rotation number
constexpr double kMoebiusRepeller = 0.5;
constexpr double kMoebiusMultiplier = 0.5;
constexpr double kMoebiusMultiplierSlow = 0.25;
constexpr double kParabolicStrength = 0.2;  // < 1/pi

Affine2D halving_toward(double vx, double vy) {
  Affine2D a;
  a.linear = 0.5 * Eigen::Matrix2d::Identity();
  a.offset = Eigen::Vector2d(0.5 * vx, 0.5 * vy);
  return a;
}

Affine2D fern_map(double a, double b, double c, double d, double e, double f) {
  Affine2D m;
  m.linear << a, b, c, d;
  m.offset << e, f;
  return m;
}

}  // namespace

double golden_angle() { return kGoldenAngle; }

Preset make_preset(const std::string& name) {
  if (name == "sierpinski") {
    Ifs ifs(Space::planar_box(Point(0, 0), Point(1, 1)),
            {halving_toward(0, 0), halving_toward(1, 0), halving_toward(0, 1)});
    ExperimentDefaults rec;
    rec.h = 1.0 / 256.0;
    rec.n = 1000000;
    rec.seeds = 5;
    return Preset{name, std::move(ifs), "three affine halvings, ratio 1/2", rec};
  }
  if (name == "fern") {
    Ifs ifs(Space::planar_box(Point(-2.75, -0.5), Point(2.75, 10.5)),
            {fern_map(0.0, 0.0, 0.0, 0.16, 0.0, 0.0),
             fern_map(0.85, 0.04, -0.04, 0.85, 0.0, 1.6),
             fern_map(0.2, -0.26, 0.23, 0.22, 0.0, 1.6),
             fern_map(-0.15, 0.28, 0.26, 0.24, 0.0, 0.44)});
    ExperimentDefaults rec;
    rec.h = 1.0 / 128.0;
    rec.n = 2000000;
    rec.seeds = 1;
    return Preset{name, std::move(ifs), "classic four-map fern (stem map is singular)", rec};
  }
  if (name == "circle_minimal") {
    Ifs ifs(Space::circle(),
            {Rotation{kGoldenAngle},
             Moebius{0.0, kMoebiusRepeller, kMoebiusMultiplier}});
    ExperimentDefaults rec;
    rec.h = 1e-3;
    rec.n = 1000000;
    rec.eps = 1e-2;
    rec.seeds = 100;
    rec.coverage_threshold = 0.999;
    return Preset{name, std::move(ifs),
                  "irrational rotation + north-south map: forward and backward minimal", rec};
  }
  if (name == "circle_example_44") {
    Ifs ifs(Space::circle(), {Rotation{kGoldenAngle}, Parabolic{kParabolicStrength}});
    ExperimentDefaults rec;
    rec.h = 1e-3;
    rec.n = 1000000;
    rec.eps = 1e-2;
    rec.seeds = 50;
    rec.coverage_threshold = 0.999;
    return Preset{name, std::move(ifs),
                  "rotation + parabolic fixing 0 with derivative 1: minimal, contractible, "
                  "not strongly fibred",
                  rec};
  }
  if (name == "ns_pair") {
    Ifs ifs(Space::circle(),
            {Moebius{0.0, kMoebiusRepeller, kMoebiusMultiplier},
             Moebius{0.0, kMoebiusRepeller, kMoebiusMultiplierSlow}});
    ExperimentDefaults rec;
    rec.h = 1e-3;
    rec.n = 100000;
    rec.eps = 1e-2;
    rec.seeds = 16;
    return Preset{name, std::move(ifs),
                  "two north-south maps with shared fixed points: not backward minimal", rec};
  }
  throw UnknownPresetError("unknown preset: '" + name + "'");
}

std::vector<std::string> preset_names() {
  return {"sierpinski", "fern", "circle_minimal", "circle_example_44", "ns_pair",
          "cantor_candidate"};
}

CantorApprox cantor_candidate_small(int level) {
  return cantor_set(Arc{0.0, 1.0 / 3.0}, 1.0 / 3.0, level);
}

CantorApprox cantor_candidate_big(int level) {
  CantorApprox translated = cantor_set(Arc{0.5, 0.5 + 1.0 / 3.0}, 1.0 / 3.0, level);
  return cantor_union(cantor_candidate_small(level), translated);
}

Preset make_cantor_candidate(std::vector<MapSpec> user_generators, int level) {
  // K_big = K union translate(K) has twice the arcs, so match endpoint
  // counts by subdividing K once.
  CantorApprox small = cantor_candidate_small(level);
  CantorApprox big = cantor_candidate_big(level);
  MapSpec h = cantor_expanding_homeo(subdivide(small), big);
  std::vector<MapSpec> gens = std::move(user_generators);
  gens.push_back(h);
  Ifs ifs(Space::circle(), std::move(gens));
  ExperimentDefaults rec;
  rec.h = 1e-3;
  rec.n = 1000000;
  rec.eps = 1e-2;
  rec.seeds = 16;
  return Preset{"cantor_candidate", std::move(ifs),
                "user generators plus a homeomorphism h with h(K) strictly containing K",
                rec};
}

}  // namespace ifslab
