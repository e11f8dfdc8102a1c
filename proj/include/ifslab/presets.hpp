#pragma once

#include <string>
#include <vector>

#include "ifslab/cantor.hpp"
#include "ifslab/ifs.hpp"

namespace ifslab {

// Recommended experiment parameters shipped with each preset.
struct ExperimentDefaults {
  double h = 1.0 / 256.0;
  std::int64_t n = 1000000;
  std::int64_t burn_in = 100;
  double eps = 0.01;
  int seeds = 5;
  double coverage_threshold = 0.99;
};

struct Preset {
  std::string name;
  Ifs ifs;
  std::string note;
  ExperimentDefaults rec;
};

// Registry of pinned experiment systems:
//   sierpinski        - 3 affine halvings toward (0,0), (1,0), (0,1)
//   fern              - the classic 4-map fern
//   circle_minimal    - rotation by the golden conjugate + a north-south
//                       Moebius map (forward and backward minimal)
//   circle_example_44 - the same rotation + a parabolic map fixing 0 with
//                       derivative 1 (minimal, contractible, every fibre the
//                       whole circle)
//   ns_pair           - two Moebius maps sharing attractor 0 and repeller
//                       0.5 (forward-invariant arcs around 0: not backward
//                       minimal)
// All constants live in one table in presets.cpp; make_preset returns
// identical values on every call.
Preset make_preset(const std::string& name);

std::vector<std::string> preset_names();

// The pluggable-candidate interface: user generators plus the PL
// homeomorphism h with h(K) strictly containing K, built from the pinned
// Cantor pair at the given level. The candidate is meant to be fed to the
// minimality checkers, which decide whether it is forward minimal and not
// backward minimal.
Preset make_cantor_candidate(std::vector<MapSpec> user_generators, int level = 6);

// The pinned Cantor structures behind `cantor_candidate`: the middle-thirds
// set in [0, 1/3] and its union with a copy translated to [1/2, 5/6].
CantorApprox cantor_candidate_small(int level);
CantorApprox cantor_candidate_big(int level);

// Golden-ratio conjugate used by every circle preset.
double golden_angle();

}  // namespace ifslab
