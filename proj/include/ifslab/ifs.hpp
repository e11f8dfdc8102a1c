#pragma once

#include <cstdint>
#include <vector>

#include "ifslab/map.hpp"
#include "ifslab/stream.hpp"

namespace ifslab {

// A finite family of self-maps of one space; generator indices are 1-based
// to match the symbol alphabet {1..k}.
struct Ifs {
  Space space;
  std::vector<MapSpec> generators;

  Ifs(Space s, std::vector<MapSpec> gens);

  int k() const { return static_cast<int>(generators.size()); }
  const MapSpec& generator(int symbol) const;  // 1-based
};

// State of the one-step skew product: (position into omega, fiber point).
struct SkewState {
  std::int64_t stream_position = 0;
  Point point = Point::Zero();
};

// f_{w_n} o ... o f_{w_1} applied to x: the first symbol acts first. The
// empty word is the identity.
Point orbital_branch(const Ifs& ifs, const SymbolWord& w, Point x);

// The points f^1_omega(x), ..., f^n_omega(x); the seed itself is not
// included. Consumes exactly n symbols from the stream's cursor.
std::vector<Point> fiberwise_orbit(const Ifs& ifs, SymbolStream& stream, Point x,
                                   std::int64_t n);

// One step of Phi(omega, x) = (sigma omega, f_{omega_1}(x)): consumes the
// symbol at st.stream_position and applies that generator to the point.
SkewState skew_step(const Ifs& ifs, const SkewState& st, const SymbolStream& stream);

}  // namespace ifslab
