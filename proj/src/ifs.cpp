#include "ifslab/ifs.hpp"

#include <stdexcept>

namespace ifslab {

Ifs::Ifs(Space s, std::vector<MapSpec> gens) : space(s), generators(std::move(gens)) {
  if (generators.empty()) throw std::invalid_argument("an IFS needs at least one generator");
  for (const auto& g : generators) {
    validate_map(g);
    if (is_circle_map(g) != space.is_circle())
      throw std::invalid_argument("generator space kind does not match the IFS space");
  }
}

const MapSpec& Ifs::generator(int symbol) const {
  if (symbol < 1 || symbol > k()) throw IndexError("generator symbol out of range");
  return generators[static_cast<std::size_t>(symbol - 1)];
}

Point orbital_branch(const Ifs& ifs, const SymbolWord& w, Point x) {
  for (int s : w.symbols) x = eval_map(ifs.generator(s), ifs.space, x);
  return x;
}

std::vector<Point> fiberwise_orbit(const Ifs& ifs, SymbolStream& stream, Point x,
                                   std::int64_t n) {
  if (n < 0) throw std::invalid_argument("orbit length must be >= 0");
  std::vector<Point> orbit;
  orbit.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    x = eval_map(ifs.generator(stream.next()), ifs.space, x);
    orbit.push_back(x);
  }
  return orbit;
}

SkewState skew_step(const Ifs& ifs, const SkewState& st, const SymbolStream& stream) {
  int sym = stream.at(st.stream_position);
  SkewState out;
  out.stream_position = st.stream_position + 1;
  out.point = eval_map(ifs.generator(sym), ifs.space, st.point);
  return out;
}

}  // namespace ifslab
