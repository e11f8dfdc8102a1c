#include "ifslab/textio.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ifslab {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::istringstream is(s);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::string format_double(double v) {
  // %.17g always round-trips; prefer the shorter %.15g when it does too.
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  if (std::strtod(buf, nullptr) == v) return buf;
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_rational(const std::string& s) {
  std::string t = trim(s);
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t used = 0;
      double v = std::stod(t, &used);
      if (trim(t.substr(used)).size()) throw std::invalid_argument("trailing junk");
      return v;
    }
    double num = std::stod(trim(t.substr(0, slash)));
    double den = std::stod(trim(t.substr(slash + 1)));
    if (den == 0.0) throw std::invalid_argument("zero denominator");
    return num / den;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number: '" + s + "'");
  }
}

void atomic_write(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open for writing: " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::string map_to_block(const MapSpec& m) {
  std::ostringstream os;
  os << "[generator]\n";
  os << "type = " << map_kind_name(m) << "\n";
  if (const auto* a = std::get_if<Affine2D>(&m)) {
    os << "a11 = " << format_double(a->linear(0, 0)) << "\n";
    os << "a12 = " << format_double(a->linear(0, 1)) << "\n";
    os << "a21 = " << format_double(a->linear(1, 0)) << "\n";
    os << "a22 = " << format_double(a->linear(1, 1)) << "\n";
    os << "tx = " << format_double(a->offset.x()) << "\n";
    os << "ty = " << format_double(a->offset.y()) << "\n";
  } else if (const auto* r = std::get_if<Rotation>(&m)) {
    os << "angle = " << format_double(r->angle) << "\n";
  } else if (const auto* mo = std::get_if<Moebius>(&m)) {
    os << "attracting = " << format_double(mo->attracting) << "\n";
    os << "repelling = " << format_double(mo->repelling) << "\n";
    os << "multiplier = " << format_double(mo->multiplier) << "\n";
  } else if (const auto* p = std::get_if<Parabolic>(&m)) {
    os << "strength = " << format_double(p->strength) << "\n";
  } else {
    const auto& pl = std::get<PLCircleHomeo>(m);
    os << "breakpoints =";
    for (std::size_t i = 0; i < pl.x.size(); ++i)
      os << " " << format_double(pl.x[i]) << ":" << format_double(pl.y[i]);
    os << "\n";
  }
  return os.str();
}

std::string ifs_to_text(const Ifs& ifs) {
  std::ostringstream os;
  os << "# ifslab ifs v1\n";
  if (ifs.space.is_circle())
    os << "space = circle\n";
  else
    os << "space = box " << format_double(ifs.space.lo().x()) << " "
       << format_double(ifs.space.lo().y()) << " " << format_double(ifs.space.hi().x()) << " "
       << format_double(ifs.space.hi().y()) << "\n";
  for (const auto& g : ifs.generators) os << "\n" << map_to_block(g);
  return os.str();
}

namespace {

double need_key(const std::map<std::string, std::string>& kv, const std::string& key,
                int block_no) {
  auto it = kv.find(key);
  if (it == kv.end())
    throw ConfigError("generator block " + std::to_string(block_no) + " is missing '" + key + "'");
  return parse_rational(it->second);
}

MapSpec block_to_map(const std::map<std::string, std::string>& kv, int block_no) {
  auto it = kv.find("type");
  if (it == kv.end())
    throw ConfigError("generator block " + std::to_string(block_no) + " is missing 'type'");
  const std::string& type = it->second;
  if (type == "affine") {
    Affine2D a;
    a.linear << need_key(kv, "a11", block_no), need_key(kv, "a12", block_no),
        need_key(kv, "a21", block_no), need_key(kv, "a22", block_no);
    a.offset << need_key(kv, "tx", block_no), need_key(kv, "ty", block_no);
    return a;
  }
  if (type == "rotation") return Rotation{need_key(kv, "angle", block_no)};
  if (type == "moebius")
    return Moebius{need_key(kv, "attracting", block_no), need_key(kv, "repelling", block_no),
                   need_key(kv, "multiplier", block_no)};
  if (type == "parabolic") return Parabolic{need_key(kv, "strength", block_no)};
  if (type == "pl") {
    auto bp = kv.find("breakpoints");
    if (bp == kv.end())
      throw ConfigError("pl generator block " + std::to_string(block_no) +
                        " is missing 'breakpoints'");
    PLCircleHomeo pl;
    std::istringstream is(bp->second);
    std::string tok;
    while (is >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos)
        throw ConfigError("malformed breakpoint '" + tok + "' (expected x:y)");
      pl.x.push_back(parse_rational(tok.substr(0, colon)));
      pl.y.push_back(parse_rational(tok.substr(colon + 1)));
    }
    return pl;
  }
  throw ConfigError("unknown generator type: '" + type + "'");
}

}  // namespace

Ifs ifs_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  bool have_space = false;
  Space space = Space::circle();
  std::vector<std::map<std::string, std::string>> blocks;
  bool in_block = false;
  while (std::getline(is, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t == "[generator]") {
      blocks.emplace_back();
      in_block = true;
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key == "space") {
      std::istringstream vs(val);
      std::string kind;
      vs >> kind;
      if (kind == "circle") {
        space = Space::circle();
      } else if (kind == "box") {
        std::string x0, y0, x1, y1;
        if (!(vs >> x0 >> y0 >> x1 >> y1))
          throw ConfigError("line " + std::to_string(line_no) + ": box needs four numbers");
        space = Space::planar_box(Point(parse_rational(x0), parse_rational(y0)),
                                  Point(parse_rational(x1), parse_rational(y1)));
      } else {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown space '" + kind + "'");
      }
      have_space = true;
      in_block = false;
      continue;
    }
    if (!in_block)
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' outside a [generator] block");
    blocks.back()[key] = val;
  }
  if (!have_space) throw ConfigError("ifs file has no 'space =' line");
  if (blocks.empty()) throw ConfigError("ifs file has no [generator] blocks");
  std::vector<MapSpec> gens;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    gens.push_back(block_to_map(blocks[i], static_cast<int>(i + 1)));
  try {
    return Ifs(space, std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid ifs: ") + e.what());
  }
}

void write_ifs_file(const Ifs& ifs, const std::string& path) {
  atomic_write(path, ifs_to_text(ifs));
}

Ifs read_ifs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open ifs file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ifs_from_text(ss.str());
}

SymbolStream parse_stream_spec(const std::string& spec, int k) {
  std::string t = trim(spec);
  auto parts = split(t, ':');
  const std::string& head = parts[0];
  try {
    if (head == "champernowne") {
      if (parts.size() != 1) throw ConfigError("champernowne takes no arguments");
      return SymbolStream::champernowne(k);
    }
    if (head == "champernowne_shuffled") {
      if (parts.size() != 2) throw ConfigError("expected champernowne_shuffled:<seed>");
      return SymbolStream::champernowne_shuffled(k, std::stoull(parts[1]));
    }
    if (head == "bernoulli") {
      if (parts.size() != 3) throw ConfigError("expected bernoulli:<w1,...,wk>:<seed>");
      std::vector<double> weights;
      for (const auto& w : split(parts[1], ',')) weights.push_back(parse_rational(w));
      if (static_cast<int>(weights.size()) != k)
        throw ConfigError("bernoulli weight count does not match the generator count");
      return SymbolStream::bernoulli(std::move(weights), std::stoull(parts[2]));
    }
    if (head == "biased") {
      if (parts.size() != 3) throw ConfigError("expected biased:<p_min>:<seed>");
      return SymbolStream::history_biased(k, parse_rational(parts[1]), std::stoull(parts[2]));
    }
    if (head == "explicit") {
      if (parts.size() != 2) throw ConfigError("expected explicit:<digits>");
      std::vector<int> syms;
      for (char c : parts[1]) {
        if (c < '1' || c > '9') throw ConfigError("explicit stream digits must be 1..9");
        syms.push_back(c - '0');
      }
      return SymbolStream::explicit_word(SymbolWord(std::move(syms), k));
    }
  } catch (const InvalidPolicyError& e) {
    throw ConfigError(std::string("invalid stream: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid stream spec '") + spec + "': " + e.what());
  }
  throw ConfigError("unknown stream spec: '" + spec + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'key = value'");
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

std::string record_line(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    first = false;
    os << k << '=' << v;
  }
  return os.str();
}

}  // namespace ifslab
