#pragma once

#include <map>
#include <string>
#include <vector>

#include "ifslab/ifs.hpp"

namespace ifslab {

// Small text plumbing shared by the file formats and the CLI.

std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);
std::vector<std::string> split_lines(const std::string& s);

// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

// Accepts plain decimals and exact rational literals like "1/512".
double parse_rational(const std::string& s);

// Write content to path via a temp file + rename, so partial runs never
// leave a corrupt file behind.
void atomic_write(const std::string& path, const std::string& content);

// --- IFS file schema --------------------------------------------------------
//
// Plain-text key/value blocks, one generator per block:
//
//   space = circle            (or: space = box <x0> <y0> <x1> <y1>)
//
//   [generator]
//   type = rotation
//   angle = 0.6180339887
//
//   [generator]
//   type = moebius
//   attracting = 0
//   repelling = 0.5
//   multiplier = 0.5
//
// Generator types and keys:
//   affine:    a11 a12 a21 a22 (matrix), tx ty (offset)
//   rotation:  angle
//   moebius:   attracting, repelling, multiplier
//   parabolic: strength
//   pl:        breakpoints = x0:y0 x1:y1 ...

std::string ifs_to_text(const Ifs& ifs);
Ifs ifs_from_text(const std::string& text);
void write_ifs_file(const Ifs& ifs, const std::string& path);
Ifs read_ifs_file(const std::string& path);

std::string map_to_block(const MapSpec& m);

// --- stream spec -------------------------------------------------------------
//
//   champernowne
//   champernowne_shuffled:<seed>
//   bernoulli:<w1,...,wk>:<seed>
//   biased:<p_min>:<seed>
//   explicit:<digits>           (single-digit symbols, alphabet k)
SymbolStream parse_stream_spec(const std::string& spec, int k);

// --- config files -------------------------------------------------------------

// `key = value` lines; '#' starts a comment. Throws ConfigError with the
// offending line number.
std::map<std::string, std::string> read_config_file(const std::string& path);

// One key=value record per line (spaces inside values are not allowed).
std::string record_line(const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace ifslab
