#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ifslab/errors.hpp"

namespace ifslab {

// A finite word over the alphabet {1, ..., alphabet_size}.
struct SymbolWord {
  std::vector<int> symbols;
  int alphabet_size = 1;

  SymbolWord() = default;
  SymbolWord(std::vector<int> syms, int k);

  std::size_t size() const { return symbols.size(); }
  bool empty() const { return symbols.empty(); }
};

// An address sequence omega in {1..k}^N with a cursor.
//
// Policies:
//   champernowne          - all words over {1..k} concatenated in
//                           length-then-lexicographic order. Disjunctive by
//                           construction: every finite word is a factor.
//   champernowne_shuffled - same blocks, word order shuffled per block with a
//                           seeded rng (still disjunctive).
//   bernoulli             - i.i.d. draws with fixed positive weights.
//   history_biased        - with probability k*p_min pick uniformly,
//                           otherwise draw from a graded preference anchored
//                           at the previous symbol (weight k-d at cyclic
//                           distance d). Every conditional probability stays
//                           >= p_min while the conditionals are far from
//                           i.i.d. uniform.
//   explicit_word         - a finite word; running off the end throws
//                           StreamExhaustedError.
//
// (policy, seed) determines the sequence bit-exactly: symbols come from
// std::mt19937_64 raw output only (no std distributions), so runs reproduce
// across platforms. Clones share the generated prefix and own their cursor.
class SymbolStream {
 public:
  static SymbolStream champernowne(int k);
  static SymbolStream champernowne_shuffled(int k, std::uint64_t seed);
  static SymbolStream bernoulli(std::vector<double> weights, std::uint64_t seed);
  static SymbolStream history_biased(int k, double p_min, std::uint64_t seed);
  static SymbolStream explicit_word(SymbolWord w);

  int alphabet() const;
  std::optional<std::int64_t> size() const;  // finite length, if any

  // Lowest conditional-probability guarantee the policy makes (0 when the
  // policy is deterministic).
  double declared_p_min() const;

  // Cursor interface. next() consumes the symbol at the cursor.
  std::int64_t position() const { return cursor_; }
  int next();
  int peek();  // symbol at cursor without consuming
  void seek(std::int64_t pos);
  void reset() { cursor_ = 0; }

  // Random access with memoization; does not move the cursor.
  int at(std::int64_t i) const;

  // An independent consumer at the same position (generation state shared).
  SymbolStream clone() const { return *this; }

  // The CLI spec string this stream round-trips with, e.g. "bernoulli:0.5,0.5:7".
  std::string spec_string() const;

 private:
  struct Source;
  explicit SymbolStream(std::shared_ptr<Source> src);
  std::shared_ptr<Source> src_;
  std::int64_t cursor_ = 0;
};

// Conditional-frequency audit of a stream's first n symbols, bucketed by the
// preceding history_depth symbols.
struct DriverAudit {
  int alphabet = 1;
  int history_depth = 0;
  // One row per *visited* history bucket; row sums are 1 within 1e-9.
  std::vector<std::vector<double>> frequencies;
  std::vector<std::int64_t> bucket_counts;
  std::vector<std::int64_t> bucket_ids;  // history encoded base-k
  double min_conditional = 1.0;
  std::int64_t samples = 0;
};

SymbolStream champernowne_stream(int k);

// True iff every word of length <= max_len over the alphabet occurs as a
// factor of w; otherwise also reports the missing words.
std::pair<bool, std::vector<SymbolWord>> is_disjunctive_prefix(const SymbolWord& w,
                                                               int max_len);

// Requires n >= 10 * k^(history_depth+1) samples.
DriverAudit audit_driver(const SymbolStream& stream, std::int64_t n, int history_depth);

// Position one past the end of the length-max_len champernowne block:
// sum_{l<=max_len} l * k^l. Handy for completeness scans.
std::int64_t champernowne_block_end(int k, int max_len);

}  // namespace ifslab
