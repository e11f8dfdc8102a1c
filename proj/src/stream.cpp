#include "ifslab/stream.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace ifslab {

SymbolWord::SymbolWord(std::vector<int> syms, int k) : symbols(std::move(syms)), alphabet_size(k) {
  if (k < 1) throw std::invalid_argument("alphabet size must be >= 1");
  for (int s : symbols)
    if (s < 1 || s > k) throw std::invalid_argument("symbol out of alphabet range");
}

namespace {

double u01(std::mt19937_64& rng) {
  // 53 random bits; avoids std distribution objects, which are not pinned
  // across standard library implementations.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

enum class Policy { Champernowne, ChampernowneShuffled, Bernoulli, HistoryBiased, Explicit };

}  // namespace

struct SymbolStream::Source {
  Policy policy;
  int k = 1;
  std::uint64_t seed = 0;
  std::vector<double> weights;  // bernoulli
  double p_min = 0.0;           // history_biased
  std::vector<double> cumulative;

  std::vector<std::uint8_t> cache;
  std::optional<std::int64_t> finite_size;

  // champernowne generation state
  int cham_len = 1;
  std::int64_t cham_idx = 0;
  std::int64_t cham_block = 1;  // k^cham_len
  std::vector<std::int64_t> cham_order;  // shuffled word order within block

  std::mt19937_64 rng;

  void refill_cham_order() {
    if (policy != Policy::ChampernowneShuffled) return;
    cham_order.resize(static_cast<std::size_t>(cham_block));
    for (std::int64_t i = 0; i < cham_block; ++i) cham_order[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = cham_block - 1; i > 0; --i) {
      std::int64_t j = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(i + 1));
      std::swap(cham_order[static_cast<std::size_t>(i)], cham_order[static_cast<std::size_t>(j)]);
    }
  }

  void append_champernowne_word() {
    std::int64_t idx = cham_idx;
    if (policy == Policy::ChampernowneShuffled) idx = cham_order[static_cast<std::size_t>(cham_idx)];
    // digits of idx in base k, most significant first, one digit per letter
    std::size_t start = cache.size();
    cache.resize(start + static_cast<std::size_t>(cham_len));
    std::int64_t v = idx;
    for (int p = cham_len - 1; p >= 0; --p) {
      cache[start + static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(v % k + 1);
      v /= k;
    }
    if (++cham_idx == cham_block) {
      cham_idx = 0;
      ++cham_len;
      if (cham_block <= (std::int64_t{1} << 56) / std::max(k, 1)) cham_block *= k;
      refill_cham_order();
    }
  }

  void generate_one() {
    switch (policy) {
      case Policy::Champernowne:
      case Policy::ChampernowneShuffled:
        append_champernowne_word();
        break;
      case Policy::Bernoulli: {
        double u = u01(rng);
        int sym = k;
        for (int i = 0; i < k; ++i)
          if (u < cumulative[static_cast<std::size_t>(i)]) {
            sym = i + 1;
            break;
          }
        cache.push_back(static_cast<std::uint8_t>(sym));
        break;
      }
      case Policy::HistoryBiased: {
        int prev = cache.empty() ? 1 : static_cast<int>(cache.back());
        double u = u01(rng);
        int sym;
        double uniform_mass = static_cast<double>(k) * p_min;
        if (u < uniform_mass) {
          sym = 1 + static_cast<int>(u / p_min);  // uniform branch
        } else {
          // preference branch: weight proportional to k - d, where d is the
          // cyclic distance from the previous symbol, so the last symbol is
          // favored and the conditional floor stays well above p_min
          double v = (u - uniform_mass) / (1.0 - uniform_mass);
          double total = static_cast<double>(k) * (k + 1) / 2.0;
          double acc = 0.0;
          int d = k - 1;
          for (int j = 0; j < k; ++j) {
            acc += static_cast<double>(k - j) / total;
            if (v < acc) {
              d = j;
              break;
            }
          }
          sym = (prev - 1 + d) % k + 1;
        }
        if (sym > k) sym = k;
        cache.push_back(static_cast<std::uint8_t>(sym));
        break;
      }
      case Policy::Explicit:
        throw StreamExhaustedError("explicit stream has no symbol at this position");
    }
  }

  void ensure(std::int64_t i) {
    if (finite_size && i >= *finite_size)
      throw StreamExhaustedError("stream exhausted at position " + std::to_string(i));
    while (static_cast<std::int64_t>(cache.size()) <= i) generate_one();
  }
};

SymbolStream::SymbolStream(std::shared_ptr<Source> src) : src_(std::move(src)) {}

SymbolStream SymbolStream::champernowne(int k) {
  if (k < 1) throw InvalidPolicyError("champernowne: alphabet size must be >= 1");
  if (k > 255) throw InvalidPolicyError("alphabet size above 255 is unsupported");
  auto src = std::make_shared<Source>();
  src->policy = Policy::Champernowne;
  src->k = k;
  src->cham_block = k;
  return SymbolStream(src);
}

SymbolStream SymbolStream::champernowne_shuffled(int k, std::uint64_t seed) {
  if (k < 1) throw InvalidPolicyError("champernowne: alphabet size must be >= 1");
  if (k > 255) throw InvalidPolicyError("alphabet size above 255 is unsupported");
  auto src = std::make_shared<Source>();
  src->policy = Policy::ChampernowneShuffled;
  src->k = k;
  src->seed = seed;
  src->cham_block = k;
  src->rng.seed(seed);
  src->refill_cham_order();
  return SymbolStream(src);
}

SymbolStream SymbolStream::bernoulli(std::vector<double> weights, std::uint64_t seed) {
  int k = static_cast<int>(weights.size());
  if (k < 1) throw InvalidPolicyError("bernoulli: need at least one weight");
  if (k > 255) throw InvalidPolicyError("alphabet size above 255 is unsupported");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidPolicyError("bernoulli weights must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw InvalidPolicyError("bernoulli weights must sum to 1");
  auto src = std::make_shared<Source>();
  src->policy = Policy::Bernoulli;
  src->k = k;
  src->seed = seed;
  src->weights = weights;
  src->cumulative.resize(weights.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    src->cumulative[i] = acc;
  }
  src->cumulative.back() = 1.0;
  src->rng.seed(seed);
  return SymbolStream(src);
}

SymbolStream SymbolStream::history_biased(int k, double p_min, std::uint64_t seed) {
  if (k < 1) throw InvalidPolicyError("history_biased: alphabet size must be >= 1");
  if (k > 255) throw InvalidPolicyError("alphabet size above 255 is unsupported");
  if (!(p_min > 0.0 && p_min <= 1.0 / k))
    throw InvalidPolicyError("history_biased: p_min must lie in (0, 1/k]");
  auto src = std::make_shared<Source>();
  src->policy = Policy::HistoryBiased;
  src->k = k;
  src->seed = seed;
  src->p_min = p_min;
  src->rng.seed(seed);
  return SymbolStream(src);
}

SymbolStream SymbolStream::explicit_word(SymbolWord w) {
  if (w.alphabet_size > 255) throw InvalidPolicyError("alphabet size above 255 is unsupported");
  auto src = std::make_shared<Source>();
  src->policy = Policy::Explicit;
  src->k = w.alphabet_size;
  src->finite_size = static_cast<std::int64_t>(w.symbols.size());
  src->cache.reserve(w.symbols.size());
  for (int s : w.symbols) src->cache.push_back(static_cast<std::uint8_t>(s));
  return SymbolStream(src);
}

int SymbolStream::alphabet() const { return src_->k; }

std::optional<std::int64_t> SymbolStream::size() const { return src_->finite_size; }

double SymbolStream::declared_p_min() const {
  switch (src_->policy) {
    case Policy::Bernoulli:
      return *std::min_element(src_->weights.begin(), src_->weights.end());
    case Policy::HistoryBiased:
      return src_->p_min;
    default:
      return 0.0;
  }
}

int SymbolStream::at(std::int64_t i) const {
  if (i < 0) throw IndexError("negative stream index");
  src_->ensure(i);
  return static_cast<int>(src_->cache[static_cast<std::size_t>(i)]);
}

int SymbolStream::next() {
  int s = at(cursor_);
  ++cursor_;
  return s;
}

int SymbolStream::peek() { return at(cursor_); }

void SymbolStream::seek(std::int64_t pos) {
  if (pos < 0) throw IndexError("negative stream position");
  cursor_ = pos;
}

std::string SymbolStream::spec_string() const {
  std::ostringstream os;
  switch (src_->policy) {
    case Policy::Champernowne:
      os << "champernowne";
      break;
    case Policy::ChampernowneShuffled:
      os << "champernowne_shuffled:" << src_->seed;
      break;
    case Policy::Bernoulli: {
      os << "bernoulli:";
      for (std::size_t i = 0; i < src_->weights.size(); ++i) {
        if (i) os << ',';
        os << src_->weights[i];
      }
      os << ':' << src_->seed;
      break;
    }
    case Policy::HistoryBiased:
      os << "biased:" << src_->p_min << ':' << src_->seed;
      break;
    case Policy::Explicit: {
      os << "explicit:";
      for (std::uint8_t s : src_->cache) os << static_cast<int>(s);
      break;
    }
  }
  return os.str();
}

SymbolStream champernowne_stream(int k) { return SymbolStream::champernowne(k); }

std::int64_t champernowne_block_end(int k, int max_len) {
  std::int64_t total = 0;
  std::int64_t block = 1;
  for (int len = 1; len <= max_len; ++len) {
    block *= k;
    total += static_cast<std::int64_t>(len) * block;
  }
  return total;
}

std::pair<bool, std::vector<SymbolWord>> is_disjunctive_prefix(const SymbolWord& w,
                                                               int max_len) {
  if (max_len < 1) throw std::invalid_argument("max_len must be >= 1");
  int k = w.alphabet_size;
  std::vector<SymbolWord> missing;
  for (int len = 1; len <= max_len; ++len) {
    // collect factors of this length
    std::set<std::vector<int>> seen;
    if (static_cast<int>(w.size()) >= len)
      for (std::size_t i = 0; i + static_cast<std::size_t>(len) <= w.size(); ++i)
        seen.insert(std::vector<int>(w.symbols.begin() + static_cast<std::ptrdiff_t>(i),
                                     w.symbols.begin() + static_cast<std::ptrdiff_t>(i) + len));
    // enumerate all k^len words
    std::vector<int> word(static_cast<std::size_t>(len), 1);
    while (true) {
      if (!seen.count(word)) missing.emplace_back(word, k);
      int pos = len - 1;
      while (pos >= 0 && word[static_cast<std::size_t>(pos)] == k) {
        word[static_cast<std::size_t>(pos)] = 1;
        --pos;
      }
      if (pos < 0) break;
      ++word[static_cast<std::size_t>(pos)];
    }
  }
  return {missing.empty(), missing};
}

DriverAudit audit_driver(const SymbolStream& stream, std::int64_t n, int history_depth) {
  if (history_depth < 0) throw std::invalid_argument("history depth must be >= 0");
  int k = stream.alphabet();
  double buckets_d = std::pow(static_cast<double>(k), history_depth + 1);
  if (static_cast<double>(n) < 10.0 * buckets_d)
    throw InsufficientSamplesError("audit needs n >= 10*k^(depth+1) samples");
  std::int64_t n_buckets = 1;
  for (int i = 0; i < history_depth; ++i) n_buckets *= k;

  std::vector<std::vector<std::int64_t>> counts(
      static_cast<std::size_t>(n_buckets), std::vector<std::int64_t>(static_cast<std::size_t>(k), 0));

  std::int64_t samples = 0;
  for (std::int64_t i = history_depth; i < n; ++i) {
    std::int64_t bucket = 0;
    for (int d = 0; d < history_depth; ++d)
      bucket = bucket * k + (stream.at(i - history_depth + d) - 1);
    ++counts[static_cast<std::size_t>(bucket)][static_cast<std::size_t>(stream.at(i) - 1)];
    ++samples;
  }

  DriverAudit audit;
  audit.alphabet = k;
  audit.history_depth = history_depth;
  audit.samples = samples;
  for (std::int64_t b = 0; b < n_buckets; ++b) {
    std::int64_t total = 0;
    for (int s = 0; s < k; ++s) total += counts[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)];
    if (total == 0) continue;
    std::vector<double> row(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
      row[static_cast<std::size_t>(s)] =
          static_cast<double>(counts[static_cast<std::size_t>(b)][static_cast<std::size_t>(s)]) /
          static_cast<double>(total);
      audit.min_conditional = std::min(audit.min_conditional, row[static_cast<std::size_t>(s)]);
    }
    audit.frequencies.push_back(std::move(row));
    audit.bucket_counts.push_back(total);
    audit.bucket_ids.push_back(b);
  }
  return audit;
}

}  // namespace ifslab
