#include "nmlab/core.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_set>

namespace nmlab {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t length) {
  return (length + kWordBits - 1) / kWordBits;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;  // uppercase is non-canonical on purpose
}

constexpr char kHexDigits[] = "0123456789abcdef";

}  // namespace

BitVector::BitVector(std::size_t length)
    : length_(length), words_(word_count(length), 0) {}

BitVector BitVector::from_word(std::uint64_t value, std::size_t length) {
  if (length > kWordBits) throw std::invalid_argument("from_word: length > 64");
  BitVector v(length);
  if (length > 0) {
    std::uint64_t mask =
        length == kWordBits ? ~std::uint64_t{0} : ((std::uint64_t{1} << length) - 1);
    v.words_[0] = value & mask;
  }
  return v;
}

BitVector BitVector::from_hex(const std::string& hex, std::size_t length) {
  const std::size_t want = (length + 3) / 4;
  if (hex.size() != want) {
    throw std::invalid_argument("row-length mismatch: expected " +
                                std::to_string(want) + " hex digits for " +
                                std::to_string(length) + " bits, got " +
                                std::to_string(hex.size()));
  }
  BitVector v(length);
  // hex encodes an integer; integer bit i = vector bit i (little-endian).
  for (std::size_t j = 0; j < hex.size(); ++j) {
    const int nibble = hex_digit(hex[hex.size() - 1 - j]);
    if (nibble < 0) {
      throw std::invalid_argument(std::string("non-canonical hex: digit '") +
                                  hex[hex.size() - 1 - j] + "'");
    }
    for (int b = 0; b < 4; ++b) {
      if (!(nibble & (1 << b))) continue;
      const std::size_t i = 4 * j + static_cast<std::size_t>(b);
      if (i >= length) {
        throw std::invalid_argument("non-canonical hex: padding bit set");
      }
      v.set(i, true);
    }
  }
  return v;
}

std::string BitVector::to_hex() const {
  const std::size_t digits = (length_ + 3) / 4;
  std::string out(digits, '0');
  for (std::size_t j = 0; j < digits; ++j) {
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      const std::size_t i = 4 * j + static_cast<std::size_t>(b);
      if (i < length_ && get(i)) nibble |= 1 << b;
    }
    out[digits - 1 - j] = kHexDigits[nibble];
  }
  return out;
}

bool BitVector::get(std::size_t i) const {
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVector::set(std::size_t i, bool value) {
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

std::size_t BitVector::weight() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

BitVector BitVector::operator^(const BitVector& other) const {
  if (length_ != other.length_) {
    throw std::invalid_argument("BitVector xor: length mismatch");
  }
  BitVector out(length_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    out.words_[i] = words_[i] ^ other.words_[i];
  }
  return out;
}

std::size_t xor_weight(const BitVector& a, const BitVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("xor_weight: length mismatch");
  }
  std::size_t total = 0;
  const auto& wa = a.words();
  const auto& wb = b.words();
  for (std::size_t i = 0; i < wa.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return total;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const {
  std::size_t h = v.size();
  for (std::uint64_t w : v.words()) {
    h ^= static_cast<std::size_t>(w) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

ExtractorTable::ExtractorTable(unsigned n_, unsigned d_, std::vector<BitVector> rows_)
    : n(n_), d(d_), rows(std::move(rows_)) {
  if (n > kMaxInputBits || d > kMaxSeedBits) {
    throw std::invalid_argument("ExtractorTable: materialization capped at n <= 16, d <= 12");
  }
  if (rows.size() != seed_count()) {
    throw std::invalid_argument("ExtractorTable: need one row per seed");
  }
  for (const auto& row : rows) {
    if (row.size() != input_count()) {
      throw std::invalid_argument("ExtractorTable: row length must be 2^n");
    }
  }
}

ExtractorTable ExtractorTable::from_function(
    unsigned n, unsigned d,
    const std::function<bool(std::uint64_t, std::uint64_t)>& f) {
  if (n > kMaxInputBits || d > kMaxSeedBits) {
    throw std::invalid_argument("ExtractorTable: materialization capped at n <= 16, d <= 12");
  }
  const std::uint64_t X = std::uint64_t{1} << n;
  const std::uint64_t S = std::uint64_t{1} << d;
  std::vector<BitVector> rows;
  rows.reserve(S);
  for (std::uint64_t s = 0; s < S; ++s) {
    BitVector row(X);
    for (std::uint64_t x = 0; x < X; ++x) {
      if (f(x, s)) row.set(x, true);
    }
    rows.push_back(std::move(row));
  }
  return ExtractorTable(n, d, std::move(rows));
}

ExtractorTable ExtractorTable::inner_product(unsigned n) {
  return from_function(n, n, [](std::uint64_t x, std::uint64_t s) {
    return (std::popcount(x & s) & 1) != 0;
  });
}

bool ExtractorTable::bit(std::uint64_t x, std::uint64_t s) const {
  if (x >= input_count() || s >= seed_count()) {
    throw std::out_of_range("ExtractorTable::bit: index out of range");
  }
  return rows[s].get(x);
}

FlatSource::FlatSource(unsigned n_, unsigned k_, std::vector<std::uint64_t> elements_)
    : n(n_), k(k_), elements(std::move(elements_)) {
  if (k > n) throw std::invalid_argument("FlatSource: k > n");
  if (n > 63 && n != 64) throw std::invalid_argument("FlatSource: n too large");
  if (elements.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("FlatSource: need exactly 2^k elements");
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t e : elements) {
    if (n < 64 && e >= (std::uint64_t{1} << n)) {
      throw std::invalid_argument("FlatSource: element out of range");
    }
    if (!seen.insert(e).second) {
      throw std::invalid_argument("duplicate source elements");
    }
  }
}

FlatSource FlatSource::prefix(unsigned n, unsigned k) {
  std::vector<std::uint64_t> elements(std::size_t{1} << k);
  for (std::size_t i = 0; i < elements.size(); ++i) elements[i] = i;
  return FlatSource(n, k, std::move(elements));
}

FlatSource FlatSource::full(unsigned n) { return prefix(n, n); }

void EvaluationMatrix::validate() const {
  if (rows.empty()) throw std::invalid_argument("EvaluationMatrix: no rows");
  if (rows.size() != (std::size_t{1} << d)) {
    throw std::invalid_argument("EvaluationMatrix: row count must be 2^d");
  }
  const std::size_t K = std::size_t{1} << k;
  for (const auto& row : rows) {
    if (row.size() != K) {
      throw std::invalid_argument("EvaluationMatrix: row length must be 2^k");
    }
  }
  if (source) {
    if (source->n != n || source->k != k || source->size() != K) {
      throw std::invalid_argument("EvaluationMatrix: source does not match params");
    }
  }
}

EvaluationMatrix evaluation_matrix(const ExtractorTable& table,
                                   const FlatSource& source) {
  if (source.n != table.n) {
    throw std::invalid_argument("evaluation_matrix: dimension mismatch (source.n != table.n)");
  }
  for (std::uint64_t e : source.elements) {
    if (e >= table.input_count()) {
      throw std::invalid_argument("evaluation_matrix: source element out of range");
    }
  }
  EvaluationMatrix m;
  m.n = table.n;
  m.d = table.d;
  m.k = source.k;
  m.rows.reserve(table.rows.size());
  for (std::uint64_t s = 0; s < table.seed_count(); ++s) {
    BitVector row(source.size());
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (table.rows[s].get(source.elements[i])) row.set(i, true);
    }
    m.rows.push_back(std::move(row));
  }
  m.source = source;
  m.validate();
  return m;
}

Rational rel_hamming_distance(const BitVector& u, const BitVector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("rel_hamming_distance: length mismatch");
  }
  if (u.size() == 0) {
    throw std::invalid_argument("rel_hamming_distance: zero length");
  }
  return Rational(xor_weight(u, v), u.size());
}

Rational tv_distance(std::span<const Rational> p, std::span<const Rational> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("tv_distance: mismatched outcome spaces");
  }
  Rational sp = 0, sq = 0;
  for (const auto& x : p) sp += x;
  for (const auto& x : q) sq += x;
  if (sp != 1 || sq != 1) {
    throw std::invalid_argument("tv_distance: masses must sum to 1");
  }
  Rational l1 = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    l1 += p[i] >= q[i] ? p[i] - q[i] : q[i] - p[i];
  }
  return l1 / 2;
}

}  // namespace nmlab
