#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nmlab/bitvec.hpp"
#include "nmlab/rational.hpp"

namespace nmlab {

/// Full truth table of a candidate extractor on n-bit inputs and d-bit
/// seeds, stored row-per-seed. Materialization is capped at n <= 16,
/// d <= 12; larger analyses must supply an EvaluationMatrix directly.
struct ExtractorTable {
  static constexpr unsigned kMaxInputBits = 16;
  static constexpr unsigned kMaxSeedBits = 12;

  unsigned n = 0;
  unsigned d = 0;
  std::vector<BitVector> rows;  // 2^d rows, each 2^n bits; rows[s].get(x)

  ExtractorTable() = default;
  ExtractorTable(unsigned n, unsigned d, std::vector<BitVector> rows);

  static ExtractorTable from_function(
      unsigned n, unsigned d,
      const std::function<bool(std::uint64_t x, std::uint64_t s)>& f);

  /// Inner product <x,s> over GF(2); requires d == n.
  static ExtractorTable inner_product(unsigned n);

  bool bit(std::uint64_t x, std::uint64_t s) const;
  std::uint64_t input_count() const { return std::uint64_t{1} << n; }
  std::uint64_t seed_count() const { return std::uint64_t{1} << d; }
};

/// Uniform distribution over 2^k distinct n-bit strings. Element order is
/// significant: it fixes codeword coordinate order.
struct FlatSource {
  unsigned n = 0;
  unsigned k = 0;
  std::vector<std::uint64_t> elements;  // exactly 2^k, distinct, < 2^n

  FlatSource() = default;
  FlatSource(unsigned n, unsigned k, std::vector<std::uint64_t> elements);

  /// Elements 0..2^k-1 in ascending order.
  static FlatSource prefix(unsigned n, unsigned k);
  /// Full cube: k = n.
  static FlatSource full(unsigned n);

  std::size_t size() const { return elements.size(); }
};

/// Rows are per-seed evaluation vectors over a fixed flat source:
/// rows[s].get(i) is the extractor output on (elements[i], seed s).
struct EvaluationMatrix {
  unsigned n = 0;
  unsigned d = 0;
  unsigned k = 0;
  std::vector<BitVector> rows;  // 2^d rows of 2^k bits
  std::optional<FlatSource> source;

  std::size_t seed_count() const { return rows.size(); }
  std::size_t element_count() const {
    return rows.empty() ? 0 : rows.front().size();
  }

  void validate() const;  // throws std::invalid_argument on bad shape
};

EvaluationMatrix evaluation_matrix(const ExtractorTable& table,
                                   const FlatSource& source);

/// Fraction of positions where u and v differ; exact, in [0,1].
Rational rel_hamming_distance(const BitVector& u, const BitVector& v);

/// Total variation distance between two distributions on the same finite
/// outcome space (half the l1 distance). Masses must each sum to 1.
Rational tv_distance(std::span<const Rational> p, std::span<const Rational> q);

}  // namespace nmlab
