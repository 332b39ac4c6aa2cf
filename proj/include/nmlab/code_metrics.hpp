#pragma once

#include <cstdint>
#include <vector>

#include "nmlab/bitvec.hpp"
#include "nmlab/rational.hpp"

namespace nmlab {

/// Set of distinct equal-length binary codewords.
struct BinaryCode {
  std::size_t blocklength = 0;
  std::vector<BitVector> codewords;

  BinaryCode() = default;
  BinaryCode(std::size_t blocklength, std::vector<BitVector> codewords);
};

/// Exact minimum pairwise relative Hamming distance (>= 2 codewords).
Rational min_distance(const BinaryCode& code);

struct RateDimension {
  double dimension;  // log2 |C|
  double rate;       // dimension / blocklength
};

RateDimension rate_and_dimension(const BinaryCode& code);

/// Cardinality sanity bound for relative distance delta > 1/2:
/// |C| <= 2 * floor(delta / (2*delta - 1)).
struct PlotkinReport {
  bool applicable = false;  // delta > 1/2
  bool pass = false;
  Rational delta;
  BigInt bound;
  std::size_t code_size = 0;
  BigInt margin;  // bound - |C|; negative means violated
};

PlotkinReport plotkin_check(const BinaryCode& code);

/// Formula-only variant for a claimed (delta, |C|) pair; lets tests inject
/// violating combinations that no actual code can produce.
PlotkinReport plotkin_check(const Rational& delta, std::size_t code_size);

}  // namespace nmlab
