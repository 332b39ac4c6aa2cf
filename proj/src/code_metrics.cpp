#include "nmlab/code_metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace nmlab {

BinaryCode::BinaryCode(std::size_t blocklength_, std::vector<BitVector> codewords_)
    : blocklength(blocklength_), codewords(std::move(codewords_)) {
  if (blocklength == 0) throw std::invalid_argument("BinaryCode: zero blocklength");
  std::unordered_set<BitVector, BitVectorHash> seen;
  for (const auto& c : codewords) {
    if (c.size() != blocklength) {
      throw std::invalid_argument("BinaryCode: codeword length mismatch");
    }
    if (!seen.insert(c).second) {
      throw std::invalid_argument("BinaryCode: duplicate codeword");
    }
  }
}

Rational min_distance(const BinaryCode& code) {
  if (code.codewords.size() < 2) {
    throw std::invalid_argument("min_distance: need at least 2 codewords");
  }
  std::size_t best = code.blocklength + 1;
  for (std::size_t i = 0; i + 1 < code.codewords.size(); ++i) {
    for (std::size_t j = i + 1; j < code.codewords.size(); ++j) {
      best = std::min(best, xor_weight(code.codewords[i], code.codewords[j]));
    }
  }
  return Rational(best, code.blocklength);
}

RateDimension rate_and_dimension(const BinaryCode& code) {
  if (code.codewords.empty()) {
    throw std::invalid_argument("rate_and_dimension: empty code");
  }
  const std::size_t size = code.codewords.size();
  double dimension;
  if ((size & (size - 1)) == 0) {
    // power of two: log2 is exact
    dimension = static_cast<double>(std::bit_width(size) - 1);
  } else {
    dimension = std::log2(static_cast<double>(size));
  }
  return RateDimension{dimension, dimension / static_cast<double>(code.blocklength)};
}

PlotkinReport plotkin_check(const BinaryCode& code) {
  return plotkin_check(min_distance(code), code.codewords.size());
}

PlotkinReport plotkin_check(const Rational& delta, std::size_t code_size) {
  PlotkinReport report;
  report.delta = delta;
  report.code_size = code_size;
  if (!(delta > Rational(1, 2))) {
    report.applicable = false;  // bound only bites past 1/2; signaled, not failed
    return report;
  }
  report.applicable = true;
  const Rational ratio = delta / (2 * delta - 1);
  report.bound = 2 * floor_div(numerator(ratio), denominator(ratio));
  report.margin = report.bound - code_size;
  report.pass = report.margin >= 0;
  return report;
}

}  // namespace nmlab
