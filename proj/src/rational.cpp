#include "nmlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace nmlab {

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(text));
    }
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    if (den <= 0) {
      throw std::invalid_argument("parse_rational: denominator must be positive in '" +
                                  text + "'");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
  }
}

std::string rational_to_string(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

double rational_to_double(const Rational& value) {
  return value.convert_to<double>();
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

BigInt pow_bigint(const BigInt& base, std::uint64_t exponent) {
  BigInt r = 1;
  BigInt b = base;
  std::uint64_t e = exponent;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  BigInt q = a / b;  // truncates toward zero
  if (a % b != 0 && a < 0) --q;
  return q;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: divisor must be positive");
  BigInt q = a / b;
  if (a % b != 0 && a > 0) ++q;
  return q;
}

double log2_bigint(const BigInt& value) {
  if (value <= 0) throw std::invalid_argument("log2_bigint: value must be positive");
  const std::size_t bits = msb(value);  // floor(log2(value))
  if (bits <= 62) {
    return std::log2(value.convert_to<double>());
  }
  // Top 64 bits give value = top * 2^(bits-63) * (1 + delta), 0 <= delta < 2^-63.
  const BigInt top = value >> (bits - 63);
  const double mant = top.convert_to<double>();
  return std::log2(mant) + static_cast<double>(bits - 63);
}

}  // namespace nmlab
