#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace nmlab {

// Exact arithmetic used by every correctness-bearing path. Probabilities,
// distances and advantages are Rational; counting arguments use BigInt.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p/q" (or a plain integer "p"). The denominator must be positive.
Rational parse_rational(const std::string& text);

/// Renders as "p/q" with the denominator always explicit ("3" -> "3/1").
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

/// Exact binomial coefficient; 0 when k > n.
BigInt binomial(std::uint64_t n, std::uint64_t k);

BigInt pow_bigint(const BigInt& base, std::uint64_t exponent);

/// floor(a/b) for positive b (works for negative a).
BigInt floor_div(const BigInt& a, const BigInt& b);

/// ceil(a/b) for positive b.
BigInt ceil_div(const BigInt& a, const BigInt& b);

/// log2 of a positive BigInt with a rigorous two-sided error below 1e-12.
double log2_bigint(const BigInt& value);

}  // namespace nmlab
