#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "nmlab/code_metrics.hpp"
#include "nmlab/core.hpp"

using namespace nmlab;

namespace {

BitVector bits(const std::string& s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i, true);
  }
  return v;
}

}  // namespace

TEST_CASE("min_distance fixed values") {
  CHECK(min_distance(BinaryCode(4, {bits("0000"), bits("1111")})) == Rational(1));

  // all nonzero linear forms differ on exactly half the points
  auto m = evaluation_matrix(ExtractorTable::inner_product(3), FlatSource::full(3));
  std::vector<BitVector> rows(m.rows.begin() + 1, m.rows.end());
  CHECK(min_distance(BinaryCode(8, rows)) == Rational(1, 2));

  CHECK_THROWS_AS(min_distance(BinaryCode(3, {bits("000")})), std::invalid_argument);
}

TEST_CASE("min_distance is invariant under permutation and translation") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 50; ++round) {
    const std::size_t len = 6 + rng() % 10;
    std::vector<BitVector> words;
    while (words.size() < 5) {
      BitVector w(len);
      for (std::size_t i = 0; i < len; ++i) w.set(i, rng() & 1);
      if (std::find(words.begin(), words.end(), w) == words.end()) {
        words.push_back(std::move(w));
      }
    }
    const Rational base = min_distance(BinaryCode(len, words));

    auto shuffled = words;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(min_distance(BinaryCode(len, shuffled)) == base);

    BitVector mask(len);
    for (std::size_t i = 0; i < len; ++i) mask.set(i, rng() & 1);
    std::vector<BitVector> translated;
    for (const auto& w : words) translated.push_back(w ^ mask);
    CHECK(min_distance(BinaryCode(len, translated)) == base);
  }
}

TEST_CASE("rate_and_dimension fixed values") {
  // |C| = 2^(d-1) over blocklength 2^k gives rate (d-1)/2^k
  const unsigned d = 5, k = 3;
  std::vector<BitVector> words;
  for (std::size_t i = 0; i < (std::size_t{1} << (d - 1)); ++i) {
    words.push_back(BitVector::from_word(i, std::size_t{1} << k));
  }
  const auto rd = rate_and_dimension(BinaryCode(std::size_t{1} << k, words));
  CHECK(rd.dimension == doctest::Approx(d - 1).epsilon(0));
  CHECK(rd.rate == doctest::Approx((d - 1.0) / (1 << k)).epsilon(0));

  const auto single = rate_and_dimension(BinaryCode(4, {bits("0000")}));
  CHECK(single.dimension == 0.0);
  CHECK(single.rate == 0.0);

  std::vector<BitVector> six;
  for (std::size_t i = 0; i < 6; ++i) six.push_back(BitVector::from_word(i, 4));
  const auto rd6 = rate_and_dimension(BinaryCode(4, six));
  CHECK(rd6.dimension == doctest::Approx(std::log2(6.0)));
  CHECK(rd6.rate == doctest::Approx(std::log2(6.0) / 4));

  CHECK_THROWS_AS(rate_and_dimension(BinaryCode(4, {})), std::invalid_argument);
}

TEST_CASE("plotkin_check") {
  SUBCASE("repetition code passes with zero margin") {
    const auto report = plotkin_check(BinaryCode(3, {bits("000"), bits("111")}));
    CHECK(report.applicable);
    CHECK(report.bound == 2);
    CHECK(report.pass);
    CHECK(report.margin == 0);
  }

  SUBCASE("delta = 1/2 exactly is inapplicable") {
    const auto report = plotkin_check(BinaryCode(4, {bits("0000"), bits("1100")}));
    CHECK_FALSE(report.applicable);
  }

  SUBCASE("injected violation fails with the margin reported") {
    const auto report = plotkin_check(Rational(3, 5), 7);
    CHECK(report.applicable);
    CHECK(report.bound == 6);  // 2*floor((3/5)/(1/5))
    CHECK_FALSE(report.pass);
    CHECK(report.margin == -1);
  }

  SUBCASE("duplicate codewords are rejected at construction") {
    CHECK_THROWS_AS(BinaryCode(3, {bits("010"), bits("010")}), std::invalid_argument);
  }
}
