#include <doctest.h>

#include <random>

#include "nmlab/nm_analysis.hpp"
#include "support/oracles.hpp"

using namespace nmlab;

namespace {

EvaluationMatrix constant_zero_matrix(unsigned d, unsigned k) {
  EvaluationMatrix m;
  m.n = k;
  m.d = d;
  m.k = k;
  m.rows.assign(std::size_t{1} << d, BitVector(std::size_t{1} << k));
  m.source = FlatSource::full(k);
  m.validate();
  return m;
}

}  // namespace

TEST_CASE("strong_error fixed values") {
  CHECK(strong_error(constant_zero_matrix(3, 3)) == Rational(1, 2));

  // every row exactly balanced
  EvaluationMatrix balanced = constant_zero_matrix(2, 2);
  for (auto& row : balanced.rows) {
    row.set(0, true);
    row.set(1, true);
  }
  CHECK(strong_error(balanced) == Rational(0));

  auto ip = evaluation_matrix(ExtractorTable::inner_product(2), FlatSource::full(2));
  CHECK(strong_error(ip) == Rational(1, 8));
}

TEST_CASE("nm_error_exact fixed values") {
  SUBCASE("constant-zero matrix") {
    const auto result = nm_error_exact(constant_zero_matrix(2, 2), 1);
    CHECK(result.error == Rational(1, 2));
    for (const auto& tv : result.per_seed_tv) CHECK(tv == Rational(1, 2));
  }

  SUBCASE("output equals the first source bit") {
    // source order 00,01,10,11; every seed reveals x's top bit
    EvaluationMatrix m = constant_zero_matrix(1, 2);
    for (auto& row : m.rows) {
      row.set(2, true);
      row.set(3, true);
    }
    const auto result = nm_error_exact(m, 1);
    CHECK(result.error == Rational(1, 2));
  }

  SUBCASE("inner product, n=d=2, full source") {
    auto ip = evaluation_matrix(ExtractorTable::inner_product(2), FlatSource::full(2));
    const auto result = nm_error_exact(ip, 1);
    CHECK(result.error == Rational(1, 8));
    CHECK(result.per_seed_tv[0] == Rational(1, 2));
    CHECK(result.per_seed_tv[1] == Rational(0));
    CHECK(result.per_seed_tv[2] == Rational(0));
    CHECK(result.per_seed_tv[3] == Rational(0));
  }

  SUBCASE("rejects t = 0, one-point seed spaces and blown budgets") {
    auto ip = evaluation_matrix(ExtractorTable::inner_product(2), FlatSource::full(2));
    CHECK_THROWS_AS(nm_error_exact(ip, 0), std::invalid_argument);
    EvaluationMatrix tiny;
    tiny.n = 1;
    tiny.d = 0;
    tiny.k = 1;
    tiny.rows = {BitVector(2)};
    CHECK_THROWS_AS(nm_error_exact(tiny, 1), std::invalid_argument);
    CHECK_THROWS_WITH_AS(nm_error_exact(ip, 1, 1.0), doctest::Contains("budget"),
                         std::invalid_argument);
  }
}

TEST_CASE("nm error properties on random matrices") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 30; ++round) {
    const auto m = testsupport::random_matrix(3, 3, rng);
    const auto r1 = nm_error_exact(m, 1);
    const auto r2 = nm_error_exact(m, 2);

    // extra adversary can repeat a previous choice
    CHECK(r2.error >= r1.error);

    const Rational strong = strong_error(m);
    const std::size_t K = m.element_count();
    for (std::size_t s = 0; s < m.rows.size(); ++s) {
      const Rational bias =
          abs(Rational(m.rows[s].weight(), K) - Rational(1, 2));
      CHECK(r1.per_seed_tv[s] >= bias);
      CHECK(r1.per_seed_tv[s] <= Rational(1, 2));
    }
    CHECK(r1.error <= 1);
    CHECK(r1.error >= strong);

    // the witness reproduces the reported error exactly
    CHECK(nm_error_of_adversary(m, r1.witness) == r1.error);
    CHECK(nm_error_of_adversary(m, r2.witness) == r2.error);
    CHECK(r1.witness.fixed_point_free());
  }
}

TEST_CASE("worst_source_nm_error") {
  SUBCASE("k = n collapses to the unique full source") {
    auto table = ExtractorTable::inner_product(2);
    const auto full = nm_error_exact(evaluation_matrix(table, FlatSource::full(2)), 1);
    const auto worst =
        worst_source_nm_error(table, 2, 1, SourceSearchMode::exhaustive, 10);
    CHECK(worst.error == full.error);
    CHECK(worst.sources_examined == 1);
  }

  SUBCASE("constant-zero table is maximally bad for any k") {
    auto table = ExtractorTable::from_function(3, 2, [](auto, auto) { return false; });
    const auto worst =
        worst_source_nm_error(table, 1, 1, SourceSearchMode::exhaustive, 100);
    CHECK(worst.error == Rational(1, 2));
  }

  SUBCASE("n=3, k=1: exhaustive maximum matches direct enumeration") {
    auto table = ExtractorTable::inner_product(3);
    const auto worst =
        worst_source_nm_error(table, 1, 1, SourceSearchMode::exhaustive, 100);
    CHECK(worst.sources_examined == 28);

    Rational expected = -1;
    for (std::uint64_t a = 0; a < 8; ++a) {
      for (std::uint64_t b = a + 1; b < 8; ++b) {
        FlatSource source(3, 1, {a, b});
        expected = std::max(expected,
                            nm_error_exact(evaluation_matrix(table, source), 1).error);
      }
    }
    CHECK(worst.error == expected);
    CHECK(nm_error_exact(evaluation_matrix(table, worst.source), 1).error == worst.error);
  }

  SUBCASE("exhaustive budget is enforced") {
    auto table = ExtractorTable::inner_product(3);
    CHECK_THROWS_WITH_AS(
        worst_source_nm_error(table, 1, 1, SourceSearchMode::exhaustive, 10),
        doctest::Contains("budget"), std::invalid_argument);
  }

  SUBCASE("randomized mode is deterministic and lower-bounds the maximum") {
    auto table = ExtractorTable::inner_product(3);
    const auto a = worst_source_nm_error(table, 1, 1, SourceSearchMode::randomized, 12, 99);
    const auto b = worst_source_nm_error(table, 1, 1, SourceSearchMode::randomized, 12, 99);
    CHECK(a.error == b.error);
    CHECK(a.source.elements == b.source.elements);
    const auto exact =
        worst_source_nm_error(table, 1, 1, SourceSearchMode::exhaustive, 100);
    CHECK(a.error <= exact.error);
  }
}
