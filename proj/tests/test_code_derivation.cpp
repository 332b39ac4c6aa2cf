#include <doctest.h>

#include <random>

#include "nmlab/code_derivation.hpp"
#include "nmlab/code_metrics.hpp"
#include "nmlab/io.hpp"
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

BitVector bits(const std::string& s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') v.set(i, true);
  }
  return v;
}

}  // namespace

TEST_CASE("closeness threshold is the exact strict cutoff") {
  // (1/2 - 2/16) * 16 = 6: qualifying weights are 0..5
  CHECK(closeness_threshold(16, Rational(1, 16)) == 5);
  // (1/2 - 2/8) * 16 = 4: qualifying weights are 0..3
  CHECK(closeness_threshold(16, Rational(1, 8)) == 3);
  // vacuous at epsilon >= 1/4
  CHECK(closeness_threshold(16, Rational(1, 4)) == -1);
  CHECK(closeness_threshold(16, Rational(1, 3)) == -1);
  // non-integer boundary: (1/2 - 2/12)*9 = 3 -> weights 0..2
  CHECK(closeness_threshold(9, Rational(1, 12)) == 2);
}

TEST_CASE("derive_pairwise on the constant-zero matrix") {
  const auto m = constant_zero_matrix(3, 2);
  const auto result = derive_pairwise(m, Rational(1, 8));
  REQUIRE_FALSE(result.is_code());
  const auto& cert = result.adversary();
  CHECK(cert.bad_seed_groups.size() == 2);  // D/4 pairs
  CHECK(cert.acceptance_real == Rational(3, 4));
  CHECK(cert.advantage == Rational(1, 4));
  CHECK(cert.advantage > Rational(1, 8));

  const auto report = verify_certificate(m, result, Rational(1, 8), 1);
  CHECK(report.pass);
  CHECK(report.recomputed_advantage == Rational(1, 4));
}

TEST_CASE("derive_pairwise on Hadamard-type rows returns the code") {
  for (unsigned d = 2; d <= 4; ++d) {
    const auto m =
        evaluation_matrix(ExtractorTable::inner_product(d), FlatSource::full(d));
    const auto result = derive_pairwise(m, Rational(1, 8));
    REQUIRE(result.is_code());
    const auto& code = result.code();
    CHECK(code.seed_subset.size() == (std::size_t{1} << (d - 1)));

    const auto report = verify_certificate(m, result, Rational(1, 8), 1);
    CHECK(report.pass);
    CHECK(report.recomputed_min_distance == Rational(1, 2));

    BinaryCode bc(m.element_count(), code.codewords);
    CHECK(min_distance(bc) == Rational(1, 2));
  }
}

TEST_CASE("derive_pairwise with epsilon = 1/4 returns the code unconditionally") {
  const auto m = constant_zero_matrix(3, 2);
  const auto result = derive_pairwise(m, Rational(1, 4));
  REQUIRE(result.is_code());
  CHECK(result.code().seed_subset.size() == 4);
  CHECK(verify_certificate(m, result, Rational(1, 4), 1).pass);
}

TEST_CASE("derive_pairwise input validation") {
  const auto m = constant_zero_matrix(1, 2);
  CHECK_THROWS_AS(derive_pairwise(m, Rational(1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(derive_pairwise(constant_zero_matrix(3, 2), Rational(0)),
                  std::invalid_argument);
}

TEST_CASE("pairwise dichotomy is sound and consistent with the exact error") {
  std::mt19937_64 rng(23);
  const Rational eps(1, 8);
  for (int round = 0; round < 100; ++round) {
    const auto m = testsupport::random_matrix(3, 3, rng);
    const auto result = derive_pairwise(m, eps);
    CHECK(verify_certificate(m, result, eps, 1).pass);

    const Rational error = nm_error_exact(m, 1).error;
    if (error <= eps) CHECK(result.is_code());
    if (!result.is_code()) CHECK(error > eps);
  }
}

TEST_CASE("derive_pairwise is deterministic") {
  std::mt19937_64 rng(29);
  const auto m = testsupport::random_matrix(4, 4, rng);
  const auto a = derive_pairwise(m, Rational(1, 16));
  const auto b = derive_pairwise(m, Rational(1, 16));
  CHECK(certificate_to_json(a, Rational(1, 16), 1) ==
        certificate_to_json(b, Rational(1, 16), 1));
}

TEST_CASE("tampered certificates are rejected with the violation named") {
  const auto m = constant_zero_matrix(3, 2);
  auto result = derive_pairwise(m, Rational(1, 8));
  REQUIRE_FALSE(result.is_code());

  SUBCASE("fixed point") {
    auto& cert = std::get<AdversaryCertificate>(result.outcome);
    cert.adversaries.maps[0][3] = 3;
    const auto report = verify_certificate(m, result, Rational(1, 8), 1);
    CHECK_FALSE(report.pass);
    CHECK(report.violation == "fixed point at seed 3");
  }

  SUBCASE("wrong acceptance probability") {
    auto& cert = std::get<AdversaryCertificate>(result.outcome);
    cert.acceptance_real += Rational(1, 100);
    const auto report = verify_certificate(m, result, Rational(1, 8), 1);
    CHECK_FALSE(report.pass);
    CHECK(report.violation == "acceptance_real mismatch");
  }

  SUBCASE("overlapping groups") {
    auto& cert = std::get<AdversaryCertificate>(result.outcome);
    cert.bad_seed_groups[1] = cert.bad_seed_groups[0];
    const auto report = verify_certificate(m, result, Rational(1, 8), 1);
    CHECK_FALSE(report.pass);
    CHECK(report.violation == "bad-seed groups are not disjoint");
  }
}

TEST_CASE("derive_combinations on the inner-product matrix, t=2") {
  const auto m =
      evaluation_matrix(ExtractorTable::inner_product(2), FlatSource::full(2));
  const auto result = derive_combinations(m, Rational(1, 16), 2);
  REQUIRE_FALSE(result.is_code());
  const auto& cert = result.adversary();
  REQUIRE(cert.bad_seed_groups.size() == 1);
  CHECK(cert.bad_seed_groups[0] == std::vector<std::uint32_t>{1, 2, 3});
  CHECK(cert.acceptance_real == Rational(7, 8));
  CHECK(cert.advantage == Rational(3, 8));
  CHECK(verify_certificate(m, result, Rational(1, 16), 2).pass);
}

TEST_CASE("derive_combinations with epsilon = 1/4 returns the combination code") {
  std::mt19937_64 rng(31);
  const auto m = testsupport::random_matrix(3, 3, rng);
  const auto result = derive_combinations(m, Rational(1, 4), 2);
  REQUIRE(result.is_code());
  const auto& code = result.code();
  CHECK(code.seed_subset.size() == m.seed_count());
  // empty sum plus one codeword per kept seed
  CHECK(code.codewords.size() == m.seed_count() + 1);
  CHECK(code.codewords[0].weight() == 0);
  CHECK(verify_certificate(m, result, Rational(1, 4), 2).pass);
}

TEST_CASE("derive_combinations finds singleton groups when only a biased row qualifies") {
  EvaluationMatrix m;
  m.n = 3;
  m.d = 1;
  m.k = 3;
  m.rows = {bits("10000000"), bits("11110000")};
  m.source = FlatSource::full(3);
  m.validate();
  const Rational eps(1, 8);  // close means weight <= 1
  const auto result = derive_combinations(m, eps, 2);
  REQUIRE_FALSE(result.is_code());
  const auto& cert = result.adversary();
  REQUIRE(cert.bad_seed_groups.size() == 1);
  CHECK(cert.bad_seed_groups[0] == std::vector<std::uint32_t>{0});
  // acceptance: seed 0 accepts iff its bit is 0 (7/8); seed 1 contributes 1/2
  CHECK(cert.acceptance_real == Rational(7, 16) + Rational(1, 4));
  CHECK(cert.advantage == Rational(3, 16));
  CHECK(verify_certificate(m, result, eps, 2).pass);
}

TEST_CASE("combination dichotomy verifies on random matrices") {
  std::mt19937_64 rng(37);
  for (unsigned t : {2u, 3u}) {
    for (int round = 0; round < 40; ++round) {
      const auto m = testsupport::random_matrix(3, 5, rng);  // D=8, K=32
      const auto result = derive_combinations(m, Rational(1, 32), t);
      CHECK(verify_certificate(m, result, Rational(1, 32), t).pass);
      if (!result.is_code()) {
        // certificate advantage lower-bounds the exact error
        CHECK(nm_error_exact(m, t).error > Rational(1, 32));
      }
    }
  }
}

TEST_CASE("combination code pair differences re-derive from row sums") {
  std::mt19937_64 rng(41);
  const Rational eps(1, 8);
  for (int round = 0; round < 20; ++round) {
    const auto m = testsupport::random_matrix(3, 4, rng);
    const auto result = derive_combinations(m, eps, 3);
    if (!result.is_code()) continue;
    const auto& code = result.code();
    const std::int64_t max_close = closeness_threshold(m.element_count(), eps);
    for (std::size_t i = 0; i < code.codewords.size(); ++i) {
      for (std::size_t j = i + 1; j < code.codewords.size(); ++j) {
        const auto diff = code.codewords[i] ^ code.codewords[j];
        CHECK(static_cast<std::int64_t>(diff.weight()) > max_close);
      }
    }
  }
}

TEST_CASE("derive_combinations input validation") {
  const auto m = constant_zero_matrix(2, 2);
  CHECK_THROWS_AS(derive_combinations(m, Rational(1, 8), 1), std::invalid_argument);
  CHECK_THROWS_WITH_AS(derive_combinations(m, Rational(1, 8), 3, 2),
                       doctest::Contains("budget"), std::invalid_argument);
}
