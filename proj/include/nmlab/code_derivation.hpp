#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nmlab/core.hpp"
#include "nmlab/nm_analysis.hpp"

namespace nmlab {

enum class CodeConstruction { pairwise, gf2_combinations };

/// Seed subset whose evaluation vectors (or their small GF(2) combinations)
/// form a code of relative distance >= claimed_distance.
struct DerivedCode {
  CodeConstruction construction = CodeConstruction::pairwise;
  unsigned t = 1;
  std::vector<std::uint32_t> seed_subset;  // ascending
  std::vector<BitVector> codewords;        // deterministic generation order
  Rational claimed_distance;               // 1/2 - 2*epsilon
};

/// Tampering functions plus the exact advantage of the matching-bit
/// distinguisher, certifying that the matrix is not epsilon-non-malleable.
struct AdversaryCertificate {
  std::vector<std::vector<std::uint32_t>> bad_seed_groups;  // disjoint, ascending
  AdversaryFamily adversaries;
  Rational acceptance_real;
  Rational acceptance_ideal;  // always 1/2
  Rational advantage;         // acceptance_real - 1/2, strictly > epsilon
};

struct DichotomyResult {
  std::variant<DerivedCode, AdversaryCertificate> outcome;

  bool is_code() const { return std::holds_alternative<DerivedCode>(outcome); }
  const DerivedCode& code() const { return std::get<DerivedCode>(outcome); }
  const AdversaryCertificate& adversary() const {
    return std::get<AdversaryCertificate>(outcome);
  }
};

/// Greedy pair removal: repeatedly extract the lexicographically smallest
/// remaining seed pair whose evaluation vectors are strictly closer than
/// 1/2 - 2*epsilon. D/4 pairs certify an adversary (pair-swap map); a failed
/// search leaves >= 2^(d-1) pairwise-far seeds, the code.
DichotomyResult derive_pairwise(const EvaluationMatrix& matrix,
                                const Rational& epsilon);

/// General-t analogue over GF(2) combinations: greedily extract disjoint seed
/// groups I (|I| <= t+1, searched largest size first, lexicographic within a
/// size) whose row-XOR has weight strictly below (1/2 - 2*epsilon)K. Coverage
/// of 2^(d-1) seeds certifies an adversary (cyclic shifts within groups);
/// a failed search yields the code of all XOR-sums of <= floor(t/2) rows.
DichotomyResult derive_combinations(const EvaluationMatrix& matrix,
                                    const Rational& epsilon, unsigned t,
                                    std::uint64_t work_budget = 100'000'000);

struct VerifyReport {
  bool pass = false;
  std::string violation;  // first violated condition; empty if pass
  std::optional<Rational> recomputed_min_distance;  // code branch
  std::optional<Rational> recomputed_advantage;     // adversary branch
};

/// Re-derives every certificate claim from the raw matrix with exact
/// arithmetic and reports the first violated condition.
VerifyReport verify_certificate(const EvaluationMatrix& matrix,
                                const DichotomyResult& result,
                                const Rational& epsilon, unsigned t);

/// Largest XOR-weight that still counts as "close": the greatest integer
/// strictly below (1/2 - 2*epsilon)*K, or -1 when the test is vacuous.
std::int64_t closeness_threshold(std::size_t element_count,
                                 const Rational& epsilon);

}  // namespace nmlab
