#pragma once

#include <cstdint>
#include <vector>

#include "nmlab/core.hpp"

namespace nmlab {

/// t seed-tampering maps, each with no fixed points.
struct AdversaryFamily {
  std::size_t seed_count = 0;
  std::vector<std::vector<std::uint32_t>> maps;  // maps[l][s] != s

  bool fixed_point_free() const;
  void validate() const;  // throws on fixed points / out-of-range values
};

struct NmErrorResult {
  Rational error;                    // average of per_seed_tv
  std::vector<Rational> per_seed_tv;
  AdversaryFamily witness;           // lexicographically smallest maximizer per seed
};

/// (1/D) * sum_s |weight(w^(s))/K - 1/2|, the exact strong-extraction error
/// of the matrix for its fixed source.
Rational strong_error(const EvaluationMatrix& matrix);

/// Exact t-tampering extraction error. The maximization over adversarial
/// functions decomposes per seed: the seed is a revealed component with equal
/// uniform marginals on both sides, and the t maps are unconstrained across
/// distinct seeds, so the worst functions are assembled from one maximizing
/// value tuple per seed. Work is O(D * (D-1)^t * K) and must stay within
/// `work_budget`.
NmErrorResult nm_error_exact(const EvaluationMatrix& matrix, unsigned t,
                             double work_budget = 1e9);

/// Exact error achieved by one fixed family (used to re-check witnesses).
Rational nm_error_of_adversary(const EvaluationMatrix& matrix,
                               const AdversaryFamily& family);

enum class SourceSearchMode { exhaustive, randomized };

struct WorstSourceResult {
  Rational error;      // exact max (exhaustive) or certified lower bound
  FlatSource source;   // witness attaining `error`
  std::uint64_t sources_examined = 0;
};

/// Maximizes nm_error_exact over flat (n,k)-sources of the table.
/// Exhaustive mode enumerates all C(2^n, 2^k) sources (budget must cover the
/// count); randomized mode samples `budget` sources from counter-based
/// streams of `seed`.
WorstSourceResult worst_source_nm_error(const ExtractorTable& table, unsigned k,
                                        unsigned t, SourceSearchMode mode,
                                        std::uint64_t budget,
                                        std::uint64_t seed = 0);

}  // namespace nmlab
