#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nmlab/core.hpp"
#include "nmlab/nm_analysis.hpp"

namespace nmlab {

/// Deterministic random-search setup. Per-trial randomness comes from
/// counter-based streams of (master_seed, trial_index), so the result is
/// independent of scheduling and thread count.
struct ExperimentConfig {
  std::uint64_t master_seed = 0;
  std::uint64_t trials = 0;
  unsigned n = 0;
  unsigned d = 0;
  unsigned k = 0;
  unsigned t = 1;
  std::optional<Rational> epsilon;  // carried through to reports
  unsigned parallelism = 0;         // 0 = auto (hardware), capped by NMLAB_THREADS
};

struct SearchResult {
  Rational best_error;
  std::uint64_t best_trial = 0;
  EvaluationMatrix best;                // regenerated from the winning stream
  std::vector<Rational> error_trace;    // best-so-far per trial, nonincreasing
};

/// Samples uniformly random evaluation matrices for the fixed source and
/// keeps the one with the smallest exact t-tampering error.
SearchResult random_search(const ExperimentConfig& config,
                           const FlatSource& source, unsigned t);

/// The matrix examined by a given trial (exposed for recomputation checks).
EvaluationMatrix trial_matrix(const ExperimentConfig& config,
                              const FlatSource& source, std::uint64_t trial);

/// Thread count: `hint` (0 = hardware), capped by NMLAB_THREADS when set.
unsigned effective_threads(unsigned hint);

}  // namespace nmlab
