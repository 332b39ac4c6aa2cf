#include "nmlab/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "nmlab/prng.hpp"

namespace nmlab {

unsigned effective_threads(unsigned hint) {
  unsigned threads = hint != 0 ? hint : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NMLAB_THREADS")) {
    char* end = nullptr;
    const unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && cap >= 1) {
      threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
    }
  }
  return std::max(1u, threads);
}

EvaluationMatrix trial_matrix(const ExperimentConfig& config,
                              const FlatSource& source, std::uint64_t trial) {
  const std::size_t D = std::size_t{1} << config.d;
  const std::size_t K = source.size();
  SplitMix64 rng = substream(config.master_seed, trial);
  EvaluationMatrix m;
  m.n = source.n;
  m.d = config.d;
  m.k = source.k;
  m.rows.reserve(D);
  for (std::size_t s = 0; s < D; ++s) {
    BitVector row(K);
    // K bits from ceil(K/64) words, truncated to length.
    for (std::size_t base = 0; base < K; base += 64) {
      const std::uint64_t word = rng.next();
      const std::size_t chunk = std::min<std::size_t>(64, K - base);
      for (std::size_t b = 0; b < chunk; ++b) {
        if ((word >> b) & 1u) row.set(base + b, true);
      }
    }
    m.rows.push_back(std::move(row));
  }
  m.source = source;
  m.validate();
  return m;
}

SearchResult random_search(const ExperimentConfig& config,
                           const FlatSource& source, unsigned t) {
  if (config.trials == 0) {
    throw std::invalid_argument("random_search: trials must be >= 1");
  }
  if (source.n != config.n || source.k != config.k) {
    throw std::invalid_argument("random_search: source does not match config");
  }

  const std::uint64_t trials = config.trials;
  std::vector<Rational> errors(trials);

  const unsigned threads = effective_threads(config.parallelism);
  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end; ++i) {
      errors[i] = nm_error_exact(trial_matrix(config, source, i), t).error;
    }
  };

  if (threads <= 1 || trials < 2) {
    run_range(0, trials);
  } else {
    const std::uint64_t workers = std::min<std::uint64_t>(threads, trials);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (std::uint64_t w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(trials, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  SearchResult result;
  result.error_trace.reserve(trials);
  result.best_error = errors[0];
  result.best_trial = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    if (errors[i] < result.best_error) {
      result.best_error = errors[i];
      result.best_trial = i;
    }
    result.error_trace.push_back(result.best_error);
  }
  result.best = trial_matrix(config, source, result.best_trial);
  return result;
}

}  // namespace nmlab
