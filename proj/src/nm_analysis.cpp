#include "nmlab/nm_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "nmlab/prng.hpp"

namespace nmlab {

namespace {

// Integer numerator of the per-seed TV over denominator 2K: for the value
// tuple (s'_1..s'_t), sum over tampered-output patterns p of
// |#{x : w^(s)[x]=0, pattern p} - #{x : w^(s)[x]=1, pattern p}|.
std::int64_t tv_numerator(const EvaluationMatrix& m, std::uint32_t s,
                          const std::uint32_t* tuple, unsigned t,
                          std::vector<std::int64_t>& diff) {
  const std::size_t K = m.element_count();
  std::fill(diff.begin(), diff.end(), 0);
  for (std::size_t i = 0; i < K; ++i) {
    std::size_t pattern = 0;
    for (unsigned l = 0; l < t; ++l) {
      pattern |= static_cast<std::size_t>(m.rows[tuple[l]].get(i)) << l;
    }
    diff[pattern] += m.rows[s].get(i) ? -1 : 1;
  }
  std::int64_t total = 0;
  for (std::size_t p = 0; p < (std::size_t{1} << t); ++p) {
    total += std::abs(diff[p]);
  }
  return total;
}

}  // namespace

bool AdversaryFamily::fixed_point_free() const {
  for (const auto& map : maps) {
    for (std::size_t s = 0; s < map.size(); ++s) {
      if (map[s] == s) return false;
    }
  }
  return true;
}

void AdversaryFamily::validate() const {
  for (const auto& map : maps) {
    if (map.size() != seed_count) {
      throw std::invalid_argument("AdversaryFamily: map size != seed count");
    }
    for (std::size_t s = 0; s < map.size(); ++s) {
      if (map[s] >= seed_count) {
        throw std::invalid_argument("AdversaryFamily: map value out of range");
      }
      if (map[s] == s) {
        throw std::invalid_argument("AdversaryFamily: fixed point at seed " +
                                    std::to_string(s));
      }
    }
  }
}

Rational strong_error(const EvaluationMatrix& matrix) {
  matrix.validate();
  const std::size_t K = matrix.element_count();
  const std::size_t D = matrix.seed_count();
  // sum_s |weight/K - 1/2| = sum_s |2*weight - K| / (2K); exact over 2KD.
  BigInt acc = 0;
  for (const auto& row : matrix.rows) {
    const std::int64_t twice = 2 * static_cast<std::int64_t>(row.weight()) -
                               static_cast<std::int64_t>(K);
    acc += twice >= 0 ? twice : -twice;
  }
  return Rational(acc, BigInt(2) * K * D);
}

NmErrorResult nm_error_exact(const EvaluationMatrix& matrix, unsigned t,
                             double work_budget) {
  matrix.validate();
  if (t == 0) throw std::invalid_argument("nm_error_exact: t must be >= 1");
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  if (D < 2) {
    throw std::invalid_argument(
        "nm_error_exact: D must be >= 2 (an adversarial function must avoid its input)");
  }
  const double work = std::pow(static_cast<double>(D), t + 1) *
                      static_cast<double>(K) * std::ldexp(1.0, static_cast<int>(t));
  if (work > work_budget) {
    throw std::invalid_argument(
        "nm_error_exact: work budget exceeded (reduce D, K, or t)");
  }

  NmErrorResult result;
  result.per_seed_tv.resize(D);
  result.witness.seed_count = D;
  result.witness.maps.assign(t, std::vector<std::uint32_t>(D, 0));

  std::vector<std::uint32_t> candidates(D - 1);
  std::vector<std::uint32_t> tuple(t);
  std::vector<std::uint32_t> best(t);
  std::vector<std::int64_t> diff(std::size_t{1} << t);
  BigInt numerator_sum = 0;

  for (std::uint32_t s = 0; s < D; ++s) {
    std::size_t idx = 0;
    for (std::uint32_t v = 0; v < D; ++v) {
      if (v != s) candidates[idx++] = v;
    }
    // Odometer over candidate indices enumerates tuples in lexicographic
    // order, so the first strict maximum is the lexicographically smallest.
    std::vector<std::size_t> odo(t, 0);
    std::int64_t best_num = -1;
    for (;;) {
      for (unsigned l = 0; l < t; ++l) tuple[l] = candidates[odo[l]];
      const std::int64_t num = tv_numerator(matrix, s, tuple.data(), t, diff);
      if (num > best_num) {
        best_num = num;
        best = tuple;
      }
      unsigned l = t;
      while (l > 0) {
        --l;
        if (++odo[l] < candidates.size()) break;
        odo[l] = 0;
        if (l == 0) goto seed_done;
      }
    }
  seed_done:
    result.per_seed_tv[s] = Rational(best_num, 2 * static_cast<std::int64_t>(K));
    for (unsigned l = 0; l < t; ++l) result.witness.maps[l][s] = best[l];
    numerator_sum += best_num;
  }

  result.error = Rational(numerator_sum, BigInt(2) * K * D);
  result.witness.validate();
  return result;
}

Rational nm_error_of_adversary(const EvaluationMatrix& matrix,
                               const AdversaryFamily& family) {
  matrix.validate();
  family.validate();
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  if (family.seed_count != D) {
    throw std::invalid_argument("nm_error_of_adversary: seed count mismatch");
  }
  const unsigned t = static_cast<unsigned>(family.maps.size());
  std::vector<std::int64_t> diff(std::size_t{1} << t);
  std::vector<std::uint32_t> tuple(t);
  BigInt numerator_sum = 0;
  for (std::uint32_t s = 0; s < D; ++s) {
    for (unsigned l = 0; l < t; ++l) tuple[l] = family.maps[l][s];
    numerator_sum += tv_numerator(matrix, s, tuple.data(), t, diff);
  }
  return Rational(numerator_sum, BigInt(2) * K * D);
}

WorstSourceResult worst_source_nm_error(const ExtractorTable& table, unsigned k,
                                        unsigned t, SourceSearchMode mode,
                                        std::uint64_t budget,
                                        std::uint64_t seed) {
  if (k > table.n) throw std::invalid_argument("worst_source: k > n");
  const std::uint64_t N = table.input_count();
  const std::uint64_t K = std::uint64_t{1} << k;

  WorstSourceResult out;
  out.error = -1;

  auto consider = [&](std::vector<std::uint64_t> elements) {
    FlatSource source(table.n, k, std::move(elements));
    const EvaluationMatrix m = evaluation_matrix(table, source);
    const Rational e = nm_error_exact(m, t).error;
    ++out.sources_examined;
    if (e > out.error) {
      out.error = e;
      out.source = std::move(source);
    }
  };

  if (mode == SourceSearchMode::exhaustive) {
    const BigInt total = binomial(N, K);
    if (total > budget) {
      throw std::invalid_argument("worst_source: exhaustive budget exceeded (" +
                                  total.str() + " sources)");
    }
    // K-subsets of {0..N-1} in lexicographic order.
    std::vector<std::uint64_t> pick(K);
    for (std::uint64_t i = 0; i < K; ++i) pick[i] = i;
    for (;;) {
      consider(pick);
      std::uint64_t i = K;
      while (i > 0) {
        --i;
        if (pick[i] + (K - i) < N) {
          ++pick[i];
          for (std::uint64_t j = i + 1; j < K; ++j) pick[j] = pick[j - 1] + 1;
          break;
        }
        if (i == 0) return out;
      }
    }
  }

  if (budget == 0) throw std::invalid_argument("worst_source: budget must be >= 1");
  for (std::uint64_t trial = 0; trial < budget; ++trial) {
    SplitMix64 rng = substream(seed, trial);
    // Floyd's sampling of a K-subset, then canonical ascending order.
    std::vector<std::uint64_t> chosen;
    chosen.reserve(K);
    for (std::uint64_t j = N - K; j < N; ++j) {
      std::uint64_t v = rng.next_below(j + 1);
      if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) v = j;
      chosen.push_back(v);
    }
    std::sort(chosen.begin(), chosen.end());
    consider(std::move(chosen));
  }
  return out;
}

}  // namespace nmlab
