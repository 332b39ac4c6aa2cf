#include "nmlab/code_derivation.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace nmlab {

namespace {

// XOR of the selected rows; empty selection gives the zero vector.
BitVector xor_rows(const EvaluationMatrix& m,
                   const std::vector<std::uint32_t>& seeds) {
  BitVector acc(m.element_count());
  for (std::uint32_t s : seeds) acc = acc ^ m.rows[s];
  return acc;
}

// Fixed-point-free default tampering value for seeds the construction does
// not constrain.
std::uint32_t cyclic_successor(std::uint32_t s, std::size_t D) {
  return static_cast<std::uint32_t>((s + 1) % D);
}

// All subsets of `pool` of the given size, lexicographic, passed to visit;
// visit returns true to stop.
bool for_each_subset(const std::vector<std::uint32_t>& pool, std::size_t size,
                     const std::function<bool(const std::vector<std::uint32_t>&)>& visit) {
  if (size > pool.size()) return false;
  std::vector<std::size_t> idx(size);
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  std::vector<std::uint32_t> subset(size);
  for (;;) {
    for (std::size_t i = 0; i < size; ++i) subset[i] = pool[idx[i]];
    if (visit(subset)) return true;
    std::size_t i = size;
    while (i > 0) {
      --i;
      if (idx[i] + (size - i) < pool.size()) {
        ++idx[i];
        for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (size == 0) return false;
  }
}

AdversaryFamily pair_swap_family(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                 std::size_t D) {
  AdversaryFamily family;
  family.seed_count = D;
  family.maps.assign(1, std::vector<std::uint32_t>(D));
  for (std::uint32_t s = 0; s < D; ++s) {
    family.maps[0][s] = cyclic_successor(s, D);
  }
  for (const auto& [a, b] : pairs) {
    family.maps[0][a] = b;
    family.maps[0][b] = a;
  }
  return family;
}

// Cyclic shifts within each group; shift amounts that would be the identity
// on a group (l % group size == 0) fall back to the free successor value,
// which the group distinguisher never reads.
AdversaryFamily group_shift_family(const std::vector<std::vector<std::uint32_t>>& groups,
                                   unsigned t, std::size_t D) {
  AdversaryFamily family;
  family.seed_count = D;
  family.maps.assign(t, std::vector<std::uint32_t>(D));
  for (unsigned l = 0; l < t; ++l) {
    for (std::uint32_t s = 0; s < D; ++s) {
      family.maps[l][s] = cyclic_successor(s, D);
    }
    for (const auto& group : groups) {
      const std::size_t size = group.size();
      if ((l + 1) % size == 0) continue;
      for (std::size_t i = 0; i < size; ++i) {
        family.maps[l][group[i]] = group[(i + l + 1) % size];
      }
    }
  }
  return family;
}

// (1/D) * sum over covered seeds of the per-seed match probability, plus 1/2
// on the rest. match_counts[j] = sum over s in group j of
// K * Pr_x[group parity at x is 0].
Rational acceptance_probability(const std::vector<std::int64_t>& match_counts,
                                std::size_t covered, std::size_t D, std::size_t K) {
  BigInt num = 0;
  for (std::int64_t c : match_counts) num += c;
  // (1/D) * (num/K) + (1 - covered/D) * 1/2, over common denominator 2KD.
  BigInt total = BigInt(2) * num + BigInt(K) * (D - covered);
  return Rational(total, BigInt(2) * K * D);
}

}  // namespace

std::int64_t closeness_threshold(std::size_t element_count, const Rational& epsilon) {
  // Largest integer pc with pc < (1/2 - 2*epsilon) * K, exactly.
  const BigInt p = numerator(epsilon);
  const BigInt q = denominator(epsilon);
  const BigInt num = BigInt(element_count) * (q - 4 * p);
  if (num <= 0) return -1;
  const BigInt bound = ceil_div(num, 2 * q) - 1;
  return bound.convert_to<std::int64_t>();
}

DichotomyResult derive_pairwise(const EvaluationMatrix& matrix,
                                const Rational& epsilon) {
  matrix.validate();
  if (epsilon <= 0) throw std::invalid_argument("derive_pairwise: epsilon must be > 0");
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  if (D < 4) throw std::invalid_argument("derive_pairwise: D must be >= 4");

  const std::int64_t max_close = closeness_threshold(K, epsilon);
  const std::size_t target_pairs = D / 4;

  std::vector<std::uint32_t> remaining(D);
  for (std::uint32_t s = 0; s < D; ++s) remaining[s] = s;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  std::vector<std::int64_t> match_counts;

  while (pairs.size() < target_pairs) {
    bool found = false;
    std::pair<std::size_t, std::size_t> hit;
    for (std::size_t i = 0; i + 1 < remaining.size() && !found; ++i) {
      for (std::size_t j = i + 1; j < remaining.size() && !found; ++j) {
        const std::int64_t pc = static_cast<std::int64_t>(
            xor_weight(matrix.rows[remaining[i]], matrix.rows[remaining[j]]));
        if (pc <= max_close) {
          hit = {i, j};
          found = true;
        }
      }
    }
    if (!found) break;
    const std::uint32_t a = remaining[hit.first];
    const std::uint32_t b = remaining[hit.second];
    pairs.emplace_back(a, b);
    const std::int64_t agree = static_cast<std::int64_t>(K) -
        static_cast<std::int64_t>(xor_weight(matrix.rows[a], matrix.rows[b]));
    match_counts.push_back(2 * agree);  // both seeds of the pair
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(hit.second));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(hit.first));
  }

  if (pairs.size() < target_pairs) {
    DerivedCode code;
    code.construction = CodeConstruction::pairwise;
    code.t = 1;
    code.seed_subset.assign(remaining.begin(), remaining.begin() + static_cast<std::ptrdiff_t>(D / 2));
    code.codewords.reserve(code.seed_subset.size());
    for (std::uint32_t s : code.seed_subset) code.codewords.push_back(matrix.rows[s]);
    code.claimed_distance = Rational(1, 2) - 2 * epsilon;
    return DichotomyResult{std::move(code)};
  }

  AdversaryCertificate cert;
  for (const auto& [a, b] : pairs) cert.bad_seed_groups.push_back({a, b});
  cert.adversaries = pair_swap_family(pairs, D);
  cert.acceptance_real = acceptance_probability(match_counts, 2 * pairs.size(), D, K);
  cert.acceptance_ideal = Rational(1, 2);
  cert.advantage = cert.acceptance_real - cert.acceptance_ideal;
  return DichotomyResult{std::move(cert)};
}

DichotomyResult derive_combinations(const EvaluationMatrix& matrix,
                                    const Rational& epsilon, unsigned t,
                                    std::uint64_t work_budget) {
  matrix.validate();
  if (t < 2) {
    throw std::invalid_argument(
        "derive_combinations: t must be >= 2 (use derive_pairwise for t = 1)");
  }
  if (epsilon <= 0) throw std::invalid_argument("derive_combinations: epsilon must be > 0");
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  if (D < 2) throw std::invalid_argument("derive_combinations: D must be >= 2");

  BigInt scan_size = 0;
  for (unsigned i = 1; i <= t + 1; ++i) scan_size += binomial(D, i);
  if (scan_size > work_budget) {
    throw std::invalid_argument("derive_combinations: work budget exceeded");
  }

  const std::int64_t max_close = closeness_threshold(K, epsilon);
  std::vector<std::uint32_t> remaining(D);
  for (std::uint32_t s = 0; s < D; ++s) remaining[s] = s;
  std::vector<std::vector<std::uint32_t>> groups;
  std::vector<std::int64_t> match_counts;
  std::size_t covered = 0;

  while (covered < D / 2) {
    std::vector<std::uint32_t> found;
    for (std::size_t size = std::min<std::size_t>(t + 1, remaining.size());
         size >= 1 && found.empty(); --size) {
      for_each_subset(remaining, size, [&](const std::vector<std::uint32_t>& subset) {
        const std::int64_t w =
            static_cast<std::int64_t>(xor_rows(matrix, subset).weight());
        if (w <= max_close) {
          found = subset;
          return true;
        }
        return false;
      });
    }
    if (found.empty()) break;

    const std::int64_t zeros = static_cast<std::int64_t>(K) -
        static_cast<std::int64_t>(xor_rows(matrix, found).weight());
    match_counts.push_back(static_cast<std::int64_t>(found.size()) * zeros);
    covered += found.size();
    std::vector<std::uint32_t> next;
    next.reserve(remaining.size() - found.size());
    std::set_difference(remaining.begin(), remaining.end(), found.begin(),
                        found.end(), std::back_inserter(next));
    remaining = std::move(next);
    groups.push_back(std::move(found));
  }

  if (covered >= D / 2) {
    AdversaryCertificate cert;
    cert.bad_seed_groups = groups;
    cert.adversaries = group_shift_family(groups, t, D);
    cert.acceptance_real = acceptance_probability(match_counts, covered, D, K);
    cert.acceptance_ideal = Rational(1, 2);
    cert.advantage = cert.acceptance_real - cert.acceptance_ideal;
    return DichotomyResult{std::move(cert)};
  }

  DerivedCode code;
  code.construction = CodeConstruction::gf2_combinations;
  code.t = t;
  code.seed_subset = remaining;
  const std::size_t max_pick = t / 2;
  BigInt words = 0;
  for (std::size_t i = 0; i <= max_pick; ++i) words += binomial(remaining.size(), i);
  if (words > work_budget) {
    throw std::invalid_argument("derive_combinations: work budget exceeded");
  }
  for (std::size_t size = 0; size <= max_pick; ++size) {
    for_each_subset(remaining, size, [&](const std::vector<std::uint32_t>& subset) {
      code.codewords.push_back(xor_rows(matrix, subset));
      return false;
    });
  }
  code.claimed_distance = Rational(1, 2) - 2 * epsilon;

  // Lemma-level size claim; holds since |S| >= 2^(d-1) survived the greedy.
  const BigInt lhs = BigInt(code.codewords.size()) * pow_bigint(t, max_pick);
  const BigInt rhs = pow_bigint(BigInt(D) / 2, max_pick);
  if (lhs < rhs) {
    throw std::logic_error("derive_combinations: combination code smaller than claimed");
  }
  return DichotomyResult{std::move(code)};
}

namespace {

VerifyReport fail(std::string why) {
  VerifyReport r;
  r.pass = false;
  r.violation = std::move(why);
  return r;
}

VerifyReport verify_code(const EvaluationMatrix& matrix, const DerivedCode& code,
                         const Rational& epsilon, unsigned t) {
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  const std::int64_t max_close = closeness_threshold(K, epsilon);

  if (code.construction == CodeConstruction::pairwise && t != 1) {
    return fail("pairwise code verified with t != 1");
  }
  if (code.construction == CodeConstruction::gf2_combinations &&
      (t < 2 || code.t != t)) {
    return fail("combination code t mismatch");
  }
  if (code.claimed_distance != Rational(1, 2) - 2 * epsilon) {
    return fail("claimed distance does not match epsilon");
  }
  if (!std::is_sorted(code.seed_subset.begin(), code.seed_subset.end()) ||
      std::adjacent_find(code.seed_subset.begin(), code.seed_subset.end()) !=
          code.seed_subset.end()) {
    return fail("seed subset not strictly ascending");
  }
  for (std::uint32_t s : code.seed_subset) {
    if (s >= D) return fail("seed subset entry out of range");
  }

  std::vector<BitVector> expected;
  if (code.construction == CodeConstruction::pairwise) {
    if (code.seed_subset.size() != D / 2) {
      return fail("pairwise code must keep exactly 2^(d-1) seeds");
    }
    for (std::uint32_t s : code.seed_subset) expected.push_back(matrix.rows[s]);
  } else {
    if (code.seed_subset.size() < D / 2) {
      return fail("combination code must keep at least 2^(d-1) seeds");
    }
    const std::size_t max_pick = t / 2;
    for (std::size_t size = 0; size <= max_pick; ++size) {
      for_each_subset(code.seed_subset, size,
                      [&](const std::vector<std::uint32_t>& subset) {
                        expected.push_back(xor_rows(matrix, subset));
                        return false;
                      });
    }
    const BigInt lhs = BigInt(expected.size()) * pow_bigint(t, max_pick);
    const BigInt rhs = pow_bigint(BigInt(D) / 2, max_pick);
    if (lhs < rhs) return fail("combination code size below claimed bound");
  }
  if (code.codewords != expected) {
    return fail("codewords do not match the matrix rows for the seed subset");
  }

  std::int64_t min_pc = -1;
  for (std::size_t i = 0; i + 1 < expected.size(); ++i) {
    for (std::size_t j = i + 1; j < expected.size(); ++j) {
      const std::int64_t pc =
          static_cast<std::int64_t>(xor_weight(expected[i], expected[j]));
      if (pc <= max_close) {
        return fail("codeword pair closer than claimed distance (codewords " +
                    std::to_string(i) + ", " + std::to_string(j) + ")");
      }
      if (min_pc < 0 || pc < min_pc) min_pc = pc;
    }
  }

  VerifyReport r;
  r.pass = true;
  if (min_pc >= 0) r.recomputed_min_distance = Rational(min_pc, K);
  return r;
}

VerifyReport verify_adversary(const EvaluationMatrix& matrix,
                              const AdversaryCertificate& cert,
                              const Rational& epsilon, unsigned t) {
  const std::size_t D = matrix.seed_count();
  const std::size_t K = matrix.element_count();
  const std::int64_t max_close = closeness_threshold(K, epsilon);

  if (cert.adversaries.seed_count != D) return fail("adversary seed count mismatch");
  if (cert.adversaries.maps.size() != t) return fail("adversary family must have t maps");
  for (const auto& map : cert.adversaries.maps) {
    if (map.size() != D) return fail("adversary map has wrong length");
    for (std::size_t s = 0; s < D; ++s) {
      if (map[s] >= D) return fail("adversary map value out of range");
      if (map[s] == s) return fail("fixed point at seed " + std::to_string(s));
    }
  }

  std::unordered_set<std::uint32_t> seen;
  std::size_t covered = 0;
  for (const auto& group : cert.bad_seed_groups) {
    if (group.empty()) return fail("empty bad-seed group");
    if (t == 1 && group.size() != 2) return fail("t=1 groups must be pairs");
    if (group.size() > t + 1) return fail("group larger than t+1");
    if (!std::is_sorted(group.begin(), group.end())) return fail("group not ascending");
    for (std::uint32_t s : group) {
      if (s >= D) return fail("group seed out of range");
      if (!seen.insert(s).second) return fail("bad-seed groups are not disjoint");
    }
    covered += group.size();
  }
  if (covered < D / 2) return fail("bad-seed coverage below 2^(d-1)");

  // Group weight bound plus map/group consistency, then the exact acceptance.
  BigInt match_total = 0;
  for (const auto& group : cert.bad_seed_groups) {
    const std::int64_t w = static_cast<std::int64_t>(xor_rows(matrix, group).weight());
    if (w > max_close) {
      return fail("group XOR weight not below (1/2 - 2*epsilon)K");
    }
    for (std::uint32_t s : group) {
      std::unordered_set<std::uint32_t> reached{s};
      for (std::size_t l = 0; l + 1 < group.size(); ++l) {
        reached.insert(cert.adversaries.maps[l][s]);
      }
      if (reached.size() != group.size()) {
        return fail("maps do not traverse the group at seed " + std::to_string(s));
      }
      for (std::uint32_t g : group) {
        if (!reached.contains(g)) {
          return fail("maps do not traverse the group at seed " + std::to_string(s));
        }
      }
    }
    match_total += BigInt(group.size()) * (static_cast<std::int64_t>(K) - w);
  }

  const Rational acceptance =
      Rational(2 * match_total + BigInt(K) * (D - covered), BigInt(2) * K * D);
  if (acceptance != cert.acceptance_real) return fail("acceptance_real mismatch");
  if (cert.acceptance_ideal != Rational(1, 2)) return fail("acceptance_ideal must be 1/2");
  if (cert.advantage != acceptance - Rational(1, 2)) return fail("advantage mismatch");
  if (!(cert.advantage > epsilon)) return fail("advantage not strictly above epsilon");

  VerifyReport r;
  r.pass = true;
  r.recomputed_advantage = acceptance - Rational(1, 2);
  return r;
}

}  // namespace

VerifyReport verify_certificate(const EvaluationMatrix& matrix,
                                const DichotomyResult& result,
                                const Rational& epsilon, unsigned t) {
  matrix.validate();
  if (result.is_code()) {
    return verify_code(matrix, result.code(), epsilon, t);
  }
  return verify_adversary(matrix, result.adversary(), epsilon, t);
}

}  // namespace nmlab
