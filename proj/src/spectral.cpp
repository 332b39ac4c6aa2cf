#include "nmlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nmlab/prng.hpp"

namespace nmlab {

namespace {

// Directed-rounding slack for the log2-space comparisons; the double-
// precision evaluations here are accurate to ~1e-12.
constexpr double kLogMargin = 1e-9;

double log2_rational(const Rational& value) {
  if (value <= 0) throw std::invalid_argument("log2 of non-positive rational");
  return log2_bigint(numerator(value)) - log2_bigint(denominator(value));
}

}  // namespace

HypercubeSubset::HypercubeSubset(unsigned n_, std::vector<std::uint32_t> members_)
    : n(n_), members(std::move(members_)) {
  if (n > 30) throw std::invalid_argument("HypercubeSubset: dimension too large");
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw std::invalid_argument("HypercubeSubset: duplicate member");
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  if (!members.empty() && members.back() >= limit) {
    throw std::invalid_argument("HypercubeSubset: member out of range");
  }
}

HypercubeSubset HypercubeSubset::from_levels(unsigned n,
                                             const std::vector<unsigned>& levels) {
  std::vector<std::uint32_t> members;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    const unsigned w = static_cast<unsigned>(__builtin_popcountll(v));
    if (std::find(levels.begin(), levels.end(), w) != levels.end()) {
      members.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return HypercubeSubset(n, std::move(members));
}

LambdaResult lambda_b(const HypercubeSubset& subset, double tolerance,
                      const PowerIterationOptions& options) {
  if (subset.members.empty()) {
    throw std::invalid_argument("lambda_b: empty subset");
  }
  if (!(tolerance > 0)) {
    throw std::invalid_argument("lambda_b: tolerance must be positive");
  }
  const std::size_t m = subset.members.size();
  const unsigned n = subset.n;

  // Induced adjacency lists via bit flips + membership lookup.
  std::vector<std::uint32_t> offsets(m + 1, 0);
  std::vector<std::uint32_t> neighbors;
  neighbors.reserve(m * n / 2);
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint32_t v = subset.members[i];
    for (unsigned bit = 0; bit < n; ++bit) {
      const std::uint32_t u = v ^ (std::uint32_t{1} << bit);
      const auto it = std::lower_bound(subset.members.begin(), subset.members.end(), u);
      if (it != subset.members.end() && *it == u) {
        neighbors.push_back(static_cast<std::uint32_t>(it - subset.members.begin()));
      }
    }
    offsets[i + 1] = static_cast<std::uint32_t>(neighbors.size());
  }

  const double shift = static_cast<double>(n);
  const double stop_residual = tolerance / 2;

  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  std::vector<double> w(m);
  double mu = 0.0;
  double prev_mu = -1.0;
  std::size_t stagnant = 0;
  bool restarted = false;

  for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
    for (std::size_t i = 0; i < m; ++i) {
      double acc = shift * v[i];
      for (std::uint32_t j = offsets[i]; j < offsets[i + 1]; ++j) {
        acc += v[neighbors[j]];
      }
      w[i] = acc;
    }
    mu = 0.0;
    for (std::size_t i = 0; i < m; ++i) mu += v[i] * w[i];
    double res_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = w[i] - mu * v[i];
      res_sq += r * r;
    }
    const double residual = std::sqrt(res_sq);
    if (residual <= stop_residual) {
      return LambdaResult{mu - shift, iter, residual};
    }

    // All-ones can be (numerically) orthogonal to the top eigenspace only in
    // degenerate float situations; escape once via a seeded random restart.
    if (std::abs(mu - prev_mu) < 1e-15 * (shift + 1.0)) {
      if (++stagnant > 512 && !restarted) {
        SplitMix64 rng(options.restart_seed);
        for (auto& x : v) {
          x = 0.25 + static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
        }
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (auto& x : v) x /= norm;
        restarted = true;
        stagnant = 0;
        prev_mu = -1.0;
        continue;
      }
    } else {
      stagnant = 0;
    }
    prev_mu = mu;

    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm;
  }

  double res_sq = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = w[i] - mu * v[i];
    res_sq += r * r;
  }
  throw std::runtime_error("lambda_b: no convergence within iteration cap (residual " +
                           std::to_string(std::sqrt(res_sq)) + ")");
}

TwoLevelRayleigh two_level_rayleigh(const TwoLevelFunction& f) {
  if (f.r >= f.n) throw std::invalid_argument("two_level_rayleigh: need r < n");
  if (f.a == 0 && f.b == 0) {
    throw std::invalid_argument("two_level_rayleigh: (a, b) must be nonzero");
  }
  const BigInt c_r = binomial(f.n, f.r);
  const BigInt c_r1 = binomial(f.n, f.r + 1);
  const Rational numerator_term = 2 * f.a * f.b * Rational(c_r * (f.n - f.r));
  const Rational denominator_term =
      f.a * f.a * Rational(c_r) + f.b * f.b * Rational(c_r1);
  TwoLevelRayleigh out;
  out.exact = numerator_term / denominator_term;
  out.closed_form = two_level_closed_form(f.n, f.r);
  return out;
}

double two_level_closed_form(unsigned n, unsigned r) {
  if (r >= n) throw std::invalid_argument("two_level_closed_form: need r < n");
  const double nn = static_cast<double>(n);
  const double rr = static_cast<double>(r);
  return std::sqrt(rr * nn) * (nn - rr) / (2 * nn - rr);
}

double two_level_rayleigh_at_optimum(unsigned n, unsigned r) {
  if (r >= n) throw std::invalid_argument("two_level_rayleigh_at_optimum: need r < n");
  // At b = a*sqrt(r/n) the quotient is sqrt(r/n) times a rational factor:
  // 2*C(n,r)*(n-r) / (C(n,r) + (r/n)*C(n,r+1)).
  const BigInt c_r = binomial(n, r);
  const BigInt c_r1 = binomial(n, r + 1);
  const Rational factor = Rational(2 * c_r * (n - r)) /
                          (Rational(c_r) + Rational(r, n) * Rational(c_r1));
  return rational_to_double(factor) *
         std::sqrt(static_cast<double>(r) / static_cast<double>(n));
}

NsBoundReport ns_bound(const Rational& delta, const Rational& epsilon,
                       const HypercubeSubset& subset, double lambda_value,
                       double tolerance) {
  if (!(delta > 0)) throw std::invalid_argument("ns_bound: delta must be > 0");
  if (!(epsilon > 0)) throw std::invalid_argument("ns_bound: epsilon must be > 0");
  if (tolerance < 0) throw std::invalid_argument("ns_bound: tolerance must be >= 0");
  if (subset.members.empty()) throw std::invalid_argument("ns_bound: empty subset");

  NsBoundReport report;
  report.lambda = lambda_value;
  report.margin = tolerance;
  report.threshold =
      rational_to_double((1 - 2 * delta + epsilon) * Rational(subset.n));
  if (lambda_value >= report.threshold - tolerance) {
    report.applicable = true;
    report.cardinality_bound = Rational(subset.size()) / epsilon;
  } else {
    report.applicable = false;
    report.gap = report.threshold - lambda_value;
  }
  return report;
}

bool MrrwChainReport::all_hold() const {
  for (const auto& ineq : inequalities) {
    if (!ineq.holds) return false;
  }
  return true;
}

MrrwQuantResult mrrw_quant(const Rational& c, const Rational& epsilon,
                           std::uint64_t n) {
  if (!(c > 0 && c < Rational(1, 20))) {
    throw std::invalid_argument("mrrw_quant: c out of range (0, 1/20)");
  }
  if (!(epsilon > 0 && epsilon < c)) {
    throw std::invalid_argument("mrrw_quant: epsilon out of range (0, c)");
  }
  // n > c / epsilon^2
  if (!(Rational(n) * epsilon * epsilon > c)) {
    throw std::invalid_argument("mrrw_quant: n too small (need n > c/epsilon^2)");
  }

  MrrwQuantResult out;
  out.chain.c = c;
  out.chain.epsilon = epsilon;
  out.chain.n = n;

  const Rational eps2 = epsilon * epsilon;
  const Rational low = 9 * eps2 * Rational(n) / c;    // 9*eps^2*n/c
  const Rational high = 10 * eps2 * Rational(n) / c;  // 10*eps^2*n/c
  const BigInt r_big = ceil_div(numerator(low), denominator(low));
  const std::uint64_t r = r_big.convert_to<std::uint64_t>();
  out.chain.r = r;

  auto push = [&](std::string desc, double lhs, double rhs, bool holds, bool exact) {
    out.chain.inequalities.push_back(
        InequalityRecord{std::move(desc), lhs, rhs, holds, exact});
  };

  // (i) the smallest integer r in [9*eps^2*n/c, 10*eps^2*n/c]; also r < n/2,
  // needed for the binomial monotonicity below.
  push("r >= 9*eps^2*n/c", static_cast<double>(r), rational_to_double(low),
       Rational(r_big) >= low, true);
  push("r <= 10*eps^2*n/c", static_cast<double>(r), rational_to_double(high),
       Rational(r_big) <= high, true);
  push("r < n/2", static_cast<double>(r), static_cast<double>(n) / 2,
       2 * r < n, true);

  // (ii) spectral witness value: sqrt(rn)*(n-r)/(2n-r) > 3*eps*n, verified by
  // squaring (both sides positive).
  {
    const BigInt nr = BigInt(n) - r;
    const BigInt two_n_r = 2 * BigInt(n) - r;
    const BigInt pe = numerator(epsilon);
    const BigInt qe = denominator(epsilon);
    const BigInt lhs_sq = BigInt(r) * n * nr * nr * qe * qe;
    const BigInt rhs_sq = 9 * pe * pe * BigInt(n) * n * two_n_r * two_n_r;
    const double lhs = std::sqrt(static_cast<double>(r) * static_cast<double>(n)) *
                       static_cast<double>(n - r) / static_cast<double>(2 * n - r);
    const double rhs = 3 * rational_to_double(epsilon) * static_cast<double>(n);
    push("sqrt(rn)*(n-r)/(2n-r) > 3*eps*n", lhs, rhs, lhs_sq > rhs_sq, true);
  }

  const BigInt c_nr = binomial(n, r);
  const BigInt c_nr1 = binomial(n, r + 1);
  const BigInt level_set_size = c_nr + c_nr1;

  // (iii) |B| = C(n,r) + C(n,r+1) <= C(n,r)*n/r.
  push("log2(C(n,r)+C(n,r+1)) <= log2(C(n,r)*n/r)", log2_bigint(level_set_size),
       log2_bigint(c_nr * n) - log2_bigint(BigInt(r)),
       level_set_size * r <= c_nr * n, true);

  // (iv) the binomial estimate chain down to the final exponent.
  const BigInt R_big = floor_div(numerator(high), denominator(high));
  const std::uint64_t R = R_big.convert_to<std::uint64_t>();
  const BigInt c_nR = binomial(n, R);

  {
    // C(n,r)*n/(r*eps) <= (c/(9*eps^3)) * C(n,R); uses r >= 9*eps^2*n/c and
    // C(n,r) <= C(n,R) for r <= R < n/2.
    const Rational lhs = Rational(c_nr * n) / (Rational(r) * epsilon);
    const Rational rhs =
        c / (9 * epsilon * epsilon * epsilon) * Rational(c_nR);
    push("log2(C(n,r)*n/(r*eps)) <= log2((c/(9 eps^3))*C(n,R)), R = floor(10*eps^2*n/c)",
         log2_rational(lhs), log2_rational(rhs), lhs <= rhs, true);
  }

  const double log2_e = 1.4426950408889634;
  const double log2_n = std::log2(static_cast<double>(n));
  const double log2_R = std::log2(static_cast<double>(R));
  const double ub_en_R = static_cast<double>(R) * (log2_e + log2_n - log2_R);
  {
    // C(n,R) <= (en/R)^R, directed: lhs rounded up, rhs rounded down.
    const double lhs_up = log2_bigint(c_nR) + kLogMargin;
    const double rhs_down = ub_en_R - kLogMargin;
    push("log2(C(n,R)) <= R*log2(e*n/R)  [directed +/-1e-9]", lhs_up, rhs_down,
         lhs_up <= rhs_down, false);
  }

  const Rational rho_n = high;  // 10*eps^2*n/c
  const double rho_n_d = rational_to_double(rho_n);
  const Rational base = c / (10 * epsilon * epsilon);      // c/(10 eps^2)
  const double log2_base_e = log2_rational(base) + log2_e;  // log2(c*e/(10 eps^2))
  {
    // (en/R)^R <= (c*e/(10*eps^2))^(10*eps^2*n/c): x*log2(e*n/x) is
    // increasing for x <= n, so the step is decided exactly by
    // R <= 10*eps^2*n/c <= n. Directed rounding would reject the equality
    // case R = 10*eps^2*n/c, which the grid does hit.
    const bool holds = Rational(R_big) <= rho_n && rho_n <= Rational(n);
    push("R*log2(e*n/R) <= (10*eps^2*n/c)*log2(c*e/(10*eps^2))  [monotone in exponent, R <= 10*eps^2*n/c <= n exactly]",
         ub_en_R, rho_n_d * log2_base_e, holds, true);
  }

  const double log2_inv_eps =
      log2_bigint(denominator(epsilon)) - log2_bigint(numerator(epsilon));
  out.log2_bound =
      rational_to_double(Rational(23) / c * eps2 * Rational(n)) * log2_inv_eps;
  {
    // (c/(9*eps^3)) * (c*e/(10*eps^2))^(10*eps^2*n/c) < 2^((23/c)*eps^2*log2(1/eps)*n)
    const Rational front = c / (9 * epsilon * epsilon * epsilon);
    const double lhs_up =
        log2_rational(front) + rho_n_d * log2_base_e + kLogMargin;
    const double rhs_down = out.log2_bound - kLogMargin;
    push("log2((c/(9 eps^3))*(c*e/(10 eps^2))^(10 eps^2 n/c)) < (23/c)*eps^2*log2(1/eps)*n  [directed +/-1e-9]",
         lhs_up, rhs_down, lhs_up < rhs_down, false);
  }
  {
    // Headline composite: |B|/eps < 2^log2_bound.
    const double lhs_up = log2_bigint(level_set_size) + log2_inv_eps + kLogMargin;
    const double rhs_down = out.log2_bound - kLogMargin;
    push("log2(|B|/eps) < (23/c)*eps^2*log2(1/eps)*n  [directed +/-1e-9]", lhs_up,
         rhs_down, lhs_up < rhs_down, false);
  }

  return out;
}

double binary_entropy(double x) {
  if (x < 0 || x > 1) throw std::invalid_argument("binary_entropy: x outside [0,1]");
  if (x == 0 || x == 1) return 0.0;
  return -x * std::log2(x) - (1 - x) * std::log2(1 - x);
}

double mrrw_asymptotic_rate(double delta) {
  if (!(delta > 0 && delta < 0.5)) {
    throw std::invalid_argument("mrrw_asymptotic_rate: delta outside (0, 1/2)");
  }
  return binary_entropy(0.5 - std::sqrt(delta * (1 - delta)));
}

}  // namespace nmlab
