#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nmlab/rational.hpp"

namespace nmlab {

/// Vertex subset B of the n-dimensional hypercube graph.
struct HypercubeSubset {
  unsigned n = 0;
  std::vector<std::uint32_t> members;  // sorted, distinct, < 2^n

  HypercubeSubset() = default;
  HypercubeSubset(unsigned n, std::vector<std::uint32_t> members);

  /// All vertices whose Hamming weight lies in `levels`.
  static HypercubeSubset from_levels(unsigned n, const std::vector<unsigned>& levels);

  std::size_t size() const { return members.size(); }
};

struct LambdaResult {
  double value = 0.0;    // largest adjacency eigenvalue of the induced subgraph
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct PowerIterationOptions {
  std::size_t max_iterations = 2'000'000;
  std::uint64_t restart_seed = 0x6c62272e07bb0142ull;
};

/// Top eigenvalue of the induced subgraph, to additive `tolerance`, via
/// power iteration on the shifted operator A + nI (the shift defeats the
/// +/-lambda oscillation of bipartite spectra). Starts from the all-ones
/// vector, which always overlaps the top (Perron) eigenvector; a stagnating
/// run is restarted once from a seeded pseudorandom vector.
/// Throws on an empty subset or on non-convergence (message carries the
/// final residual).
LambdaResult lambda_b(const HypercubeSubset& subset, double tolerance,
                      const PowerIterationOptions& options = {});

/// f = a on Hamming level r, b on level r+1, 0 elsewhere.
struct TwoLevelFunction {
  unsigned n = 0;
  unsigned r = 0;
  Rational a;
  Rational b;
};

struct TwoLevelRayleigh {
  /// 2ab*C(n,r)*(n-r) / (a^2*C(n,r) + b^2*C(n,r+1)); the 2 counts both
  /// orientations of every edge in <Af,f>.
  Rational exact;
  /// sqrt(rn)*(n-r)/(2n-r): the conservative closed form reached at
  /// b = a*sqrt(r/n). It drops the orientation factor 2, so it lower-bounds
  /// `exact` at that b; both values are reported.
  double closed_form = 0.0;
};

TwoLevelRayleigh two_level_rayleigh(const TwoLevelFunction& f);

/// The exact Rayleigh quotient evaluated at the irrational optimum
/// b = a*sqrt(r/n) (exact rational core times one square root).
double two_level_rayleigh_at_optimum(unsigned n, unsigned r);

double two_level_closed_form(unsigned n, unsigned r);

/// Cardinality bound from a spectral witness: if lambda_B >= (1-2*delta+eps)n
/// then any code of relative distance delta has |C| <= |B|/eps. The estimate
/// tolerance is subtracted from the threshold so a power-iteration value (a
/// lower approximation) just at the boundary still applies.
struct NsBoundReport {
  bool applicable = false;
  double lambda = 0.0;
  double threshold = 0.0;  // (1 - 2*delta + eps) * n, unadjusted
  double margin = 0.0;     // tolerance subtracted from the threshold
  double gap = 0.0;        // threshold - lambda when inapplicable
  Rational cardinality_bound;  // |B|/eps when applicable
};

NsBoundReport ns_bound(const Rational& delta, const Rational& epsilon,
                       const HypercubeSubset& subset, double lambda_value,
                       double tolerance = 0.0);

struct InequalityRecord {
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool exact = false;  // verified with integer/rational arithmetic
};

struct MrrwChainReport {
  Rational c;
  Rational epsilon;
  std::uint64_t n = 0;
  std::uint64_t r = 0;  // smallest integer in [9*eps^2*n/c, 10*eps^2*n/c]
  std::vector<InequalityRecord> inequalities;

  bool all_hold() const;
};

struct MrrwQuantResult {
  double log2_bound = 0.0;  // (23/c) * eps^2 * log2(1/eps) * n
  MrrwChainReport chain;
};

/// Verifies the full quantitative rate-bound chain at (c, epsilon, n):
/// the level choice r, the two-level spectral witness, the level-set size
/// bound and the binomial estimate chain, ending at 2^log2_bound. Exact
/// steps use big integers; the remaining comparisons use directed rounding
/// with a recorded 1e-9 margin.
MrrwQuantResult mrrw_quant(const Rational& c, const Rational& epsilon,
                           std::uint64_t n);

/// H(1/2 - sqrt(delta*(1-delta))) for delta in (0, 1/2); the classical
/// asymptotic rate bound, reported without its o(1) term.
double mrrw_asymptotic_rate(double delta);

/// Binary entropy; H(0) = H(1) = 0.
double binary_entropy(double x);

}  // namespace nmlab
