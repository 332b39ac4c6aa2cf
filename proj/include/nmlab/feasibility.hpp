#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmlab/rational.hpp"

namespace nmlab {

/// The absolute constants left unspecified by the bounds; defaults of zero
/// make every output "up to additive constants" (flagged in the report).
struct ConstantsConfig {
  double C_main = 0.0;    // additive slack in both necessary bounds
  double c_rt = 0.0;      // additive slack in the strong-extractor bound
  double C_bcdls_d = 0.0; // additive slack in the existence seed-length bound
  double C_bcdls_k = 0.0; // additive slack in the existence entropy bound
};

struct FeasibilityVerdict {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // e.g. ">", ">="
  bool applicable = true;
  bool pass = false;
};

struct FeasibilityReport {
  std::uint64_t n = 0, k = 0, d = 0, t = 0;
  Rational epsilon;
  ConstantsConfig constants;

  double d_lower = 0.0;                 // log2(n-k) + 2*log2(1/eps) - C_main
  std::optional<double> k_lower;        // needs eps < 1/2 for the log-log term
  double k_lower_strong = 0.0;          // 2*log2(1/eps) - c_rt
  double d_upper_exist = 0.0;           // log2(n) + 2*log2(1/eps) + 2*log2(t) + C
  double k_upper_exist = 0.0;           // log2(d) + 2*log2(1/eps) + t + C

  std::vector<FeasibilityVerdict> verdicts;
  std::vector<std::string> caveats;
};

/// Evaluates the necessary-side and existence-side parameter formulas at
/// (n, k, d, t, epsilon) and compares the given d and k against each.
FeasibilityReport evaluate_feasibility(std::uint64_t n, std::uint64_t k,
                                       std::uint64_t d, std::uint64_t t,
                                       const Rational& epsilon,
                                       const ConstantsConfig& constants = {});

}  // namespace nmlab
