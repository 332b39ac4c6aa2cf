#include "nmlab/feasibility.hpp"

#include <cmath>
#include <stdexcept>

namespace nmlab {

FeasibilityReport evaluate_feasibility(std::uint64_t n, std::uint64_t k,
                                       std::uint64_t d, std::uint64_t t,
                                       const Rational& epsilon,
                                       const ConstantsConfig& constants) {
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("evaluate_feasibility: epsilon must be in (0, 1)");
  }
  if (!(n > k && k >= 1)) {
    throw std::invalid_argument("evaluate_feasibility: need n > k >= 1");
  }
  if (d < 1 || t < 1) {
    throw std::invalid_argument("evaluate_feasibility: need d >= 1 and t >= 1");
  }

  FeasibilityReport report;
  report.n = n;
  report.k = k;
  report.d = d;
  report.t = t;
  report.epsilon = epsilon;
  report.constants = constants;

  const double log2_inv_eps =
      log2_bigint(denominator(epsilon)) - log2_bigint(numerator(epsilon));
  const double log2_d = std::log2(static_cast<double>(d));
  const double log2_t = std::log2(static_cast<double>(t));

  report.d_lower = std::log2(static_cast<double>(n - k)) + 2 * log2_inv_eps -
                   constants.C_main;
  report.k_lower_strong = 2 * log2_inv_eps - constants.c_rt;
  if (epsilon < Rational(1, 2)) {
    report.k_lower = log2_d + 2 * log2_inv_eps - std::log2(log2_inv_eps) +
                     log2_t - constants.C_main;
  } else {
    report.caveats.push_back(
        "epsilon >= 1/2: log(log(1/epsilon)) undefined, k_lower omitted");
  }
  report.d_upper_exist = std::log2(static_cast<double>(n)) + 2 * log2_inv_eps +
                         2 * log2_t + constants.C_bcdls_d;
  report.k_upper_exist =
      log2_d + 2 * log2_inv_eps + static_cast<double>(t) + constants.C_bcdls_k;

  // t <= 2^(d/2) is a hypothesis of the necessary-side bounds.
  const bool hypothesis_ok = 2 * log2_t <= static_cast<double>(d);
  if (!hypothesis_ok) {
    report.caveats.push_back("t > 2^(d/2): necessary-side bounds inapplicable");
  }

  const double dd = static_cast<double>(d);
  const double kk = static_cast<double>(k);

  auto add = [&](std::string name, double lhs, double rhs, std::string rel,
                 bool applicable, bool pass) {
    report.verdicts.push_back(FeasibilityVerdict{std::move(name), lhs, rhs,
                                                 std::move(rel), applicable,
                                                 applicable && pass});
  };

  add("d > d_lower (necessary)", dd, report.d_lower, ">", hypothesis_ok,
      dd > report.d_lower);
  if (report.k_lower) {
    add("k >= k_lower (necessary)", kk, *report.k_lower, ">=", hypothesis_ok,
        kk >= *report.k_lower);
  }
  add("k >= k_lower_strong (necessary)", kk, report.k_lower_strong, ">=",
      hypothesis_ok, kk >= report.k_lower_strong);
  add("d >= d_upper_exist (existence regime)", dd, report.d_upper_exist, ">=",
      true, dd >= report.d_upper_exist);
  add("k >= k_upper_exist (existence regime)", kk, report.k_upper_exist, ">=",
      true, kk >= report.k_upper_exist);

  if (constants.C_main == 0 && constants.c_rt == 0 && constants.C_bcdls_d == 0 &&
      constants.C_bcdls_k == 0) {
    report.caveats.push_back("all constants zero: values are up to additive constants");
  }
  return report;
}

}  // namespace nmlab
