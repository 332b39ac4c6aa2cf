#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "nmlab/code_derivation.hpp"
#include "nmlab/core.hpp"
#include "nmlab/feasibility.hpp"
#include "nmlab/nm_analysis.hpp"
#include "nmlab/search.hpp"
#include "nmlab/spectral.hpp"

namespace nmlab {

inline constexpr const char* kToolName = "nmlab";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kInstanceFormat = "nmlab-1";
inline constexpr const char* kCertificateFormat = "nmlab-cert-1";
inline constexpr const char* kSubsetFormat = "nmlab-subset-1";

using Instance = std::variant<ExtractorTable, EvaluationMatrix>;

/// Canonical instance files ("nmlab-1"): evaluation matrices carry n, d, k,
/// a source list of n-bit hex strings and 2^d rows of K-bit hex; full truth
/// tables omit k/source and use 2^n-bit rows. Hex is lowercase, fixed width,
/// little-endian bit order. Load/save round-trips byte-exactly.
Instance parse_instance(const std::string& text);
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Matrices pass through; tables are evaluated on the full-entropy source.
EvaluationMatrix as_matrix(const Instance& instance);

struct ParsedCertificate {
  DichotomyResult result;
  Rational epsilon;
  unsigned t = 1;
};

std::string certificate_to_json(const DichotomyResult& result,
                                const Rational& epsilon, unsigned t);
ParsedCertificate parse_certificate(const std::string& text);
ParsedCertificate load_certificate(const std::filesystem::path& path);

/// Vertex-subset files ("nmlab-subset-1") for spectral queries.
HypercubeSubset parse_subset(const std::string& text);
HypercubeSubset load_subset(const std::filesystem::path& path);
std::string subset_to_json(const HypercubeSubset& subset);

// Reports. Every report embeds tool name, version and the inputs it was
// computed from, so each printed number is reproducible.
std::string nm_error_report(const EvaluationMatrix& matrix, unsigned t,
                            const NmErrorResult& result, bool csv);
std::string strong_error_report(const EvaluationMatrix& matrix,
                                const Rational& error, bool csv);
std::string verify_report(const VerifyReport& report, const Rational& epsilon,
                          unsigned t, bool csv);
std::string lambda_report(const HypercubeSubset& subset, double tolerance,
                          const LambdaResult& result, bool csv);
std::string mrrw_report(const MrrwQuantResult& result, bool csv);
std::string feasibility_report(const FeasibilityReport& report, bool csv);
std::string search_report(const ExperimentConfig& config,
                          const SearchResult& result, bool csv);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace nmlab
