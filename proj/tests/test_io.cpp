#include <doctest.h>

#include <filesystem>
#include <string>

#include "nmlab/code_derivation.hpp"
#include "nmlab/io.hpp"

using namespace nmlab;

namespace {

const std::filesystem::path kFixtures = NMLAB_FIXTURE_DIR;

Instance ip_matrix_instance() {
  return evaluation_matrix(ExtractorTable::inner_product(2), FlatSource::full(2));
}

}  // namespace

TEST_CASE("instance serialization round-trips through text") {
  const Instance original = ip_matrix_instance();
  const std::string text = instance_to_json(original);
  const Instance reloaded = parse_instance(text);
  CHECK(instance_to_json(reloaded) == text);

  const auto& m = std::get<EvaluationMatrix>(reloaded);
  const auto& o = std::get<EvaluationMatrix>(original);
  CHECK(m.rows == o.rows);
  CHECK(m.source->elements == o.source->elements);
}

TEST_CASE("table serialization round-trips and re-evaluates") {
  const Instance original = ExtractorTable::inner_product(3);
  const std::string text = instance_to_json(original);
  const Instance reloaded = parse_instance(text);
  CHECK(instance_to_json(reloaded) == text);
  const auto& t = std::get<ExtractorTable>(reloaded);
  CHECK(t.rows == std::get<ExtractorTable>(original).rows);

  // tables evaluate on the full-entropy source
  const auto m = as_matrix(reloaded);
  CHECK(m.k == 3);
  CHECK(m.rows == evaluation_matrix(t, FlatSource::full(3)).rows);
}

TEST_CASE("fixture files round-trip byte-exactly") {
  for (const auto& entry : std::filesystem::directory_iterator(kFixtures)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("valid_", 0) != 0) continue;
    CAPTURE(name);
    const std::string bytes = read_text(entry.path());
    const Instance instance = parse_instance(bytes);
    CHECK(instance_to_json(instance) == bytes);
  }
}

TEST_CASE("malformed instances raise the named errors") {
  SUBCASE("wrong format field") {
    CHECK_THROWS_WITH_AS(load_instance(kFixtures / "malformed_header.json"),
                         doctest::Contains("malformed header"), std::invalid_argument);
  }
  SUBCASE("row length mismatch names the row") {
    try {
      load_instance(kFixtures / "malformed_rowlen.json");
      FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
      const std::string what = e.what();
      CHECK(what.find("row-length mismatch") != std::string::npos);
      CHECK(what.find("rows[2]") != std::string::npos);
    }
  }
  SUBCASE("duplicate source elements") {
    CHECK_THROWS_WITH_AS(load_instance(kFixtures / "malformed_dup_source.json"),
                         doctest::Contains("duplicate source elements"),
                         std::invalid_argument);
  }
  SUBCASE("non-canonical hex") {
    CHECK_THROWS_WITH_AS(load_instance(kFixtures / "malformed_hex.json"),
                         doctest::Contains("non-canonical hex"), std::invalid_argument);
  }
  SUBCASE("unexpected key") {
    CHECK_THROWS_WITH_AS(parse_instance("{\"format\":\"nmlab-1\",\"n\":1,\"d\":1,"
                                        "\"rows\":[\"0\",\"0\"],\"extra\":1}"),
                         doctest::Contains("unexpected key"), std::invalid_argument);
  }
  SUBCASE("not JSON at all") {
    CHECK_THROWS_WITH_AS(parse_instance("hello"), doctest::Contains("malformed header"),
                         std::invalid_argument);
  }
}

TEST_CASE("certificates serialize and parse") {
  const auto m = std::get<EvaluationMatrix>(ip_matrix_instance());

  SUBCASE("code outcome") {
    const auto result = derive_pairwise(m, Rational(1, 8));
    const std::string text = certificate_to_json(result, Rational(1, 8), 1);
    const auto parsed = parse_certificate(text);
    CHECK(parsed.epsilon == Rational(1, 8));
    CHECK(parsed.t == 1);
    CHECK(certificate_to_json(parsed.result, parsed.epsilon, parsed.t) == text);
    CHECK(verify_certificate(m, parsed.result, parsed.epsilon, parsed.t).pass);
  }

  SUBCASE("adversary outcome") {
    const auto result = derive_combinations(m, Rational(1, 16), 2);
    const std::string text = certificate_to_json(result, Rational(1, 16), 2);
    const auto parsed = parse_certificate(text);
    CHECK(certificate_to_json(parsed.result, parsed.epsilon, parsed.t) == text);
    CHECK(verify_certificate(m, parsed.result, parsed.epsilon, parsed.t).pass);
  }
}

TEST_CASE("subset files") {
  const auto subset = HypercubeSubset::from_levels(4, {0, 1});
  const std::string text = subset_to_json(subset);
  const auto reloaded = parse_subset(text);
  CHECK(reloaded.n == 4);
  CHECK(reloaded.members == subset.members);
  CHECK(subset_to_json(reloaded) == text);
}

TEST_CASE("feasibility CSV lists one row per inequality") {
  const auto report = evaluate_feasibility(1u << 16, 40, 32, 1, Rational(1, 256));
  const std::string csv = feasibility_report(report, /*csv=*/true);
  CHECK(csv.rfind("name,lhs,rhs,verdict\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) {
    if (c == '\n') ++lines;
  }
  CHECK(lines == 1 + report.verdicts.size());
  CHECK(csv.find("d > d_lower (necessary)") != std::string::npos);
  CHECK(csv.find("pass") != std::string::npos);
}

TEST_CASE("reports embed tool, version and inputs") {
  const auto m = std::get<EvaluationMatrix>(ip_matrix_instance());
  const std::string report = strong_error_report(m, strong_error(m), /*csv=*/false);
  CHECK(report.find("\"tool\": \"nmlab\"") != std::string::npos);
  CHECK(report.find("\"version\": \"0.1.0\"") != std::string::npos);
  CHECK(report.find("\"inputs\"") != std::string::npos);
  CHECK(report.find("1/8") != std::string::npos);
}
