#include "nmlab/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace nmlab {

namespace {

using Json = nlohmann::ordered_json;

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::uint64_t require_uint(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw std::invalid_argument(std::string("malformed header: missing or non-integer '") +
                                key + "'");
  }
  return j[key].get<std::uint64_t>();
}

void require_keys(const Json& j, std::initializer_list<const char*> keys) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool known = false;
    for (const char* k : keys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw std::invalid_argument("malformed header: unexpected key '" + key + "'");
    }
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed header: not valid JSON (") +
                                e.what() + ")");
  }
}

void check_format(const Json& j, const char* expected) {
  if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
      j["format"].get<std::string>() != expected) {
    throw std::invalid_argument(std::string("malformed header: expected format \"") +
                                expected + "\"");
  }
}

std::uint64_t word_value(const BitVector& v) {
  return v.words().empty() ? 0 : v.words()[0];
}

std::vector<BitVector> parse_rows(const Json& j, std::size_t expected_count,
                                  std::size_t row_bits) {
  if (!j.contains("rows") || !j["rows"].is_array() ||
      j["rows"].size() != expected_count) {
    throw std::invalid_argument("malformed header: 'rows' must list " +
                                std::to_string(expected_count) + " entries");
  }
  std::vector<BitVector> rows;
  rows.reserve(expected_count);
  for (std::size_t s = 0; s < expected_count; ++s) {
    const auto& entry = j["rows"][s];
    if (!entry.is_string()) {
      throw std::invalid_argument("rows[" + std::to_string(s) + "]: not a string");
    }
    try {
      rows.push_back(BitVector::from_hex(entry.get<std::string>(), row_bits));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("rows[" + std::to_string(s) + "]: " + e.what());
    }
  }
  return rows;
}

Json instance_json(const EvaluationMatrix& m) {
  if (!m.source) {
    throw std::invalid_argument("instance_to_json: matrix has no source attached");
  }
  Json j;
  j["format"] = kInstanceFormat;
  j["n"] = m.n;
  j["d"] = m.d;
  j["k"] = m.k;
  Json source = Json::array();
  for (std::uint64_t e : m.source->elements) {
    source.push_back(BitVector::from_word(e, m.n).to_hex());
  }
  j["source"] = std::move(source);
  Json rows = Json::array();
  for (const auto& row : m.rows) rows.push_back(row.to_hex());
  j["rows"] = std::move(rows);
  return j;
}

Json instance_json(const ExtractorTable& t) {
  Json j;
  j["format"] = kInstanceFormat;
  j["n"] = t.n;
  j["d"] = t.d;
  Json rows = Json::array();
  for (const auto& row : t.rows) rows.push_back(row.to_hex());
  j["rows"] = std::move(rows);
  return j;
}

Json provenance(Json inputs) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["inputs"] = std::move(inputs);
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Instance parse_instance(const std::string& text) {
  const Json j = parse_json(text);
  check_format(j, kInstanceFormat);
  const auto n = static_cast<unsigned>(require_uint(j, "n"));
  const auto d = static_cast<unsigned>(require_uint(j, "d"));

  if (j.contains("source") || j.contains("k")) {
    require_keys(j, {"format", "n", "d", "k", "source", "rows"});
    const auto k = static_cast<unsigned>(require_uint(j, "k"));
    if (!j.contains("source") || !j["source"].is_array()) {
      throw std::invalid_argument("malformed header: matrix instance needs 'source'");
    }
    const std::size_t K = std::size_t{1} << k;
    if (j["source"].size() != K) {
      throw std::invalid_argument("malformed header: 'source' must list 2^k elements");
    }
    std::vector<std::uint64_t> elements;
    elements.reserve(K);
    for (std::size_t i = 0; i < K; ++i) {
      const auto& entry = j["source"][i];
      if (!entry.is_string()) {
        throw std::invalid_argument("source[" + std::to_string(i) + "]: not a string");
      }
      try {
        elements.push_back(word_value(BitVector::from_hex(entry.get<std::string>(), n)));
      } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("source[" + std::to_string(i) + "]: " + e.what());
      }
    }
    EvaluationMatrix m;
    m.n = n;
    m.d = d;
    m.k = k;
    m.rows = parse_rows(j, std::size_t{1} << d, K);
    m.source = FlatSource(n, k, std::move(elements));  // throws on duplicates
    m.validate();
    return m;
  }

  require_keys(j, {"format", "n", "d", "rows"});
  auto rows = parse_rows(j, std::size_t{1} << d, std::size_t{1} << n);
  return ExtractorTable(n, d, std::move(rows));
}

Instance load_instance(const std::filesystem::path& path) {
  return parse_instance(read_text(path));
}

std::string instance_to_json(const Instance& instance) {
  return std::visit([](const auto& value) { return dump(instance_json(value)); },
                    instance);
}

void save_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance));
}

EvaluationMatrix as_matrix(const Instance& instance) {
  if (std::holds_alternative<EvaluationMatrix>(instance)) {
    return std::get<EvaluationMatrix>(instance);
  }
  const auto& table = std::get<ExtractorTable>(instance);
  return evaluation_matrix(table, FlatSource::full(table.n));
}

std::string certificate_to_json(const DichotomyResult& result,
                                const Rational& epsilon, unsigned t) {
  Json j;
  j["format"] = kCertificateFormat;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["epsilon"] = rational_to_string(epsilon);
  j["t"] = t;
  if (result.is_code()) {
    const DerivedCode& code = result.code();
    j["outcome"] = "code";
    Json body;
    body["construction"] = code.construction == CodeConstruction::pairwise
                               ? "pairwise"
                               : "gf2-combinations";
    body["seed_subset"] = code.seed_subset;
    body["claimed_distance"] = rational_to_string(code.claimed_distance);
    Json words = Json::array();
    for (const auto& w : code.codewords) words.push_back(w.to_hex());
    body["codewords"] = std::move(words);
    body["codeword_bits"] = code.codewords.empty() ? 0 : code.codewords[0].size();
    j["code"] = std::move(body);
  } else {
    const AdversaryCertificate& cert = result.adversary();
    j["outcome"] = "adversary";
    Json body;
    body["groups"] = cert.bad_seed_groups;
    body["maps"] = cert.adversaries.maps;
    body["acceptance_real"] = rational_to_string(cert.acceptance_real);
    body["acceptance_ideal"] = rational_to_string(cert.acceptance_ideal);
    body["advantage"] = rational_to_string(cert.advantage);
    j["adversary"] = std::move(body);
  }
  return dump(j);
}

ParsedCertificate parse_certificate(const std::string& text) {
  const Json j = parse_json(text);
  check_format(j, kCertificateFormat);
  ParsedCertificate out;
  out.epsilon = parse_rational(j.at("epsilon").get<std::string>());
  out.t = static_cast<unsigned>(require_uint(j, "t"));
  const std::string outcome = j.at("outcome").get<std::string>();
  if (outcome == "code") {
    const Json& body = j.at("code");
    DerivedCode code;
    const std::string construction = body.at("construction").get<std::string>();
    if (construction == "pairwise") {
      code.construction = CodeConstruction::pairwise;
    } else if (construction == "gf2-combinations") {
      code.construction = CodeConstruction::gf2_combinations;
    } else {
      throw std::invalid_argument("certificate: unknown construction");
    }
    code.t = out.t;
    code.seed_subset = body.at("seed_subset").get<std::vector<std::uint32_t>>();
    code.claimed_distance = parse_rational(body.at("claimed_distance").get<std::string>());
    const std::size_t bits = body.at("codeword_bits").get<std::size_t>();
    for (const auto& entry : body.at("codewords")) {
      code.codewords.push_back(BitVector::from_hex(entry.get<std::string>(), bits));
    }
    return ParsedCertificate{DichotomyResult{std::move(code)}, out.epsilon, out.t};
  }
  if (outcome != "adversary") {
    throw std::invalid_argument("certificate: unknown outcome");
  }
  const Json& body = j.at("adversary");
  AdversaryCertificate cert;
  cert.bad_seed_groups =
      body.at("groups").get<std::vector<std::vector<std::uint32_t>>>();
  cert.adversaries.maps =
      body.at("maps").get<std::vector<std::vector<std::uint32_t>>>();
  cert.adversaries.seed_count =
      cert.adversaries.maps.empty() ? 0 : cert.adversaries.maps[0].size();
  cert.acceptance_real = parse_rational(body.at("acceptance_real").get<std::string>());
  cert.acceptance_ideal = parse_rational(body.at("acceptance_ideal").get<std::string>());
  cert.advantage = parse_rational(body.at("advantage").get<std::string>());
  return ParsedCertificate{DichotomyResult{std::move(cert)}, out.epsilon, out.t};
}

ParsedCertificate load_certificate(const std::filesystem::path& path) {
  return parse_certificate(read_text(path));
}

HypercubeSubset parse_subset(const std::string& text) {
  const Json j = parse_json(text);
  check_format(j, kSubsetFormat);
  require_keys(j, {"format", "n", "members"});
  const auto n = static_cast<unsigned>(require_uint(j, "n"));
  std::vector<std::uint32_t> members;
  for (const auto& entry : j.at("members")) {
    members.push_back(static_cast<std::uint32_t>(
        word_value(BitVector::from_hex(entry.get<std::string>(), n))));
  }
  return HypercubeSubset(n, std::move(members));
}

HypercubeSubset load_subset(const std::filesystem::path& path) {
  return parse_subset(read_text(path));
}

std::string subset_to_json(const HypercubeSubset& subset) {
  Json j;
  j["format"] = kSubsetFormat;
  j["n"] = subset.n;
  Json members = Json::array();
  for (std::uint32_t v : subset.members) {
    members.push_back(BitVector::from_word(v, subset.n).to_hex());
  }
  j["members"] = std::move(members);
  return dump(j);
}

std::string nm_error_report(const EvaluationMatrix& matrix, unsigned t,
                            const NmErrorResult& result, bool csv) {
  if (csv) {
    std::string out = "name,value\n";
    out += "error," + rational_to_string(result.error) + "\n";
    for (std::size_t s = 0; s < result.per_seed_tv.size(); ++s) {
      out += "per_seed_tv[" + std::to_string(s) + "]," +
             rational_to_string(result.per_seed_tv[s]) + "\n";
    }
    return out;
  }
  Json inputs;
  inputs["n"] = matrix.n;
  inputs["d"] = matrix.d;
  inputs["k"] = matrix.k;
  inputs["t"] = t;
  Json j = provenance(std::move(inputs));
  j["error"] = rational_to_string(result.error);
  Json per_seed = Json::array();
  for (const auto& tv : result.per_seed_tv) per_seed.push_back(rational_to_string(tv));
  j["per_seed_tv"] = std::move(per_seed);
  j["witness_maps"] = result.witness.maps;
  return dump(j);
}

std::string strong_error_report(const EvaluationMatrix& matrix,
                                const Rational& error, bool csv) {
  if (csv) {
    return "name,value\nstrong_error," + rational_to_string(error) + "\n";
  }
  Json inputs;
  inputs["n"] = matrix.n;
  inputs["d"] = matrix.d;
  inputs["k"] = matrix.k;
  Json j = provenance(std::move(inputs));
  j["strong_error"] = rational_to_string(error);
  return dump(j);
}

std::string verify_report(const VerifyReport& report, const Rational& epsilon,
                          unsigned t, bool csv) {
  if (csv) {
    std::string out = "name,value\n";
    out += std::string("pass,") + (report.pass ? "true" : "false") + "\n";
    if (!report.violation.empty()) out += "violation," + csv_field(report.violation) + "\n";
    if (report.recomputed_min_distance) {
      out += "min_distance," + rational_to_string(*report.recomputed_min_distance) + "\n";
    }
    if (report.recomputed_advantage) {
      out += "advantage," + rational_to_string(*report.recomputed_advantage) + "\n";
    }
    return out;
  }
  Json inputs;
  inputs["epsilon"] = rational_to_string(epsilon);
  inputs["t"] = t;
  Json j = provenance(std::move(inputs));
  j["pass"] = report.pass;
  if (!report.violation.empty()) j["violation"] = report.violation;
  if (report.recomputed_min_distance) {
    j["min_distance"] = rational_to_string(*report.recomputed_min_distance);
  }
  if (report.recomputed_advantage) {
    j["advantage"] = rational_to_string(*report.recomputed_advantage);
  }
  return dump(j);
}

std::string lambda_report(const HypercubeSubset& subset, double tolerance,
                          const LambdaResult& result, bool csv) {
  if (csv) {
    std::string out = "name,value\n";
    out += "lambda," + format_double(result.value) + "\n";
    out += "iterations," + std::to_string(result.iterations) + "\n";
    out += "residual," + format_double(result.residual) + "\n";
    return out;
  }
  Json inputs;
  inputs["n"] = subset.n;
  inputs["size"] = subset.size();
  inputs["tolerance"] = tolerance;
  Json j = provenance(std::move(inputs));
  j["lambda"] = result.value;
  j["iterations"] = result.iterations;
  j["residual"] = result.residual;
  return dump(j);
}

std::string mrrw_report(const MrrwQuantResult& result, bool csv) {
  if (csv) {
    std::string out = "name,lhs,rhs,holds\n";
    for (const auto& ineq : result.chain.inequalities) {
      out += csv_field(ineq.description) + "," + format_double(ineq.lhs) + "," +
             format_double(ineq.rhs) + "," + (ineq.holds ? "true" : "false") + "\n";
    }
    return out;
  }
  Json inputs;
  inputs["c"] = rational_to_string(result.chain.c);
  inputs["epsilon"] = rational_to_string(result.chain.epsilon);
  inputs["n"] = result.chain.n;
  Json j = provenance(std::move(inputs));
  j["log2_bound"] = result.log2_bound;
  j["r"] = result.chain.r;
  j["all_hold"] = result.chain.all_hold();
  Json chain = Json::array();
  for (const auto& ineq : result.chain.inequalities) {
    Json entry;
    entry["name"] = ineq.description;
    entry["lhs"] = ineq.lhs;
    entry["rhs"] = ineq.rhs;
    entry["holds"] = ineq.holds;
    entry["exact"] = ineq.exact;
    chain.push_back(std::move(entry));
  }
  j["chain"] = std::move(chain);
  return dump(j);
}

std::string feasibility_report(const FeasibilityReport& report, bool csv) {
  if (csv) {
    std::string out = "name,lhs,rhs,verdict\n";
    for (const auto& v : report.verdicts) {
      out += csv_field(v.name) + "," + format_double(v.lhs) + "," +
             format_double(v.rhs) + "," +
             (v.applicable ? (v.pass ? "pass" : "fail") : "inapplicable") + "\n";
    }
    return out;
  }
  Json inputs;
  inputs["n"] = report.n;
  inputs["k"] = report.k;
  inputs["d"] = report.d;
  inputs["t"] = report.t;
  inputs["epsilon"] = rational_to_string(report.epsilon);
  Json constants;
  constants["C_main"] = report.constants.C_main;
  constants["c_rt"] = report.constants.c_rt;
  constants["C_bcdls_d"] = report.constants.C_bcdls_d;
  constants["C_bcdls_k"] = report.constants.C_bcdls_k;
  Json j = provenance(std::move(inputs));
  j["constants"] = std::move(constants);
  j["d_lower"] = report.d_lower;
  if (report.k_lower) j["k_lower"] = *report.k_lower;
  j["k_lower_strong"] = report.k_lower_strong;
  j["d_upper_exist"] = report.d_upper_exist;
  j["k_upper_exist"] = report.k_upper_exist;
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json entry;
    entry["name"] = v.name;
    entry["lhs"] = v.lhs;
    entry["rhs"] = v.rhs;
    entry["relation"] = v.relation;
    entry["verdict"] = v.applicable ? (v.pass ? "pass" : "fail") : "inapplicable";
    verdicts.push_back(std::move(entry));
  }
  j["verdicts"] = std::move(verdicts);
  j["caveats"] = report.caveats;
  return dump(j);
}

std::string search_report(const ExperimentConfig& config,
                          const SearchResult& result, bool csv) {
  if (csv) {
    std::string out = "name,value\n";
    out += "best_error," + rational_to_string(result.best_error) + "\n";
    out += "best_trial," + std::to_string(result.best_trial) + "\n";
    for (std::size_t i = 0; i < result.error_trace.size(); ++i) {
      out += "trace[" + std::to_string(i) + "]," +
             rational_to_string(result.error_trace[i]) + "\n";
    }
    return out;
  }
  Json inputs;
  inputs["master_seed"] = config.master_seed;
  inputs["trials"] = config.trials;
  inputs["n"] = config.n;
  inputs["d"] = config.d;
  inputs["k"] = config.k;
  inputs["t"] = config.t;
  if (config.epsilon) inputs["epsilon"] = rational_to_string(*config.epsilon);
  Json j = provenance(std::move(inputs));
  j["best_error"] = rational_to_string(result.best_error);
  j["best_trial"] = result.best_trial;
  j["best"] = instance_json(result.best);
  Json trace = Json::array();
  for (const auto& e : result.error_trace) trace.push_back(rational_to_string(e));
  j["error_trace"] = std::move(trace);
  return dump(j);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace nmlab
