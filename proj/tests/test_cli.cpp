#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  std::string out;
  int exit_code = -1;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd =
      env + " " + std::string(LADDERBOSON_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t got;
  while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

json load_schema(const std::string& name) {
  std::ifstream f(std::string(LADDERBOSON_SCHEMA_DIR) + "/" + name);
  REQUIRE(f.good());
  return json::parse(f);
}

// Validator for the schema subset these files use: type, properties,
// required, items, enum, additionalProperties: false.
bool matches_schema(const json& value, const json& schema, std::string* why) {
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    const bool ok = (type == "object" && value.is_object()) ||
                    (type == "array" && value.is_array()) ||
                    (type == "string" && value.is_string()) ||
                    (type == "integer" && value.is_number_integer()) ||
                    (type == "number" && value.is_number()) ||
                    (type == "boolean" && value.is_boolean());
    if (!ok) {
      *why = "type mismatch, wanted " + type + " got " + value.dump().substr(0, 80);
      return false;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"]) found = found || candidate == value;
    if (!found) {
      *why = "enum mismatch: " + value.dump();
      return false;
    }
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) {
        *why = "missing required key " + key.get<std::string>();
        return false;
      }
    }
  }
  if (schema.contains("properties")) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key) && !matches_schema(value.at(key), sub, why)) {
        *why = key + ": " + *why;
        return false;
      }
    }
    if (schema.value("additionalProperties", json(true)) == json(false)) {
      for (const auto& [key, unused] : value.items()) {
        if (!schema["properties"].contains(key)) {
          *why = "unexpected key " + key;
          return false;
        }
      }
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& element : value)
      if (!matches_schema(element, schema["items"], why)) {
        *why = "items: " + *why;
        return false;
      }
  }
  return true;
}

void check_against_schema(const json& value, const std::string& schema_file) {
  std::string why;
  const bool ok = matches_schema(value, load_schema(schema_file), &why);
  INFO(schema_file, ": ", why);
  CHECK(ok);
}

}  // namespace

TEST_CASE("betas emits exact CSV rows") {
  const RunResult r = run_cli("betas --m 1 --k 2 --M 2 --ell 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "n,beta\n0,4\n1,12\n2,0\n");

  const RunResult one_photon = run_cli("betas --m 1 --k 1 --M 3 --ell 0");
  CHECK(one_photon.exit_code == 0);
  CHECK(one_photon.out == "n,beta\n0,3\n1,4\n2,3\n3,0\n");
}

TEST_CASE("betas json matches its schema") {
  const RunResult r = run_cli("betas --m 1 --k 2 --M 2 --format json");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_against_schema(doc, "betas.schema.json");
  CHECK(doc["beta"] == json::array({"4", "12", "0"}));
  CHECK(doc["subspace"]["N"] == 2);
}

TEST_CASE("missing required options exit with the usage code") {
  CHECK(run_cli("betas --m 1 --M 2").exit_code == 1);
  CHECK(run_cli("evolve --m 1 --k 2 --M 2").exit_code == 1);
  CHECK(run_cli("betas --m 1 --k 2 --M 2 --format yaml").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("invalid subspace parameters exit with the validation code") {
  CHECK(run_cli("betas --m 1 --k 2 --M 2 --ell 2").exit_code == 1);
  CHECK(run_cli("betas --m 0 --k 2 --M 2").exit_code == 1);
}

TEST_CASE("gtable emits the exact coefficient rows") {
  const RunResult r = run_cli("gtable --m 1 --k 2 --M 2 --depth 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "l,n,g\n0,0,1\n0,1,1\n0,2,1\n1,0,4\n1,1,16\n1,2,16\n2,0,64\n2,1,256\n2,2,256\n");

  const RunResult j = run_cli("gtable --m 1 --k 2 --M 2 --depth 2 --format json");
  CHECK(j.exit_code == 0);
  const json doc = json::parse(j.out);
  check_against_schema(doc, "gtable.schema.json");
  CHECK(doc["g"][2] == json::array({"64", "256", "256"}));
}

TEST_CASE("evolve emits the closed-form two-rung amplitudes") {
  const RunResult r = run_cli("evolve --m 1 --k 2 --M 1 --tau 0.5");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_against_schema(doc, "evolve.schema.json");
  CHECK(doc["method"] == "series");
  const double arg = std::sqrt(2.0) * 0.5;
  CHECK(std::abs(doc["gamma"][0].get<double>() - std::cos(arg)) <= 1e-13);
  CHECK(std::abs(doc["gamma"][1].get<double>() - std::sin(arg) / std::sqrt(2.0)) <= 1e-13);
  CHECK(std::abs(doc["psi"]["im"][1].get<double>() + std::sin(arg)) <= 1e-13);
  CHECK(std::abs(doc["norm"].get<double>() - 1.0) <= 1e-12);

  const RunResult at_zero = run_cli("evolve --m 1 --k 2 --M 5 --tau 0");
  const json zero_doc = json::parse(at_zero.out);
  CHECK(zero_doc["gamma"][0] == 1.0);
  CHECK(zero_doc["norm"] == 1.0);
}

TEST_CASE("evolve honors the cancellation guard threshold") {
  const RunResult r = run_cli("evolve --m 1 --k 2 --M 6 --tau 0.3 --theta 0.001");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_against_schema(doc, "evolve.schema.json");
  CHECK(doc["method"] == "propagator_fallback");
  CHECK(std::abs(doc["norm"].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("output bytes are deterministic across runs") {
  const std::string args = "evolve --m 1 --k 2 --M 7 --tau 0.31";
  const RunResult a = run_cli(args);
  const RunResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("pump report carries mass, means, and per-subspace records") {
  const RunResult r = run_cli("pump --m 1 --k 2 --alpha 4 --tau 0.02");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_against_schema(doc, "pump.schema.json");
  CHECK(doc["norm"].get<double>() >= 1.0 - 2e-12);
  const double r_param = 2.0 * 4.0 * 0.02;
  const double expected = std::sinh(r_param) * std::sinh(r_param);
  CHECK(std::abs(doc["signal_mean"][0].get<double>() - expected) <= 0.05 * expected);

  const RunResult at_zero = run_cli("pump --m 1 --k 2 --alpha 4 --tau 0");
  const json zero_doc = json::parse(at_zero.out);
  CHECK(std::abs(zero_doc["signal_mean"][0].get<double>()) <= 1e-14);
}

TEST_CASE("pump optionally emits fidelity and per-subspace amplitudes") {
  const RunResult r =
      run_cli("pump --m 1 --k 2 --alpha 4 --tau 0.02 --fidelity --amplitudes");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.out);
  check_against_schema(doc, "pump.schema.json");
  CHECK(doc["fidelity"].get<double>() >= 0.0);
  CHECK(doc["fidelity"].get<double>() <= 1.0 + 1e-12);
  CHECK(doc["subspaces"][0].contains("psi"));

  const RunResult wrong =
      run_cli("pump --m 1 --k 3 --alpha 4 --tau 0.02 --fidelity");
  CHECK(wrong.exit_code == 1);  // fidelity defined only for the k=2 model
}

TEST_CASE("pump honors the dimension cap from environment and flag") {
  CHECK(run_cli("pump --m 1 --k 2 --alpha 4 --tau 0.01",
                "LADDERBOSON_MAX_DIM=3").exit_code == 1);
  CHECK(run_cli("pump --m 1 --k 2 --alpha 4 --tau 0.01 --max-dim 2001",
                "LADDERBOSON_MAX_DIM=3").exit_code == 0);
}

TEST_CASE("compare-parametric emits the exact header and small-r errors") {
  const RunResult r = run_cli("compare-parametric --alpha 4 --r 1e-5");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "n,gamma_exact,gamma_param,rel_err");
  std::string row;
  int rows = 0;
  while (std::getline(lines, row) && rows < 4) {
    const auto last_comma = row.rfind(',');
    CHECK(std::stod(row.substr(last_comma + 1)) <= 1e-8);
    ++rows;
  }
  CHECK(rows == 4);

  const RunResult j = run_cli(
      "compare-parametric --alpha 4 --r 0.25 --neighbors --format json");
  CHECK(j.exit_code == 0);
  const json doc = json::parse(j.out);
  check_against_schema(doc, "compare_parametric.schema.json");
  CHECK(doc["main"]["N"] == 16);
  CHECK(doc["neighbors"].size() == 2);
}

TEST_CASE("validate runs a suite and honors the corrupted tolerance") {
  const RunResult ok = run_cli("validate --suite beamsplitter");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("[PASS] beamsplitter") != std::string::npos);

  const RunResult corrupted =
      run_cli("validate --suite beamsplitter --override-tol 1e-30");
  CHECK(corrupted.exit_code == 2);
  CHECK(corrupted.out.find("[FAIL] beamsplitter") != std::string::npos);

  CHECK(run_cli("validate --suite no-such-suite").exit_code == 1);
}

TEST_CASE("file output is written atomically") {
  const std::string path = "/tmp/ladderboson_cli_test_output.csv";
  std::remove(path.c_str());
  const RunResult r =
      run_cli("betas --m 1 --k 2 --M 2 --out " + path);
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream content;
  content << f.rdbuf();
  CHECK(content.str() == "n,beta\n0,4\n1,12\n2,0\n");
  std::remove(path.c_str());
}
