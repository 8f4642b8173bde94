#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "conemetric/cli.hpp"
#include "conemetric/json_io.hpp"

using namespace conemetric;

namespace {

// writes content to a unique temp file, removed on destruction
class TempInput {
 public:
  TempInput(const std::string& stem, const std::string& content)
      : path_(std::filesystem::temp_directory_path() /
              ("conemetric_" + stem + "_" + std::to_string(::getpid()) + ".json")) {
    std::ofstream out(path_);
    out << content;
  }
  ~TempInput() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

Json parse(const std::string& text) { return Json::parse(text); }

}  // namespace

TEST_CASE("cone JSON round trips") {
  const std::vector<std::string> specs = {
      R"({"family":"orthant","n":3})",
      R"({"family":"lorentz","n":4})",
      R"({"family":"psd","n":2})",
      R"({"family":"polyhedral","n":3,"dual_gens":[[1,0,1],[0,1,1],[-1,0,1],[0,-1,1]]})",
  };
  for (const std::string& text : specs) {
    const Cone cone = cone_from_json(parse(text));
    const Cone again = cone_from_json(cone_to_json(cone));
    CHECK(cone_to_json(cone).dump() == cone_to_json(again).dump());
  }
  CHECK(cone_from_json(parse(specs[2])).ambient_dim() == 3);  // packed upper triangle
  CHECK_THROWS_AS(cone_from_json(parse(R"({"family":"moebius","n":2})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(cone_from_json(parse(R"({"n":2})")), std::invalid_argument);
}

TEST_CASE("metric JSON round trips") {
  const std::string text = R"({
    "space": {"cone": {"family": "orthant", "n": 2}, "e": [1, 1]},
    "family": "scaled",
    "params": {"c": [1, 2], "rho": {"kind": "euclidean", "weight": 1.0}},
    "points": [{"id": "a", "coords": [0]}, {"id": "b", "coords": [1.5]}]
  })";
  const ConeMetric metric = metric_from_json(parse(text));
  CHECK(metric.size() == 2);
  CHECK(metric.dist(0, 1) == vector_from_json(parse("[1.5, 3.0]"), "expected"));
  const ConeMetric again = metric_from_json(metric_to_json(metric));
  CHECK(metric_to_json(metric).dump() == metric_to_json(again).dump());
}

TEST_CASE("vectors reject non-finite entries") {
  CHECK_THROWS_AS(vector_from_json(parse("[1, null]"), "test"), nlohmann::json::exception);
  CHECK_THROWS_AS(space_from_json(parse(
                      R"({"cone":{"family":"orthant","n":2},"e":[1,1,1]})")),
                  std::invalid_argument);
}

TEST_CASE("norm command produces the agreement report") {
  TempInput input("norm", R"({"cone":{"family":"orthant","n":2},"e":[1,1],"x":[3,-1]})");
  RunConfig config;
  config.command = Command::Norm;
  config.input_path = input.path();
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 0);
  CHECK(outcome.report["command"] == "norm");
  CHECK(outcome.report["violations"].empty());
  const Json& result = outcome.report["results"][0];
  CHECK(result["gauge"].get<double>() == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(result["dual"].get<double>() == 3.0);
  CHECK(result["agree"].get<bool>());
}

TEST_CASE("check-cone command reports per-point verdicts") {
  TempInput input("checkcone", R"({
    "cone": {"family": "lorentz", "n": 3},
    "points": [[1, 0.6, 0.8], [1, 0, 0], [-1, 0, 0]]
  })");
  RunConfig config;
  config.command = Command::CheckCone;
  config.input_path = input.path();
  config.trials = 50;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 0);
  const Json& results = outcome.report["results"];
  CHECK(results[0]["contains"].get<bool>());
  CHECK_FALSE(results[0]["order_unit"].get<bool>());
  CHECK(results[1]["order_unit"].get<bool>());
  CHECK_FALSE(results[2]["contains"].get<bool>());
}

TEST_CASE("verify-metric flags a bad table and exits nonzero") {
  TempInput input("badtable", R"({
    "space": {"cone": {"family": "orthant", "n": 2}, "e": [1, 1]},
    "family": "table",
    "params": {"values": [[[0,0],[1,1]],[[2,597],[0,0]]]},
    "points": ["a", "b"]
  })");
  RunConfig config;
  config.command = Command::VerifyMetric;
  config.input_path = input.path();
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 1);
  CHECK_FALSE(outcome.report["violations"].empty());
  bool symmetry_seen = false;
  for (const Json& violation : outcome.report["violations"]) {
    symmetry_seen = symmetry_seen || violation["message"] == "symmetry";
  }
  CHECK(symmetry_seen);
}

TEST_CASE("parse failures surface as located diagnostics") {
  TempInput input("broken", "{\"cone\": [unterminated");
  RunConfig config;
  config.command = Command::Norm;
  config.input_path = input.path();
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 1);
  const std::string message = outcome.report["violations"][0]["message"];
  CHECK(message.find("parse failure") != std::string::npos);
}

TEST_CASE("missing input files fail cleanly") {
  RunConfig config;
  config.command = Command::Norm;
  config.input_path = "/nonexistent/path.json";
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 1);
}

TEST_CASE("topology-check passes on a discrete metric") {
  TempInput input("topology", R"({
    "space": {"cone": {"family": "orthant", "n": 2}, "e": [1, 1]},
    "family": "discrete",
    "params": {"c": [0.8, 0.8]},
    "points": ["a", "b", "c", "d"]
  })");
  RunConfig config;
  config.command = Command::TopologyCheck;
  config.input_path = input.path();
  config.trials = 25;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 0);
}

TEST_CASE("cauchy-check emits per-threshold verdicts and is byte-deterministic") {
  TempInput input("cauchy", R"({
    "space": {"cone": {"family": "orthant", "n": 2}, "e": [1, 1]},
    "sequence": {"generator": "orbit", "params": {"ratio": 0.5, "x0": 1.0}, "N": 24},
    "eps_list": [1.0, 0.1]
  })");
  RunConfig config;
  config.command = Command::CauchyCheck;
  config.input_path = input.path();
  const RunOutcome first = run(config);
  CHECK(first.exit_status == 0);
  const Json& ladder = first.report["results"][0];
  CHECK(ladder["all_certified"].get<bool>());

  const RunOutcome second = run(config);
  CHECK(first.report.dump() == second.report.dump());
}

TEST_CASE("fixpoint command reports the iteration trace") {
  TempInput input("fixpoint", R"({
    "metric": {
      "space": {"cone": {"family": "orthant", "n": 2}, "e": [1, 1]},
      "family": "scaled",
      "params": {"c": [1, 1], "rho": {"kind": "euclidean", "weight": 1.0}},
      "points": [{"id": "g0", "coords": [1.0]}, {"id": "g1", "coords": [0.5]},
                 {"id": "g2", "coords": [0.25]}, {"id": "g3", "coords": [0.125]}]
    },
    "map": ["g1", "g2", "g3", "g3"]
  })");
  RunConfig config;
  config.command = Command::Fixpoint;
  config.input_path = input.path();
  config.start_id = "g0";
  config.fix_tol = 0.2;
  const RunOutcome outcome = run(config);
  CHECK(outcome.exit_status == 0);
  const Json& result = outcome.report["results"][0];
  CHECK(result["k"].get<double>() == 0.5);
  CHECK(result["fixed_point"].get<std::string>() == "g3");
  CHECK(result["bound_trace"].size() == result["iterates"].size());
}

TEST_CASE("environment seed override") {
  RunConfig config;
  config.seed = 3;
  ::setenv("CONEMETRIC_SEED", "99", 1);
  apply_env_overrides(config);
  ::unsetenv("CONEMETRIC_SEED");
  CHECK(config.seed == 99);
  apply_env_overrides(config);
  CHECK(config.seed == 99);  // unset leaves the configured value
}

TEST_CASE("tolerances must be strictly positive") {
  RunConfig config;
  config.command = Command::Norm;
  config.tolerances.membership = 0.0;
  CHECK_THROWS_AS(run(config), std::invalid_argument);
}
