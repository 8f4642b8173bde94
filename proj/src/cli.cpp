#include "conemetric/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conemetric/fixedpoint.hpp"
#include "conemetric/sequences.hpp"
#include "conemetric/suite.hpp"

namespace conemetric {
namespace {

Json load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("parse failure in " + path + ": " + e.what());
  }
}

void run_check_cone(const RunConfig& config, const Json& input, Json& results,
                    Json& violations) {
  const Cone cone = cone_from_json(input.contains("cone") ? input["cone"] : input);
  const double tol = config.tolerances.membership;

  if (input.contains("points")) {
    for (const Json& entry : input["points"]) {
      const Vector x = vector_from_json(entry, "check-cone point");
      results.push_back(Json{{"x", vector_to_json(x)},
                             {"margin", membership_margin(cone, x)},
                             {"contains", contains(cone, x, tol)},
                             {"interior", interior_contains(cone, x, tol)},
                             {"order_unit", is_order_unit(cone, x, tol)}});
    }
  }

  const int n_max = input.value("n_max", 64);
  const ArchimedeanReport report =
      archimedean_spot_check(cone, config.trials, n_max, config.seed);
  results.push_back(archimedean_report_to_json(report));
  for (const ArchimedeanViolation& v : report.violations) {
    violations.push_back(Json{{"check", "archimedean-spot-check"},
                              {"message", "unbounded domination candidate"},
                              {"y", vector_to_json(v.y)}});
  }
}

void run_norm(const RunConfig& config, const Json& input, Json& results,
              Json& violations) {
  const Cone cone = cone_from_json(input.at("cone"));
  const Vector e = vector_from_json(input.at("e"), "norm e");
  const Vector x = vector_from_json(input.at("x"), "norm x");
  const OrderUnitSpace space(cone, e, config.tolerances.membership);

  const double gauge = gauge_norm(space, x, config.tolerances.gauge_rel);
  const double dual = dual_norm(space, x);
  const bool agree = std::abs(gauge - dual) <= 1e-9 * std::max(1.0, dual);
  results.push_back(Json{{"gauge", gauge}, {"dual", dual}, {"agree", agree}});
  if (!agree) {
    violations.push_back(
        Json{{"check", "norm-oracle-agreement"},
             {"message", "gauge and dual norms disagree beyond tolerance"}});
  }
}

void run_verify_metric(const RunConfig& config, const Json& input, Json& results,
                       Json& violations) {
  const ConeMetric metric =
      metric_from_json(input.contains("metric") ? input["metric"] : input);
  const AxiomReport report = verify_axioms(metric, config.tolerances.membership);
  results.push_back(axiom_report_to_json(report, metric));
  for (const MetricViolation& v : report.violations) {
    Json ids = Json::array();
    for (std::size_t p : v.points) ids.push_back(metric.point(p).id);
    violations.push_back(
        Json{{"check", "metric-axioms"}, {"message", v.axiom}, {"points", ids}});
  }
}

void run_topology_check(const RunConfig& config, const Json& input, Json& results,
                        Json& violations) {
  const ConeMetric metric =
      metric_from_json(input.contains("metric") ? input["metric"] : input);
  const ScalarizedMetric sm = scalarize(metric, config.tolerances.gauge_rel);

  std::vector<double> mus = {0.1, 0.5, 1.0, 2.0, 10.0};
  std::vector<double> radii = {1.0, 0.3, 0.05};
  if (input.contains("mus")) mus = input["mus"].get<std::vector<double>>();
  if (input.contains("rs")) radii = input["rs"].get<std::vector<double>>();

  for (double mu : mus) {
    int mismatches = 0, excluded = 0;
    for (std::size_t x = 0; x < metric.size(); ++x) {
      const BallIdentityReport report =
          ball_identity_check(metric, sm, x, mu, config.tolerances.boundary_band);
      mismatches += static_cast<int>(report.mismatches.size());
      excluded += report.boundary_excluded;
      for (const BallMismatch& mm : report.mismatches) {
        violations.push_back(Json{{"check", "ball-identity"},
                                  {"message", "asymmetric ball membership"},
                                  {"center", metric.point(x).id},
                                  {"point", metric.point(mm.point).id},
                                  {"mu", mu}});
      }
    }
    results.push_back(Json{{"check", "ball-identity"},
                           {"mu", mu},
                           {"centers", metric.size()},
                           {"mismatches", mismatches},
                           {"boundary_excluded", excluded}});
  }

  for (double r : radii) {
    int max_k = 0;
    bool ok = true;
    for (std::size_t x = 0; x < metric.size() && ok; ++x) {
      try {
        max_k = std::max(max_k, ball_cover_index(metric, sm, x, r));
      } catch (const std::logic_error& e) {
        ok = false;
        violations.push_back(
            Json{{"check", "ball-cover-index"}, {"message", e.what()}, {"r", r}});
      }
    }
    results.push_back(Json{{"check", "ball-cover-index"},
                           {"r", r},
                           {"max_k", max_k},
                           {"bound", static_cast<int>(std::floor(1.0 / r)) + 1}});
  }

  const BasisReport basis = basis_check(metric, config.trials, config.seed);
  results.push_back(basis_report_to_json(basis));
  for (const std::string& failure : basis.failures) {
    violations.push_back(Json{{"check", "ball-basis"}, {"message", failure}});
  }
}

SequencePrefix sequence_from_json(const Json& input, std::uint64_t default_seed) {
  const Json& spec = input.at("sequence");
  const std::string generator = spec.at("generator").get<std::string>();
  const std::size_t n = spec.value("N", 32);
  const std::uint64_t seed = spec.value("seed", default_seed);
  const Json params = spec.value("params", Json::object());

  if (generator == "table") {
    ConeMetric metric = metric_from_json(input.at("metric"));
    std::vector<std::size_t> visits;
    for (const Json& id : params.at("ids")) {
      visits.push_back(metric.index_of(id.get<std::string>()));
    }
    return SequencePrefix(std::move(metric), std::move(visits));
  }

  const OrderUnitSpace space = space_from_json(input.at("space"));
  if (generator == "orbit") {
    return make_orbit_sequence(space, params.value("ratio", 0.5), params.value("x0", 1.0), n);
  }
  if (generator == "alternating") {
    return make_alternating_sequence(space, params.value("gap", 1.0), n);
  }
  if (generator == "noisy-orbit") {
    return make_noisy_orbit_sequence(space, params.value("ratio", 0.5),
                                     params.value("x0", 1.0), params.value("noise", 0.05),
                                     seed, n);
  }
  throw std::invalid_argument("unknown sequence generator: " + generator);
}

void run_cauchy_check(const RunConfig& config, const Json& input, Json& results,
                      Json& violations) {
  const SequencePrefix prefix = sequence_from_json(input, config.seed);
  std::vector<double> eps_list = {1.0, 0.5, 0.1, 0.01};
  if (input.contains("eps_list")) eps_list = input["eps_list"].get<std::vector<double>>();

  results.push_back(ladder_report_to_json(unit_cauchy_ladder(prefix, eps_list)));
  for (double eps : eps_list) {
    const CauchyEquivalenceReport report =
        cauchy_equivalence_check(prefix, eps, config.tolerances.boundary_band);
    results.push_back(cauchy_equivalence_report_to_json(report));
    if (!report.equivalent && report.boundary_pairs == 0) {
      violations.push_back(Json{{"check", "cauchy-equivalence"},
                                {"message", "verdicts disagree outside the boundary band"},
                                {"eps", eps}});
    }
  }
}

void run_fixpoint(const RunConfig& config, const Json& input, Json& results,
                  Json& violations) {
  const ContractionProblem problem = problem_from_json(input);
  const std::size_t start =
      config.start_id.empty() ? 0 : problem.metric().index_of(config.start_id);
  try {
    const BanachResult run =
        banach_iterate(problem, start, config.fix_tol, config.max_iter);
    results.push_back(banach_result_to_json(run, problem.metric()));
  } catch (const IterationLimitError& e) {
    violations.push_back(Json{{"check", "banach-iterate"},
                              {"message", e.what()},
                              {"best_point", problem.metric().point(e.best_point).id},
                              {"residual", e.residual}});
  }
}

void run_suite(const RunConfig& config, Json& results, Json& violations) {
  const std::vector<suite::CriterionResult> outcome = suite::run_all(config.seed);
  results = suite::results_to_json(outcome);
  for (const suite::CriterionResult& r : outcome) {
    if (!r.pass) {
      violations.push_back(Json{{"check", r.name},
                                {"message", "criterion failed"},
                                {"criterion", r.id},
                                {"failures", r.failures}});
    }
  }
}

Json config_echo(const RunConfig& config) {
  return Json{{"input", config.input_path},
              {"output", config.output_path},
              {"seed", config.seed},
              {"trials", config.trials},
              {"max_iter", config.max_iter},
              {"tolerances",
               Json{{"membership", config.tolerances.membership},
                    {"gauge_rel", config.tolerances.gauge_rel},
                    {"boundary_band", config.tolerances.boundary_band}}}};
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::CheckCone: return "check-cone";
    case Command::Norm: return "norm";
    case Command::VerifyMetric: return "verify-metric";
    case Command::TopologyCheck: return "topology-check";
    case Command::CauchyCheck: return "cauchy-check";
    case Command::Fixpoint: return "fixpoint";
    case Command::Suite: return "suite";
  }
  throw std::logic_error("unknown command");
}

void apply_env_overrides(RunConfig& config) {
  if (const char* env = std::getenv("CONEMETRIC_SEED")) {
    config.seed = std::strtoull(env, nullptr, 10);
  }
}

RunOutcome run(const RunConfig& config) {
  if (!(config.tolerances.membership > 0.0) || !(config.tolerances.gauge_rel > 0.0) ||
      !(config.tolerances.boundary_band > 0.0)) {
    throw std::invalid_argument("run: tolerances must be strictly positive");
  }

  Json results = Json::array();
  Json violations = Json::array();

  try {
    if (config.command == Command::Suite) {
      run_suite(config, results, violations);
    } else {
      const Json input = load_input(config.input_path);
      switch (config.command) {
        case Command::CheckCone: run_check_cone(config, input, results, violations); break;
        case Command::Norm: run_norm(config, input, results, violations); break;
        case Command::VerifyMetric: run_verify_metric(config, input, results, violations); break;
        case Command::TopologyCheck: run_topology_check(config, input, results, violations); break;
        case Command::CauchyCheck: run_cauchy_check(config, input, results, violations); break;
        case Command::Fixpoint: run_fixpoint(config, input, results, violations); break;
        case Command::Suite: break;
      }
    }
  } catch (const std::exception& e) {
    violations.push_back(Json{{"check", "error"}, {"message", e.what()}});
  }

  RunOutcome outcome;
  outcome.report = Json{{"command", command_name(config.command)},
                        {"config_echo", config_echo(config)},
                        {"results", results},
                        {"violations", violations}};
  outcome.exit_status = violations.empty() ? 0 : 1;

  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path);
    if (!out) throw std::runtime_error("cannot open output file: " + config.output_path);
    out << outcome.report.dump(2) << "\n";
  }
  return outcome;
}

}  // namespace conemetric
