#include <iostream>

#include "CLI11.hpp"

#include "conemetric/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"cone membership, order-unit norms, scalarized cone metrics, "
               "and fixed-point iteration"};
  app.require_subcommand(1);

  conemetric::RunConfig config;
  bool quiet = false;

  const auto add_common = [&](CLI::App* sub, bool needs_input) {
    CLI::Option* input = sub->add_option("--input,-i", config.input_path, "input JSON file");
    if (needs_input) input->required();
    sub->add_option("--output,-o", config.output_path, "write the JSON report here");
    sub->add_option("--seed", config.seed, "seed for all sampled checks");
    sub->add_option("--tol-membership", config.tolerances.membership,
                    "cone membership slack");
    sub->add_option("--tol-gauge", config.tolerances.gauge_rel,
                    "relative gauge bisection tolerance");
    sub->add_option("--boundary-band", config.tolerances.boundary_band,
                    "relative exclusion band around strict thresholds");
    sub->add_option("--trials", config.trials, "trial count for sampled checks");
    sub->add_option("--max-iter", config.max_iter, "iteration cap");
    sub->add_flag("--quiet,-q", quiet, "suppress the report on stdout");
  };

  std::vector<std::pair<conemetric::Command, CLI::App*>> subcommands;
  const auto add_subcommand = [&](conemetric::Command command, const char* help,
                                  bool needs_input) {
    CLI::App* sub = app.add_subcommand(conemetric::command_name(command), help);
    add_common(sub, needs_input);
    subcommands.emplace_back(command, sub);
    return sub;
  };

  add_subcommand(conemetric::Command::CheckCone,
                 "membership, interior, and order-unit checks for a cone", true);
  add_subcommand(conemetric::Command::Norm,
                 "gauge and dual order-unit norms of a vector", true);
  add_subcommand(conemetric::Command::VerifyMetric,
                 "cone-metric axiom verification on a finite domain", true);
  add_subcommand(conemetric::Command::TopologyCheck,
                 "ball identity, cover index, and basis checks", true);
  add_subcommand(conemetric::Command::CauchyCheck,
                 "unit-dominance and scalar Cauchy verdicts for a sequence", true);
  CLI::App* fixpoint = add_subcommand(conemetric::Command::Fixpoint,
                                      "contraction iteration to a fixed point", false);
  fixpoint->add_option("--problem", config.input_path, "problem JSON file (alias of --input)");
  fixpoint->add_option("--x0", config.start_id, "starting point id");
  fixpoint->add_option("--tol", config.fix_tol, "fixed-point tolerance");
  add_subcommand(conemetric::Command::Suite,
                 "run the full verification battery", false);

  CLI11_PARSE(app, argc, argv);

  for (const auto& [command, sub] : subcommands) {
    if (sub->parsed()) config.command = command;
  }
  if (config.command != conemetric::Command::Suite && config.input_path.empty()) {
    std::cerr << "error: " << conemetric::command_name(config.command)
              << " needs --input (or --problem)\n";
    return 2;
  }
  conemetric::apply_env_overrides(config);

  try {
    const conemetric::RunOutcome outcome = conemetric::run(config);
    if (!quiet) std::cout << outcome.report.dump(2) << "\n";
    return outcome.exit_status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
