// gddp: geometry deductive database prover.

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "gddp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Forward-chaining geometry prover over a deductive database of facts"};
  app.require_subcommand(1);
  gddp::RunConfig cfg;
  bool parallel = false;

  const std::map<std::string, gddp::OutputFormat> formats{{"text", gddp::OutputFormat::text},
                                                          {"latex", gddp::OutputFormat::latex},
                                                          {"json", gddp::OutputFormat::json}};
  const std::pair<const char*, gddp::Command> commands[] = {
      {"prove", gddp::Command::prove},
      {"check", gddp::Command::check},
      {"saturate", gddp::Command::saturate},
      {"hints", gddp::Command::hints},
      {"graph", gddp::Command::graph}};
  const char* help[] = {"Prove the goal and print a proof script",
                        "Check the goal numerically on random exact-rational models",
                        "Saturate the fact base and dump every fact",
                        "Rank the facts one rule application away",
                        "Export the all-derivations deduction graph"};

  for (std::size_t i = 0; i < std::size(commands); ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->callback([&cfg, c = commands[i].second] { cfg.command = c; });
    sub->add_option("problem", cfg.problem_path, "Problem file (.gdd or .p)")->required();
    sub->add_option("--rules", cfg.rules_path, "Rule file (default: bundled gdd.rules)");
    sub->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--max-facts", cfg.limits.max_facts, "Fact budget");
    sub->add_option("--max-rounds", cfg.limits.max_rounds, "Round budget");
    sub->add_option("--timeout", cfg.limits.timeout, "Wall-clock budget in seconds");
    sub->add_option("--models", cfg.models, "Number of numeric models");
    sub->add_option("--seed", cfg.seed, "First model seed");
    sub->add_option("--k", cfg.k, "Number of hints");
    sub->add_option("--fact", cfg.established, "Established fact for hints (repeatable)");
    sub->add_flag("--parallel", parallel, "Use the OpenMP kernels");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : gddp::kExitUsage;
  }
  if (parallel) cfg.exec = gddp::Exec::parallel;
  return gddp::run(cfg, std::cout, std::cerr);
}
