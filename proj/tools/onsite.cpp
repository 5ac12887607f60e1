// onsite: generate, solve, evaluate and benchmark onsite job schedules.

#include <iostream>

#include "CLI11.hpp"

#include "onsite/commands.hpp"

namespace {

void add_common(CLI::App* cmd, onsite::cli::CommonOptions& opts) {
  cmd->add_option("--config", opts.config, "JSON run config (model/ga/generator sections)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Seed for the GA and the generator");
  cmd->add_option("--generations", opts.generations, "GA generation count");
  cmd->add_option("--population", opts.population, "GA population size");
  cmd->add_option("--set", opts.sets, "Override a config field: section.key=value")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = onsite::cli;

  CLI::App app{"Onsite job scheduling with a rank-adaptive genetic algorithm"};
  app.require_subcommand(1);

  cli::CommonOptions opts;
  std::filesystem::path instance;
  std::filesystem::path schedule;
  std::filesystem::path out;
  std::optional<std::filesystem::path> out_file;
  std::vector<std::size_t> scenarios;

  auto* generate = app.add_subcommand("generate", "Write a random instance");
  add_common(generate, opts);
  generate->add_option("--jobs", opts.jobs, "Number of jobs");
  generate->add_option("--out", out, "Instance JSON to write")->required();

  auto* solve = app.add_subcommand("solve", "Run the GA on an instance");
  add_common(solve, opts);
  solve->add_option("instance", instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--out", out, "Output directory")->required();

  auto* evaluate = app.add_subcommand("evaluate", "Re-simulate and cost a stored schedule");
  add_common(evaluate, opts);
  evaluate->add_option("instance", instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("schedule", schedule, "Schedule JSON")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--out", out_file, "Write the report here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a tiny instance");
  add_common(oracle, opts);
  oracle->add_option("instance", instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  oracle->add_option("--out", out_file, "Write the optimum here instead of stdout");

  auto* bench = app.add_subcommand("bench", "Run the four benchmark scenarios");
  add_common(bench, opts);
  bench->add_option("--out", out, "Output directory")->required();
  bench->add_option("--scenario", scenarios, "Scenario numbers to run (default all)")
      ->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kError;
  }

  if (*generate) return cli::run_generate(opts, out, std::cerr);
  if (*solve) return cli::run_solve(instance, opts, out, std::cout, std::cerr);
  if (*evaluate) return cli::run_evaluate(instance, schedule, opts, out_file, std::cout, std::cerr);
  if (*oracle) return cli::run_oracle(instance, opts, out_file, std::cout, std::cerr);
  if (*bench) return cli::run_bench(opts, out, scenarios, std::cout, std::cerr);
  return cli::kError;
}
