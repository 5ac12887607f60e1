#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "onsite/io.hpp"

namespace onsite::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kError = 1, kInfeasible = 2 };

struct CommonOptions {
  std::optional<fs::path> config;
  std::optional<std::uint64_t> seed;  // sets both ga.seed and generator.seed
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  std::optional<std::size_t> jobs;
  // "section.key=value" with a JSON value, e.g. "ga.p_m_max=0.3".
  std::vector<std::string> sets;
};

/// Config file first, then --set overrides, then the dedicated flags.
io::RunConfig load_config(const CommonOptions& options);

int run_generate(const CommonOptions& options, const fs::path& out, std::ostream& err);

/// Writes schedule.json, convergence.csv and config.json into out_dir.
int run_solve(const fs::path& instance, const CommonOptions& options, const fs::path& out_dir,
              std::ostream& log, std::ostream& err);

/// Re-simulates a stored schedule and writes its timeline + cost.
int run_evaluate(const fs::path& instance, const fs::path& schedule,
                 const CommonOptions& options, const std::optional<fs::path>& out,
                 std::ostream& log, std::ostream& err);

int run_oracle(const fs::path& instance, const CommonOptions& options,
               const std::optional<fs::path>& out, std::ostream& log, std::ostream& err);

struct Scenario {
  std::size_t jobs;
  std::size_t workers;
  std::size_t population;
};

inline constexpr Scenario kScenarios[] = {
    {80, 20, 100}, {160, 40, 200}, {320, 80, 400}, {400, 100, 500}};

/// Generates and solves the benchmark scenarios (1-based numbers; empty
/// means all four). Scenario k uses seed + k - 1 for both the generator and
/// the GA. Writes scenario_<k>.csv, scenario_<k>_instance.json,
/// summary.csv and config.json into out_dir.
int run_bench(const CommonOptions& options, const fs::path& out_dir,
              const std::vector<std::size_t>& scenarios, std::ostream& log, std::ostream& err);

}  // namespace onsite::cli
