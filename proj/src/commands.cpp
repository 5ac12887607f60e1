#include "onsite/commands.hpp"

#include <chrono>
#include <exception>
#include <ostream>

#include <fmt/core.h>
#include <fmt/ostream.h>

namespace onsite::cli {

namespace {

void apply_set(const std::string& assignment, io::json& doc) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw io::FormatError(
        fmt::format("--set expects section.key=value, got \"{}\"", assignment));
  }
  const std::string section = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  const std::string text = assignment.substr(eq + 1);
  io::json value;
  try {
    value = io::json::parse(text);
  } catch (const io::json::parse_error&) {
    value = text;  // bare strings
  }
  doc[section][key] = value;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kError;
  }
}

// Instance params with any model overrides from the run config on top.
ProblemInstance load_instance(const fs::path& path, io::RunConfig& cfg) {
  ProblemInstance inst = io::read_instance(path);
  io::apply(cfg.model_overrides, inst.params);
  validate(inst);
  cfg.model = inst.params;
  return inst;
}

io::json solve_document(const ProblemInstance& inst, const Chromosome& best,
                        const CostBreakdown& cost) {
  const Evaluator evaluator(inst);
  const DecodedSchedule schedule = decode_schedule(best, inst.worker_count());
  const ItineraryReport report = evaluator.simulate(schedule.routes);
  return io::schedule_to_json(inst, schedule, best.assignment, report, cost);
}

}  // namespace

io::RunConfig load_config(const CommonOptions& options) {
  io::json doc = io::json::object();
  if (options.config) doc = io::read_json_file(*options.config);
  if (!doc.is_object()) throw io::FormatError("config must be a JSON object");
  for (const std::string& s : options.sets) apply_set(s, doc);

  io::RunConfig cfg = io::run_config_from_json(doc);
  if (options.seed) {
    cfg.ga.seed = *options.seed;
    cfg.generator.seed = *options.seed;
  }
  if (options.generations) cfg.ga.max_generations = *options.generations;
  if (options.population) cfg.ga.population_size = *options.population;
  if (options.jobs) cfg.generator.n_jobs = *options.jobs;
  return cfg;
}

int run_generate(const CommonOptions& options, const fs::path& out, std::ostream& err) {
  return guarded(err, [&] {
    const io::RunConfig cfg = load_config(options);
    const GeneratedInstance generated = generate(cfg.generator, cfg.model);
    for (const std::string& note : generated.repairs) fmt::print(err, "repair: {}\n", note);
    validate(generated.instance);
    io::json doc = io::to_json(generated.instance);
    doc["generator"] = io::to_json(cfg.generator);
    io::write_text_file(out, io::dump(doc));
    return static_cast<int>(kSuccess);
  });
}

int run_solve(const fs::path& instance, const CommonOptions& options, const fs::path& out_dir,
              std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    io::RunConfig cfg = load_config(options);
    const ProblemInstance inst = load_instance(instance, cfg);

    const EvolveResult result = evolve(inst, cfg.ga);
    const CostBreakdown& cost = result.best.cost;

    io::json doc = solve_document(inst, result.best.chromosome, cost);
    doc["config"] = io::to_json(cfg);
    doc["seed"] = cfg.ga.seed;
    doc["initial_best_cost"] = result.trace.front().best_cost;

    fs::create_directories(out_dir);
    io::write_text_file(out_dir / "schedule.json", io::dump(doc));
    io::write_text_file(out_dir / "convergence.csv", io::trace_to_csv(result.trace));
    io::write_text_file(out_dir / "config.json", io::dump(io::to_json(cfg)));

    fmt::print(log, "generations {}  best {:.6f}  feasible {}  distance {:.2f} km  overtime {:.1f} min\n",
               result.trace.size(), cost.total, cost.feasible, cost.distance_km,
               cost.overtime_min);
    return static_cast<int>(cost.feasible ? kSuccess : kInfeasible);
  });
}

int run_evaluate(const fs::path& instance, const fs::path& schedule,
                 const CommonOptions& options, const std::optional<fs::path>& out,
                 std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    io::RunConfig cfg = load_config(options);
    const ProblemInstance inst = load_instance(instance, cfg);
    const Chromosome c = io::chromosome_from_schedule_json(io::read_json_file(schedule), inst);
    const CostBreakdown cost = Evaluator(inst).evaluate(c);

    io::json doc = solve_document(inst, c, cost);
    doc["config"] = io::to_json(cfg);
    if (out) {
      io::write_text_file(*out, io::dump(doc));
    } else {
      log << io::dump(doc);
    }
    return static_cast<int>(cost.feasible ? kSuccess : kInfeasible);
  });
}

int run_oracle(const fs::path& instance, const CommonOptions& options,
               const std::optional<fs::path>& out, std::ostream& log, std::ostream& err) {
  return guarded(err, [&] {
    io::RunConfig cfg = load_config(options);
    const ProblemInstance inst = load_instance(instance, cfg);
    const OptimumResult best = brute_force_optimum(inst);

    const Chromosome c = chromosome_from_sequence(best.schedule.sequence, best.assignment);
    io::json doc = solve_document(inst, c, best.cost);
    doc["candidates"] = best.candidates;
    doc["config"] = io::to_json(cfg);
    if (out) {
      io::write_text_file(*out, io::dump(doc));
    } else {
      log << io::dump(doc);
    }
    return static_cast<int>(best.cost.feasible ? kSuccess : kInfeasible);
  });
}

int run_bench(const CommonOptions& options, const fs::path& out_dir,
              const std::vector<std::size_t>& scenarios, std::ostream& log,
              std::ostream& err) {
  return guarded(err, [&] {
    const io::RunConfig base = load_config(options);
    std::vector<std::size_t> which = scenarios;
    if (which.empty()) which = {1, 2, 3, 4};

    fs::create_directories(out_dir);
    std::string summary =
        "scenario,n_jobs,n_workers,population,generations,seed,initial_best_cost,"
        "final_best_cost,improvement_ratio,feasible,seconds\n";
    bool all_feasible = true;

    for (std::size_t k : which) {
      if (k < 1 || k > std::size(kScenarios)) {
        throw std::invalid_argument(fmt::format("scenario {} does not exist (1-4)", k));
      }
      const Scenario& sc = kScenarios[k - 1];
      io::RunConfig cfg = base;
      cfg.generator.n_jobs = sc.jobs;
      cfg.generator.worker_ratio = sc.jobs / sc.workers;
      cfg.generator.seed = base.generator.seed + k - 1;
      cfg.ga.population_size = sc.population;
      cfg.ga.seed = base.ga.seed + k - 1;

      const auto started = std::chrono::steady_clock::now();
      const GeneratedInstance generated = generate(cfg.generator, cfg.model);
      if (!generated.repairs.empty()) {
        fmt::print(err, "scenario {}: {} generator repairs\n", k, generated.repairs.size());
      }
      const EvolveResult result = evolve(generated.instance, cfg.ga);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

      io::json inst_doc = io::to_json(generated.instance);
      inst_doc["generator"] = io::to_json(cfg.generator);
      io::write_text_file(out_dir / fmt::format("scenario_{}_instance.json", k),
                          io::dump(inst_doc));
      io::write_text_file(out_dir / fmt::format("scenario_{}.csv", k),
                          io::trace_to_csv(result.trace));

      const double first = result.trace.front().best_cost;
      const double last = result.trace.back().best_cost;
      const bool feasible = result.best.cost.feasible;
      all_feasible = all_feasible && feasible;
      summary += fmt::format("{},{},{},{},{},{},{},{},{},{},{:.3f}\n", k, sc.jobs, sc.workers,
                             sc.population, result.trace.size(), cfg.ga.seed, first, last,
                             last / first, feasible ? 1 : 0, seconds);
      fmt::print(log, "scenario {}: n={} m={} N={}  best {:.4f} -> {:.4f}  feasible {}  {:.1f}s\n",
                 k, sc.jobs, sc.workers, sc.population, first, last, feasible, seconds);
    }

    io::write_text_file(out_dir / "summary.csv", summary);
    io::write_text_file(out_dir / "config.json", io::dump(io::to_json(base)));
    return static_cast<int>(all_feasible ? kSuccess : kInfeasible);
  });
}

}  // namespace onsite::cli
