#include <fstream>
#include <sstream>

#include "doctest.h"
#include "onsite/commands.hpp"
#include "support.hpp"

using namespace onsite;
using namespace onsite::testing;
namespace fs = std::filesystem;
using io::json;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(ONSITE_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cli::CommonOptions small_run(std::uint64_t seed) {
  cli::CommonOptions o;
  o.seed = seed;
  o.generations = 15;
  o.population = 20;
  return o;
}

}  // namespace

TEST_CASE("generate writes identical files for a fixed seed") {
  const fs::path dir = scratch("generate");
  cli::CommonOptions o;
  o.seed = 7;
  o.jobs = 80;
  std::ostringstream err;
  CHECK(cli::run_generate(o, dir / "a.json", err) == cli::kSuccess);
  CHECK(cli::run_generate(o, dir / "b.json", err) == cli::kSuccess);
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(io::read_instance(dir / "a.json").worker_count() == 20);

  o.jobs = 160;
  CHECK(cli::run_generate(o, dir / "c.json", err) == cli::kSuccess);
  CHECK(io::read_instance(dir / "c.json").worker_count() == 40);

  o.sets = {"generator.bbox=[23.1, 23.0, 72.5, 72.6]"};
  std::ostringstream bad;
  CHECK(cli::run_generate(o, dir / "d.json", bad) == cli::kError);
  CHECK(bad.str().find("bounding box") != std::string::npos);
}

TEST_CASE("solve writes schedule, trace and config") {
  const fs::path dir = scratch("solve");
  io::write_text_file(dir / "inst.json", io::dump(io::to_json(figure_instance())));
  std::ostringstream log, err;
  const int code = cli::run_solve(dir / "inst.json", small_run(3), dir / "out", log, err);
  CHECK(code == cli::kSuccess);

  const std::string csv = slurp(dir / "out" / "convergence.csv");
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header == io::kTraceHeader);
  int rows = 0;
  double previous = 1e300;
  for (std::string line; std::getline(lines, line);) {
    std::stringstream row(line);
    std::string gen, best;
    std::getline(row, gen, ',');
    std::getline(row, best, ',');
    CHECK(std::stoi(gen) == rows);
    CHECK(std::stod(best) <= previous);
    previous = std::stod(best);
    ++rows;
  }
  CHECK(rows == 15);

  const json doc = io::read_json_file(dir / "out" / "schedule.json");
  CHECK(doc.at("seed") == 3);
  CHECK(doc.at("config").at("ga").at("population_size") == 20);
  CHECK(doc.at("feasible") == true);
  CHECK(doc.at("cost").at("total").get<double>() == doctest::Approx(previous).epsilon(1e-15));
  CHECK(fs::exists(dir / "out" / "config.json"));

  // same seed, same bytes
  CHECK(cli::run_solve(dir / "inst.json", small_run(3), dir / "again", log, err) == code);
  CHECK(slurp(dir / "again" / "convergence.csv") == csv);
}

TEST_CASE("evaluate re-simulates a stored schedule") {
  const fs::path dir = scratch("evaluate");
  io::write_text_file(dir / "inst.json", io::dump(io::to_json(figure_instance())));
  std::ostringstream log, err;
  REQUIRE(cli::run_solve(dir / "inst.json", small_run(4), dir / "out", log, err) == 0);

  const std::optional<fs::path> report = dir / "report.json";
  CHECK(cli::run_evaluate(dir / "inst.json", dir / "out" / "schedule.json", {}, report, log,
                          err) == cli::kSuccess);
  const json solved = io::read_json_file(dir / "out" / "schedule.json");
  const json again = io::read_json_file(*report);
  CHECK(again.at("cost") == solved.at("cost"));
  CHECK(again.at("routes") == solved.at("routes"));
}

TEST_CASE("infeasible best exits with code 2") {
  const fs::path dir = scratch("infeasible");
  ProblemInstance inst = figure_instance();
  inst.jobs[5].sla = 5;  // cannot be met by anyone
  io::write_text_file(dir / "inst.json", io::dump(io::to_json(inst)));
  std::ostringstream log, err;
  CHECK(cli::run_solve(dir / "inst.json", small_run(1), dir / "out", log, err) ==
        cli::kInfeasible);
  const json doc = io::read_json_file(dir / "out" / "schedule.json");
  CHECK(doc.at("feasible") == false);
  CHECK(cli::run_oracle(dir / "inst.json", {}, dir / "opt.json", log, err) == cli::kInfeasible);
}

TEST_CASE("oracle output and guard") {
  const fs::path dir = scratch("oracle");
  io::write_text_file(dir / "five.json", io::dump(io::to_json(five_job_instance())));
  std::ostringstream log, err;
  CHECK(cli::run_oracle(dir / "five.json", {}, dir / "opt.json", log, err) == cli::kSuccess);
  const json opt = io::read_json_file(dir / "opt.json");
  CHECK(opt.at("candidates") == 960.0);

  CHECK(cli::run_solve(dir / "five.json", small_run(2), dir / "out", log, err) == 0);
  const json solved = io::read_json_file(dir / "out" / "schedule.json");
  CHECK(opt.at("cost").at("total").get<double>() <=
        solved.at("cost").at("total").get<double>());

  ProblemInstance big;
  big.workers = {make_worker(1, 23.0, 72.5, {{1, 10}})};
  for (int j = 1; j <= 12; ++j) big.jobs.push_back(make_job(j, 23.0, 72.5, {1}, 5, 30, 1440));
  io::write_text_file(dir / "big.json", io::dump(io::to_json(big)));
  std::ostringstream guard;
  CHECK(cli::run_oracle(dir / "big.json", {}, std::nullopt, log, guard) == cli::kError);
  CHECK(guard.str().find("guard") != std::string::npos);
}

TEST_CASE("config file and overrides merge in order") {
  const fs::path dir = scratch("config");
  io::write_text_file(dir / "cfg.json",
                      R"({"ga": {"population_size": 30, "p_m_max": 0.3}, "model": {"w_d": 0.6}})");
  cli::CommonOptions o;
  o.config = dir / "cfg.json";
  o.sets = {"ga.p_m_max=0.25", "generator.n_jobs=16"};
  o.population = 44;
  const io::RunConfig cfg = cli::load_config(o);
  CHECK(cfg.ga.population_size == 44);
  CHECK(cfg.ga.p_m_max == 0.25);
  CHECK(cfg.generator.n_jobs == 16);
  CHECK(cfg.model.w_d == 0.6);

  o.sets = {"nonsense"};
  CHECK_THROWS_AS(cli::load_config(o), io::FormatError);
}

TEST_CASE("bench runs a single reduced scenario") {
  const fs::path dir = scratch("bench");
  cli::CommonOptions o;
  o.generations = 5;
  std::ostringstream log, err;
  const int code = cli::run_bench(o, dir, {1}, log, err);
  CHECK(code != cli::kError);
  CHECK(fs::exists(dir / "scenario_1.csv"));
  CHECK(fs::exists(dir / "scenario_1_instance.json"));
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary.find("\n1,80,20,100,5,") != std::string::npos);
  CHECK(cli::run_bench(o, dir, {5}, log, err) == cli::kError);
}
