#include <cmath>

#include "doctest.h"
#include "onsite/generator.hpp"
#include "onsite/io.hpp"

using namespace onsite;

TEST_CASE("worker count follows the 1:4 ratio") {
  GeneratorConfig cfg;
  for (auto [jobs, workers] : {std::pair{80u, 20u}, {160u, 40u}, {320u, 80u}, {400u, 100u}}) {
    cfg.n_jobs = jobs;
    CHECK(worker_count_for(cfg) == workers);
    CHECK(generate(cfg).instance.worker_count() == workers);
  }
  cfg.n_jobs = 81;
  CHECK(worker_count_for(cfg) == 21);
}

TEST_CASE("generated instances are valid and inside the box") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorConfig cfg;
    cfg.n_jobs = 40;
    cfg.seed = seed;
    const GeneratedInstance g = generate(cfg);
    CHECK_NOTHROW(validate(g.instance));
    for (const Job& j : g.instance.jobs) {
      CHECK(j.location.latitude >= cfg.bbox.lat_min);
      CHECK(j.location.latitude <= cfg.bbox.lat_max);
      CHECK(j.location.longitude >= cfg.bbox.lon_min);
      CHECK(j.location.longitude <= cfg.bbox.lon_max);
      CHECK(j.sla >= 120);
    }
    for (const Worker& w : g.instance.workers) {
      CHECK(w.shift_start == 540);
      CHECK(w.shift_end == 1200);
    }
  }
}

TEST_CASE("generation is seeded") {
  GeneratorConfig cfg;
  cfg.seed = 7;
  const std::string a = io::dump(io::to_json(generate(cfg).instance));
  const std::string b = io::dump(io::to_json(generate(cfg).instance));
  CHECK(a == b);
  cfg.seed = 8;
  CHECK(io::dump(io::to_json(generate(cfg).instance)) != a);
}

TEST_CASE("field distributions match their uniform ranges") {
  GeneratorConfig cfg;
  cfg.n_jobs = 10000;
  cfg.seed = 123;
  const ProblemInstance inst = generate(cfg).instance;

  std::vector<int> priority(11, 0);
  std::vector<int> duration(61, 0);
  std::vector<int> levels(11, 0);
  std::size_t two_skill_workers = 0;
  int sla_min = 10000, sla_max = 0;
  for (const Job& j : inst.jobs) {
    ++priority[j.priority];
    ++duration[static_cast<int>(j.base_duration)];
    sla_min = std::min(sla_min, static_cast<int>(j.sla));
    sla_max = std::max(sla_max, static_cast<int>(j.sla));
  }
  for (const Worker& w : inst.workers) {
    if (w.skills.size() == 2) ++two_skill_workers;
    for (auto [s, level] : w.skills) ++levels[level];
  }
  CHECK(sla_min == 120);
  CHECK(sla_max == 1440);

  // Chi-square against uniform, compared with mean + 3 sd of the statistic.
  const auto chi_square_ok = [](const std::vector<int>& counts, int lo, int hi) {
    const int cells = hi - lo + 1;
    double total = 0;
    for (int v = lo; v <= hi; ++v) total += counts[v];
    const double expected = total / cells;
    double chi = 0;
    for (int v = lo; v <= hi; ++v) chi += std::pow(counts[v] - expected, 2) / expected;
    const double dof = cells - 1;
    for (int v = lo; v <= hi; ++v) {
      if (counts[v] == 0) return false;
    }
    return chi < dof + 3 * std::sqrt(2 * dof);
  };
  CHECK(chi_square_ok(priority, 1, 10));
  CHECK(chi_square_ok(duration, 10, 60));
  CHECK(chi_square_ok(levels, 5, 10));

  const double m = static_cast<double>(inst.worker_count());
  CHECK(std::abs(two_skill_workers - m / 2) < 3 * std::sqrt(m / 4));
}

TEST_CASE("coverage repair re-rolls or widens") {
  GeneratorConfig cfg;
  cfg.n_jobs = 12;
  cfg.worker_ratio = 12;  // one worker
  cfg.two_skill_probability = 0.0;
  cfg.skill_reroll_limit = 0;  // force widening
  cfg.n_skills = 2;
  cfg.seed = 3;
  const GeneratedInstance g = generate(cfg);
  CHECK_NOTHROW(validate(g.instance));
  CHECK(g.instance.worker_count() == 1);
  CHECK(g.instance.workers[0].skills.size() == 2);
  CHECK_FALSE(g.repairs.empty());

  cfg.skill_reroll_limit = 100;
  cfg.n_skills = 10;
  const GeneratedInstance rolled = generate(cfg);
  CHECK_NOTHROW(validate(rolled.instance));
  CHECK_FALSE(rolled.repairs.empty());
}

TEST_CASE("impossible coverage is an error") {
  GeneratorConfig cfg;
  cfg.n_jobs = 30;
  cfg.worker_ratio = 30;
  cfg.two_skill_probability = 1.0;
  cfg.skill_reroll_limit = 0;
  cfg.seed = 1;
  // A single worker holds one pair; a job needing a different pair cannot
  // be covered without exceeding two skills.
  CHECK_THROWS_AS(generate(cfg), std::runtime_error);
}

TEST_CASE("invalid configs are rejected") {
  GeneratorConfig cfg;
  cfg.bbox.lat_max = cfg.bbox.lat_min;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = GeneratorConfig{};
  cfg.worker_ratio = 0;
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
  cfg = GeneratorConfig{};
  cfg.priority_range = {5, 1};
  CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}
