#include "onsite/generator.hpp"

#include <stdexcept>

#include <fmt/core.h>

#include "onsite/encoding.hpp"
#include "onsite/random.hpp"

namespace onsite {

namespace {

std::set<SkillId> draw_skills(const GeneratorConfig& cfg, Rng& rng) {
  const bool two = cfg.n_skills > 1 && uniform01(rng) < cfg.two_skill_probability;
  const int first = uniform_int(rng, 1, cfg.n_skills);
  std::set<SkillId> skills{first};
  if (two) {
    int second = uniform_int(rng, 1, cfg.n_skills - 1);
    if (second >= first) ++second;
    skills.insert(second);
  }
  return skills;
}

GeoPoint draw_point(const BoundingBox& box, Rng& rng) {
  const double lat = uniform_real(rng, box.lat_min, box.lat_max);
  const double lon = uniform_real(rng, box.lon_min, box.lon_max);
  return {lat, lon};
}

bool covered(const Job& job, const std::vector<Worker>& workers) {
  for (const Worker& w : workers) {
    if (is_eligible(job, w)) return true;
  }
  return false;
}

void check_range(const IntRange& r, const char* name) {
  if (r.lo > r.hi) throw std::invalid_argument(fmt::format("{} range is empty", name));
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  const BoundingBox& b = cfg.bbox;
  if (!(b.lat_min < b.lat_max && b.lon_min < b.lon_max) || b.lat_min < -90.0 ||
      b.lat_max > 90.0 || b.lon_min < -180.0 || b.lon_max > 180.0) {
    throw std::invalid_argument("bounding box is degenerate or out of range");
  }
  if (cfg.worker_ratio < 1) throw std::invalid_argument("worker_ratio must be at least 1");
  if (cfg.n_skills < 1) throw std::invalid_argument("n_skills must be at least 1");
  if (!(cfg.two_skill_probability >= 0.0 && cfg.two_skill_probability <= 1.0)) {
    throw std::invalid_argument("two_skill_probability must lie in [0, 1]");
  }
  check_range(cfg.sla_range, "sla");
  check_range(cfg.duration_range, "duration");
  check_range(cfg.priority_range, "priority");
  check_range(cfg.level_range, "level");
  if (cfg.sla_range.lo <= 0) throw std::invalid_argument("sla range must be positive");
}

std::size_t worker_count_for(const GeneratorConfig& cfg) {
  return (cfg.n_jobs + cfg.worker_ratio - 1) / cfg.worker_ratio;
}

GeneratedInstance generate(const GeneratorConfig& cfg, const ModelParams& params) {
  validate(cfg);
  Rng rng(cfg.seed);
  GeneratedInstance out;
  ProblemInstance& inst = out.instance;
  inst.params = params;

  const std::size_t m = worker_count_for(cfg);
  if (m == 0 && cfg.n_jobs > 0) throw std::runtime_error("no workers to cover the jobs");

  inst.workers.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Worker w;
    w.id = static_cast<int>(i + 1);
    w.base_location = draw_point(cfg.bbox, rng);
    for (SkillId s : draw_skills(cfg, rng)) {
      w.skills[s] = uniform_int(rng, cfg.level_range.lo, cfg.level_range.hi);
    }
    inst.workers.push_back(std::move(w));
  }

  inst.jobs.reserve(cfg.n_jobs);
  for (std::size_t i = 0; i < cfg.n_jobs; ++i) {
    Job j;
    j.id = static_cast<int>(i + 1);
    j.location = draw_point(cfg.bbox, rng);
    j.required_skills = draw_skills(cfg, rng);
    j.priority = uniform_int(rng, cfg.priority_range.lo, cfg.priority_range.hi);
    j.base_duration = uniform_int(rng, cfg.duration_range.lo, cfg.duration_range.hi);
    j.sla = uniform_int(rng, cfg.sla_range.lo, cfg.sla_range.hi);
    inst.jobs.push_back(std::move(j));
  }

  for (Job& job : inst.jobs) {
    if (covered(job, inst.workers)) continue;

    std::size_t tries = 0;
    while (tries < cfg.skill_reroll_limit && !covered(job, inst.workers)) {
      job.required_skills = draw_skills(cfg, rng);
      ++tries;
    }
    if (covered(job, inst.workers)) {
      out.repairs.push_back(
          fmt::format("job {}: skills re-rolled {} time(s) to reach an eligible worker", job.id,
                      tries));
      continue;
    }

    std::vector<std::size_t> roomy;
    for (std::size_t w = 0; w < inst.workers.size(); ++w) {
      std::set<SkillId> merged = job.required_skills;
      for (const auto& [s, level] : inst.workers[w].skills) merged.insert(s);
      if (merged.size() <= 2) roomy.push_back(w);
    }
    if (roomy.empty()) {
      throw std::runtime_error(
          fmt::format("job {}: no worker can be widened to cover its skills", job.id));
    }
    Worker& w = inst.workers[roomy[uniform_index(rng, roomy.size())]];
    for (SkillId s : job.required_skills) {
      if (!w.skills.contains(s)) {
        w.skills[s] = uniform_int(rng, cfg.level_range.lo, cfg.level_range.hi);
        out.repairs.push_back(
            fmt::format("job {}: worker {} given skill {} to cover it", job.id, w.id, s));
      }
    }
  }

  return out;
}

}  // namespace onsite
