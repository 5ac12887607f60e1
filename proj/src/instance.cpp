#include "onsite/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include <fmt/core.h>

namespace onsite {

namespace {

double radians(double degrees) { return degrees * std::numbers::pi / 180.0; }

double square(double x) { return x * x; }

bool valid_point(const GeoPoint& p) {
  return std::isfinite(p.latitude) && std::isfinite(p.longitude) &&
         p.latitude >= -90.0 && p.latitude <= 90.0 && p.longitude >= -180.0 &&
         p.longitude <= 180.0;
}

}  // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
  const double lat1 = radians(a.latitude);
  const double lat2 = radians(b.latitude);
  const double d_lat = lat2 - lat1;
  const double d_lon = radians(b.longitude - a.longitude);

  const double h = square(std::sin(d_lat / 2.0)) +
                   std::cos(lat1) * std::cos(lat2) * square(std::sin(d_lon / 2.0));
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(std::min(1.0, h)));
}

bool is_eligible(const Job& job, const Worker& worker) {
  return std::all_of(job.required_skills.begin(), job.required_skills.end(),
                     [&](SkillId s) { return worker.skills.contains(s); });
}

std::vector<std::size_t> eligible_workers(const Job& job,
                                          const ProblemInstance& instance) {
  std::vector<std::size_t> result;
  for (std::size_t w = 0; w < instance.workers.size(); ++w) {
    if (is_eligible(job, instance.workers[w])) result.push_back(w);
  }
  std::sort(result.begin(), result.end(), [&](std::size_t a, std::size_t b) {
    return instance.workers[a].id < instance.workers[b].id;
  });
  return result;
}

double effective_duration(const Job& job, const Worker& worker,
                          const ModelParams& params) {
  if (job.required_skills.empty() || !is_eligible(job, worker)) {
    throw std::logic_error(
        fmt::format("worker {} is not eligible for job {}", worker.id, job.id));
  }
  int level = params.skill_level_max;
  for (SkillId s : job.required_skills) level = std::min(level, worker.skills.at(s));

  const double span = params.skill_level_max - params.skill_level_min;
  const double gap = std::clamp(params.skill_level_max - level, 0, params.skill_level_max -
                                                                       params.skill_level_min);
  return job.base_duration * (1.0 + params.buffer_factor * gap / span);
}

void validate(const ModelParams& p) {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInstance(fmt::format("parameter {} must be positive", name));
    }
  };
  positive(p.d_max, "d_max");
  positive(p.t_max, "t_max");
  positive(p.o_max, "o_max");
  positive(p.p_avg, "p_avg");
  positive(p.travel_speed, "travel_speed");
  positive(p.regular_work, "regular_work");
  for (auto [v, name] : {std::pair{p.w_d, "w_d"}, std::pair{p.w_sla, "w_sla"},
                         std::pair{p.w_t, "w_t"}, std::pair{p.buffer_factor, "buffer_factor"},
                         std::pair{p.penalty_weight, "penalty_weight"}}) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidInstance(fmt::format("parameter {} must be non-negative", name));
    }
  }
  if (p.skill_level_min < 1 || p.skill_level_min >= p.skill_level_max) {
    throw InvalidInstance("skill level range must satisfy 1 <= min < max");
  }
}

void validate(const ProblemInstance& instance) {
  validate(instance.params);
  const ModelParams& p = instance.params;

  std::unordered_set<int> ids;
  for (const Worker& w : instance.workers) {
    if (w.id <= 0 || !ids.insert(w.id).second) {
      throw InvalidInstance(fmt::format("worker id {} is not a unique positive integer", w.id));
    }
    if (!valid_point(w.base_location)) {
      throw InvalidInstance(fmt::format("worker {} has an invalid location", w.id));
    }
    if (w.skills.empty() || w.skills.size() > 2) {
      throw InvalidInstance(fmt::format("worker {} must have one or two skills", w.id));
    }
    for (auto [skill, level] : w.skills) {
      if (level < p.skill_level_min || level > p.skill_level_max) {
        throw InvalidInstance(fmt::format("worker {} skill {} level {} outside [{}, {}]", w.id,
                                          skill, level, p.skill_level_min, p.skill_level_max));
      }
    }
    if (!(w.shift_start < w.shift_end)) {
      throw InvalidInstance(fmt::format("worker {} shift must start before it ends", w.id));
    }
  }

  ids.clear();
  for (const Job& j : instance.jobs) {
    if (j.id <= 0 || !ids.insert(j.id).second) {
      throw InvalidInstance(fmt::format("job id {} is not a unique positive integer", j.id));
    }
    if (!valid_point(j.location)) {
      throw InvalidInstance(fmt::format("job {} has an invalid location", j.id));
    }
    if (j.required_skills.empty() || j.required_skills.size() > 2) {
      throw InvalidInstance(fmt::format("job {} must require one or two skills", j.id));
    }
    if (j.priority < 1 || j.priority > 10) {
      throw InvalidInstance(fmt::format("job {} priority {} outside [1, 10]", j.id, j.priority));
    }
    if (!(j.base_duration >= 10.0 && j.base_duration <= 60.0)) {
      throw InvalidInstance(fmt::format("job {} duration outside [10, 60] minutes", j.id));
    }
    if (!(j.sla > 0.0 && j.sla <= p.t_max)) {
      throw InvalidInstance(fmt::format("job {} SLA outside (0, {}]", j.id, p.t_max));
    }
    if (eligible_workers(j, instance).empty()) {
      throw InvalidInstance(fmt::format("job {} has no eligible worker", j.id));
    }
  }
}

}  // namespace onsite
