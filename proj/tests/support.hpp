#pragma once

// Fixtures and an independent straight-line re-computation of the schedule
// cost used to cross-check the library. The oracle shares no code with the
// evaluator beyond the domain structs.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "onsite/encoding.hpp"
#include "onsite/instance.hpp"

namespace onsite::testing {

inline Job make_job(int id, double lat, double lon, std::set<SkillId> skills, int priority,
                    double duration, double sla) {
  Job j;
  j.id = id;
  j.location = {lat, lon};
  j.required_skills = std::move(skills);
  j.priority = priority;
  j.base_duration = duration;
  j.sla = sla;
  return j;
}

inline Worker make_worker(int id, double lat, double lon, std::map<SkillId, int> skills) {
  Worker w;
  w.id = id;
  w.base_location = {lat, lon};
  w.skills = std::move(skills);
  return w;
}

/// Six jobs, three workers: jobs 1-4 need skill 1 (workers 1, 2), jobs 5-6
/// need skill 2 (worker 3).
inline ProblemInstance figure_instance() {
  ProblemInstance inst;
  inst.workers = {make_worker(1, 23.00, 72.50, {{1, 10}}), make_worker(2, 23.05, 72.55, {{1, 5}}),
                  make_worker(3, 23.10, 72.60, {{2, 7}})};
  inst.jobs = {make_job(1, 23.02, 72.52, {1}, 3, 30, 600),
               make_job(2, 23.01, 72.51, {1}, 5, 20, 300),
               make_job(3, 23.03, 72.56, {1}, 8, 45, 900),
               make_job(4, 23.06, 72.58, {1}, 2, 60, 1200),
               make_job(5, 23.09, 72.61, {2}, 10, 15, 200),
               make_job(6, 23.11, 72.64, {2}, 6, 50, 450)};
  return inst;
}

/// Keys and job -> worker map of the sample chromosome (indices are id - 1).
inline Chromosome figure_chromosome() {
  Chromosome c;
  c.keys = {.3, .7, .2, .33, .99, .65};
  // job id:        1  2  3  4  5  6
  // worker id:     2  1  1  2  3  3
  c.assignment = {1, 0, 0, 1, 2, 2};
  return c;
}

/// Fixed 5-job / 2-worker instance for the optimality checks.
inline ProblemInstance five_job_instance() {
  ProblemInstance inst;
  inst.workers = {make_worker(1, 23.00, 72.52, {{1, 9}, {2, 6}}),
                  make_worker(2, 23.08, 72.62, {{1, 6}, {3, 8}})};
  inst.jobs = {make_job(1, 23.02, 72.55, {1}, 7, 40, 240),
               make_job(2, 23.06, 72.60, {1}, 4, 30, 600),
               make_job(3, 23.01, 72.51, {2}, 9, 50, 300),
               make_job(4, 23.10, 72.64, {3}, 2, 25, 900),
               make_job(5, 23.04, 72.57, {1}, 6, 35, 420)};
  return inst;
}

namespace oracle {

inline double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
  constexpr double deg = std::numbers::pi / 180.0;
  const double p1 = a.latitude * deg;
  const double p2 = b.latitude * deg;
  const double s_lat = std::sin((p2 - p1) / 2.0);
  const double s_lon = std::sin((b.longitude - a.longitude) * deg / 2.0);
  const double h = s_lat * s_lat + std::cos(p1) * std::cos(p2) * s_lon * s_lon;
  return 2.0 * 6371.0 * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

struct Result {
  double total = 0.0;
  std::size_t violations = 0;
  std::vector<double> completion;  // by job index
};

/// Timeline and cost written out longhand: sort slots by key, place jobs,
/// walk each worker's jobs in order, then apply the weighted sum.
inline Result recompute(const ProblemInstance& inst, const Chromosome& c) {
  const ModelParams& p = inst.params;
  const std::size_t n = inst.jobs.size();

  std::vector<std::pair<double, std::size_t>> by_key;
  for (std::size_t i = 0; i < n; ++i) by_key.push_back({c.keys[i], i});
  std::sort(by_key.begin(), by_key.end());  // ties: lower slot first
  std::vector<std::size_t> job_at_slot(n);
  for (std::size_t r = 0; r < n; ++r) job_at_slot[by_key[r].second] = r;

  Result out;
  out.completion.assign(n, 0.0);
  double dist_sum = 0.0;
  double over_sum = 0.0;
  for (std::size_t w = 0; w < inst.workers.size(); ++w) {
    const Worker& worker = inst.workers[w];
    GeoPoint here = worker.base_location;
    double clock = 0.0;
    double km = 0.0;
    bool any = false;
    for (std::size_t slot = 0; slot < n; ++slot) {
      const std::size_t j = job_at_slot[slot];
      if (c.assignment[j] != w) continue;
      any = true;
      const Job& job = inst.jobs[j];
      const double leg = great_circle_km(here, job.location);
      km += leg;
      clock += leg / p.travel_speed * 60.0;
      int level = 10;
      for (SkillId s : job.required_skills) level = std::min(level, worker.skills.at(s));
      clock += job.base_duration * (1.0 + p.buffer_factor * (10 - level) / 5.0);
      out.completion[j] = clock;
      here = job.location;
    }
    if (!any) continue;
    const double home = great_circle_km(here, worker.base_location);
    km += home;
    clock += home / p.travel_speed * 60.0;
    dist_sum += km / p.d_max;
    over_sum += std::max(0.0, clock - p.regular_work) / p.o_max;
  }

  double sla_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = inst.jobs[j];
    sla_sum += job.priority / p.p_avg * std::exp((out.completion[j] - job.sla) / p.t_max);
    if (out.completion[j] > job.sla) ++out.violations;
  }
  out.total = p.w_d * dist_sum + p.w_sla * sla_sum + p.w_t * over_sum +
              p.penalty_weight * static_cast<double>(out.violations);
  return out;
}

}  // namespace oracle

}  // namespace onsite::testing
