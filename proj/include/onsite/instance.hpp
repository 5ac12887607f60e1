#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace onsite {

inline constexpr double kEarthRadiusKm = 6371.0;

using SkillId = int;

struct GeoPoint {
  double latitude = 0.0;   // degrees, [-90, 90]
  double longitude = 0.0;  // degrees, [-180, 180]

  bool operator==(const GeoPoint&) const = default;
};

struct Job {
  int id = 0;
  GeoPoint location;
  std::set<SkillId> required_skills;
  int priority = 1;            // P_i, [1, 10]
  double base_duration = 10;   // minutes, [10, 60]
  double sla = 1440;           // T_i, minutes after shift start, (0, t_max]

  bool operator==(const Job&) const = default;
};

struct Worker {
  int id = 0;
  GeoPoint base_location;
  std::map<SkillId, int> skills;  // skill -> level
  double shift_start = 540;       // minutes of day (09:00)
  double shift_end = 1200;        // minutes of day (20:00)

  bool operator==(const Worker&) const = default;
};

/// Normalizers, weights and physical constants of the schedule model.
struct ModelParams {
  double d_max = 100.0;   // km a single worker may travel
  double t_max = 1440.0;  // max allowed SLA, minutes
  double o_max = 120.0;   // overtime normalizer, minutes
  double p_avg = 5.0;
  double w_d = 0.5;
  double w_sla = 0.3;
  double w_t = 0.2;
  double travel_speed = 30.0;   // km/h
  double regular_work = 480.0;  // minutes before overtime starts
  double buffer_factor = 0.2;
  int skill_level_min = 5;
  int skill_level_max = 10;
  // Added to the cost once per job that misses its SLA.
  double penalty_weight = 10.0;

  bool operator==(const ModelParams&) const = default;
};

class InvalidInstance : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Immutable problem input. Jobs and workers are addressed by their
/// position in `jobs` / `workers` everywhere inside the library; ids are
/// only used at the file boundary.
struct ProblemInstance {
  std::vector<Job> jobs;
  std::vector<Worker> workers;
  ModelParams params;

  std::size_t job_count() const { return jobs.size(); }
  std::size_t worker_count() const { return workers.size(); }

  bool operator==(const ProblemInstance&) const = default;
};

/// Great-circle distance on a sphere of radius kEarthRadiusKm.
double haversine_km(const GeoPoint& a, const GeoPoint& b);

bool is_eligible(const Job& job, const Worker& worker);

/// Indices of workers whose skills cover every skill the job requires,
/// ordered by ascending worker id.
std::vector<std::size_t> eligible_workers(const Job& job,
                                          const ProblemInstance& instance);

/// Service time of `job` when performed by `worker`. The buffer grows
/// linearly from 0 at the top skill level to `buffer_factor` at the bottom,
/// using the worker's weakest level among the job's required skills.
/// Throws std::logic_error when the worker is not eligible.
double effective_duration(const Job& job, const Worker& worker,
                          const ModelParams& params);

/// Throws InvalidInstance describing the first problem found.
void validate(const ProblemInstance& instance);

void validate(const ModelParams& params);

}  // namespace onsite
