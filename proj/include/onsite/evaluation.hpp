#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "onsite/encoding.hpp"
#include "onsite/instance.hpp"

namespace onsite {

struct WorkerItinerary {
  double distance_km = 0.0;  // d_i, including the return leg
  double work_time = 0.0;    // minutes from shift start until back at base
  double overtime = 0.0;     // O_i = max(0, work_time - regular_work)
};

/// Simulated day of every worker. Job times are minutes after the serving
/// worker's shift start, indexed by job index.
struct ItineraryReport {
  std::vector<WorkerItinerary> workers;
  std::vector<double> arrival;
  std::vector<double> completion;  // t_i
};

struct CostBreakdown {
  double distance_term = 0.0;  // sum d_i / d_max
  double sla_term = 0.0;       // sum (P_i / p_avg) exp((t_i - T_i) / t_max)
  double overtime_term = 0.0;  // sum O_i / o_max
  double total = 0.0;          // penalized when infeasible
  std::size_t violations = 0;  // jobs with t_i > T_i
  bool feasible = true;

  double distance_km = 0.0;    // sum d_i
  double overtime_min = 0.0;   // sum O_i

  bool operator==(const CostBreakdown&) const = default;
};

/// Schedule evaluator bound to one instance. Precomputes the distance table
/// and the worker/job service times so repeated evaluations avoid
/// trigonometry. Every free function below goes through this class, so the
/// two paths are bit-identical.
class Evaluator {
 public:
  explicit Evaluator(const ProblemInstance& instance);

  const ProblemInstance& instance() const { return *instance_; }

  ItineraryReport simulate(const std::vector<std::vector<std::size_t>>& routes) const;
  /// Same timeline, driven directly by a global sequence and job -> worker map.
  ItineraryReport simulate_sequence(std::span<const std::size_t> sequence,
                                    std::span<const std::size_t> assignment) const;
  CostBreakdown cost(const ItineraryReport& report) const;
  CostBreakdown evaluate(const Chromosome& chromosome) const;

  /// Travel distance between a worker base and a job, or between two jobs.
  double base_to_job_km(std::size_t worker, std::size_t job) const;
  double job_to_job_km(std::size_t from, std::size_t to) const;
  double service_minutes(std::size_t worker, std::size_t job) const;

 private:
  const ProblemInstance* instance_;
  std::size_t n_;
  std::vector<double> job_km_;   // n x n
  std::vector<double> base_km_;  // m x n
  std::vector<double> service_;  // m x n, NaN where ineligible
};

ItineraryReport simulate(const ProblemInstance& instance, const DecodedSchedule& schedule);

CostBreakdown cost(const ProblemInstance& instance, const ItineraryReport& report);

CostBreakdown evaluate(const ProblemInstance& instance, const Chromosome& chromosome);

class InstanceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OptimumResult {
  DecodedSchedule schedule;
  std::vector<std::size_t> assignment;
  CostBreakdown cost;
  double candidates = 0;  // permutations x assignments enumerated
};

inline constexpr double kBruteForceLimit = 1e7;

/// Exhaustive search over every job order and every eligible assignment.
/// Feasible candidates beat infeasible ones; then lower total; then the
/// lexicographically smaller sequence. Throws InstanceTooLarge when
/// n! * prod |eligible(j)| exceeds kBruteForceLimit.
OptimumResult brute_force_optimum(const ProblemInstance& instance);

/// n! * prod |eligible(j)|, saturating in floating point.
double brute_force_candidates(const ProblemInstance& instance);

}  // namespace onsite
