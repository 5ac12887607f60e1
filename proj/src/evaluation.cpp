#include "onsite/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/core.h>

namespace onsite {

Evaluator::Evaluator(const ProblemInstance& instance)
    : instance_(&instance), n_(instance.job_count()) {
  const auto& jobs = instance.jobs;
  const auto& workers = instance.workers;
  const std::size_t m = workers.size();

  job_km_.resize(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      job_km_[a * n_ + b] = haversine_km(jobs[a].location, jobs[b].location);
    }
  }

  base_km_.resize(m * n_);
  service_.resize(m * n_, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t w = 0; w < m; ++w) {
    for (std::size_t j = 0; j < n_; ++j) {
      base_km_[w * n_ + j] = haversine_km(workers[w].base_location, jobs[j].location);
      if (is_eligible(jobs[j], workers[w])) {
        service_[w * n_ + j] = effective_duration(jobs[j], workers[w], instance.params);
      }
    }
  }
}

double Evaluator::base_to_job_km(std::size_t worker, std::size_t job) const {
  return base_km_[worker * n_ + job];
}

double Evaluator::job_to_job_km(std::size_t from, std::size_t to) const {
  return job_km_[from * n_ + to];
}

double Evaluator::service_minutes(std::size_t worker, std::size_t job) const {
  return service_[worker * n_ + job];
}

ItineraryReport Evaluator::simulate(
    const std::vector<std::vector<std::size_t>>& routes) const {
  std::vector<std::size_t> sequence;
  std::vector<std::size_t> assignment(n_, 0);
  for (std::size_t w = 0; w < routes.size(); ++w) {
    for (std::size_t job : routes[w]) {
      sequence.push_back(job);
      assignment[job] = w;
    }
  }
  return simulate_sequence(sequence, assignment);
}

ItineraryReport Evaluator::simulate_sequence(std::span<const std::size_t> sequence,
                                             std::span<const std::size_t> assignment) const {
  constexpr auto kNone = static_cast<std::size_t>(-1);
  const ModelParams& p = instance_->params;
  const double minutes_per_km = 60.0 / p.travel_speed;
  const std::size_t m = instance_->worker_count();

  ItineraryReport report;
  report.workers.resize(m);
  report.arrival.assign(n_, 0.0);
  report.completion.assign(n_, 0.0);
  std::vector<std::size_t> last(m, kNone);

  // Legs are accumulated per worker in route order; interleaving workers
  // does not change any per-worker sum.
  for (std::size_t job : sequence) {
    const std::size_t w = assignment[job];
    const double service = service_minutes(w, job);
    if (std::isnan(service)) {
      throw std::logic_error(fmt::format("job {} routed to ineligible worker {}",
                                         instance_->jobs[job].id, instance_->workers[w].id));
    }
    WorkerItinerary& it = report.workers[w];
    const double leg = last[w] == kNone ? base_to_job_km(w, job) : job_to_job_km(last[w], job);
    it.distance_km += leg;
    it.work_time += leg * minutes_per_km;
    report.arrival[job] = it.work_time;
    it.work_time += service;
    report.completion[job] = it.work_time;
    last[w] = job;
  }

  for (std::size_t w = 0; w < m; ++w) {
    if (last[w] == kNone) continue;
    WorkerItinerary& it = report.workers[w];
    const double home = base_to_job_km(w, last[w]);
    it.distance_km += home;
    it.work_time += home * minutes_per_km;
    it.overtime = std::max(0.0, it.work_time - p.regular_work);
  }
  return report;
}

CostBreakdown Evaluator::cost(const ItineraryReport& report) const {
  const ModelParams& p = instance_->params;
  CostBreakdown c;

  for (const WorkerItinerary& w : report.workers) {
    c.distance_term += w.distance_km / p.d_max;
    c.overtime_term += w.overtime / p.o_max;
    c.distance_km += w.distance_km;
    c.overtime_min += w.overtime;
  }
  for (std::size_t j = 0; j < n_; ++j) {
    const Job& job = instance_->jobs[j];
    const double t = report.completion[j];
    c.sla_term += (job.priority / p.p_avg) * std::exp((t - job.sla) / p.t_max);
    if (t > job.sla) ++c.violations;
  }

  c.feasible = c.violations == 0;
  c.total = p.w_d * c.distance_term + p.w_sla * c.sla_term + p.w_t * c.overtime_term;
  if (!c.feasible) c.total += p.penalty_weight * static_cast<double>(c.violations);
  return c;
}

CostBreakdown Evaluator::evaluate(const Chromosome& chromosome) const {
  return cost(simulate_sequence(decode(chromosome.keys), chromosome.assignment));
}

ItineraryReport simulate(const ProblemInstance& instance, const DecodedSchedule& schedule) {
  return Evaluator(instance).simulate(schedule.routes);
}

CostBreakdown cost(const ProblemInstance& instance, const ItineraryReport& report) {
  return Evaluator(instance).cost(report);
}

CostBreakdown evaluate(const ProblemInstance& instance, const Chromosome& chromosome) {
  return Evaluator(instance).evaluate(chromosome);
}

double brute_force_candidates(const ProblemInstance& instance) {
  double count = 1.0;
  for (std::size_t k = 2; k <= instance.job_count(); ++k) count *= static_cast<double>(k);
  for (const Job& job : instance.jobs) {
    count *= static_cast<double>(eligible_workers(job, instance).size());
  }
  return count;
}

OptimumResult brute_force_optimum(const ProblemInstance& instance) {
  const double candidates = brute_force_candidates(instance);
  if (candidates > kBruteForceLimit) {
    throw InstanceTooLarge(fmt::format(
        "brute force needs {:.3g} candidates, above the guard of {:.0e}", candidates,
        kBruteForceLimit));
  }

  const Evaluator evaluator(instance);
  const std::size_t n = instance.job_count();
  const std::size_t m = instance.worker_count();

  std::vector<std::vector<std::size_t>> eligible(n);
  for (std::size_t j = 0; j < n; ++j) eligible[j] = eligible_workers(instance.jobs[j], instance);

  const auto by_id = [&](std::size_t a, std::size_t b) {
    return instance.jobs[a].id < instance.jobs[b].id;
  };
  std::vector<std::size_t> sequence(n);
  std::iota(sequence.begin(), sequence.end(), std::size_t{0});
  std::sort(sequence.begin(), sequence.end(), by_id);

  OptimumResult best;
  best.candidates = candidates;
  bool have_best = false;
  std::vector<std::size_t> choice(n, 0);
  std::vector<std::size_t> assignment(n);

  do {
    std::fill(choice.begin(), choice.end(), 0);
    while (true) {
      for (std::size_t j = 0; j < n; ++j) assignment[j] = eligible[j][choice[j]];
      const CostBreakdown c = evaluator.cost(evaluator.simulate_sequence(sequence, assignment));

      // Enumeration runs in ascending sequence order, so keeping the first
      // of equal candidates yields the lexicographically smallest sequence.
      const bool better =
          !have_best || (c.feasible && !best.cost.feasible) ||
          (c.feasible == best.cost.feasible && c.total < best.cost.total);
      if (better) {
        have_best = true;
        best.cost = c;
        best.schedule.sequence = sequence;
        best.schedule.routes = routes_of(sequence, assignment, m);
        best.assignment = assignment;
      }

      // Odometer over the per-job eligible lists.
      std::size_t j = 0;
      while (j < n && ++choice[j] == eligible[j].size()) choice[j++] = 0;
      if (j == n) break;
    }
  } while (std::next_permutation(sequence.begin(), sequence.end(), by_id));

  return best;
}

}  // namespace onsite
