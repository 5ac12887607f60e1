#include "onsite/encoding.hpp"

#include <algorithm>
#include <utility>

#include "onsite/random.hpp"

namespace onsite {

std::vector<std::size_t> decode(std::span<const double> keys) {
  // (key, slot) pairs: ordering by slot on equal keys gives the stable tie rule.
  std::vector<std::pair<double, std::size_t>> order(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) order[i] = {keys[i], i};
  std::sort(order.begin(), order.end());

  std::vector<std::size_t> sequence(keys.size());
  for (std::size_t r = 0; r < order.size(); ++r) sequence[order[r].second] = r;
  return sequence;
}

std::vector<std::vector<std::size_t>> routes_of(std::span<const std::size_t> sequence,
                                                std::span<const std::size_t> assignment,
                                                std::size_t worker_count) {
  std::vector<std::vector<std::size_t>> routes(worker_count);
  for (std::size_t job : sequence) routes.at(assignment[job]).push_back(job);
  return routes;
}

DecodedSchedule decode_schedule(const Chromosome& chromosome, std::size_t worker_count) {
  DecodedSchedule out;
  out.sequence = decode(chromosome.keys);
  out.routes = routes_of(out.sequence, chromosome.assignment, worker_count);
  return out;
}

Chromosome random_chromosome(const ProblemInstance& instance, Rng& rng) {
  const std::size_t n = instance.job_count();
  Chromosome c;
  c.keys.resize(n);
  for (double& k : c.keys) k = uniform01(rng);

  c.assignment.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto eligible = eligible_workers(instance.jobs[j], instance);
    c.assignment[j] = eligible[uniform_index(rng, eligible.size())];
  }
  return c;
}

Chromosome chromosome_from_sequence(std::span<const std::size_t> sequence,
                                    std::vector<std::size_t> assignment) {
  Chromosome c;
  const double n = static_cast<double>(sequence.size());
  c.keys.reserve(sequence.size());
  for (std::size_t job : sequence) c.keys.push_back(static_cast<double>(job) / n);
  c.assignment = std::move(assignment);
  return c;
}

bool is_valid(const Chromosome& chromosome, const ProblemInstance& instance) {
  const std::size_t n = instance.job_count();
  if (chromosome.keys.size() != n || chromosome.assignment.size() != n) return false;
  for (double k : chromosome.keys) {
    if (!(k >= 0.0 && k < 1.0)) return false;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t w = chromosome.assignment[j];
    if (w >= instance.worker_count() || !is_eligible(instance.jobs[j], instance.workers[w])) {
      return false;
    }
  }
  return true;
}

}  // namespace onsite
