#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "onsite/encoding.hpp"
#include "onsite/evaluation.hpp"
#include "onsite/instance.hpp"

namespace onsite {

struct GAParams {
  std::size_t population_size = 100;  // N
  double elitism_rate = 0.1;
  double tournament_fraction = 0.1;
  double p_c_min = 0.6;
  double p_c_max = 0.9;
  double p_m_min = 0.0;
  double p_m_max = 0.2;
  std::size_t max_generations = 500;
  std::uint64_t seed = 1;
  std::size_t infeasible_retry_budget = 50;
  // Rank N is the lowest-cost member when true, rank 1 when false.
  bool rank_best_high = true;

  bool operator==(const GAParams&) const = default;
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const GAParams& params);

struct Member {
  Chromosome chromosome;
  CostBreakdown cost;
};

/// Population with fitness ranks. `order` lists member indices from worst
/// (highest total) to best; equal totals keep insertion order, the earlier
/// member counting as worse.
struct RankedPopulation {
  std::vector<Member> members;
  std::vector<std::size_t> order;
  std::vector<std::size_t> position;  // inverse of order
  bool best_high = true;

  std::size_t size() const { return members.size(); }
  std::size_t rank(std::size_t member) const {
    return best_high ? position[member] + 1 : members.size() - position[member];
  }
  const Member& best() const { return members[order.back()]; }
  const Member& worst() const { return members[order.front()]; }
};

RankedPopulation rank_population(std::vector<Member> members, bool rank_best_high = true);

/// Rank-adaptive crossover probability, driven by the larger of the two
/// parent ranks. Throws std::invalid_argument when N < 2 or a rank is
/// outside [1, N].
double crossover_probability(std::size_t rank_a, std::size_t rank_b, std::size_t n,
                             const GAParams& params);

double mutation_probability(std::size_t rank, std::size_t n, const GAParams& params);

std::size_t tournament_size(const GAParams& params, std::size_t n);

/// Draws k distinct members uniformly and returns the index of the fittest.
std::size_t tournament_select(const RankedPopulation& population, std::size_t k, Rng& rng);

/// Splices keys at `cut` (1 <= cut < n): child_a = a[0, cut) ++ b[cut, n).
/// Each child keeps its own parent's assignment.
std::pair<Chromosome, Chromosome> splice(const Chromosome& a, const Chromosome& b,
                                         std::size_t cut);

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      Rng& rng);

/// Reassigns each job independently with probability p_m to a uniformly
/// drawn eligible worker. Keys are untouched.
Chromosome mutate(Chromosome chromosome, double p_m,
                  const std::vector<std::vector<std::size_t>>& eligible, Rng& rng);

Chromosome mutate(Chromosome chromosome, double p_m, const ProblemInstance& instance, Rng& rng);

struct GenerationStats {
  double best_cost = 0.0;
  double mean_cost = 0.0;
  double worst_cost = 0.0;
  double feasible_fraction = 0.0;
  double best_distance_km = 0.0;
  double best_overtime_min = 0.0;

  bool operator==(const GenerationStats&) const = default;
};

using ConvergenceTrace = std::vector<GenerationStats>;

struct EvolveResult {
  Member best;
  ConvergenceTrace trace;
  std::vector<Member> initial_population;
  std::vector<Member> final_population;
};

/// Runs the generational loop for params.max_generations generations and
/// returns the best member of the last generation. Throws InvalidInstance
/// or std::invalid_argument on bad input.
EvolveResult evolve(const ProblemInstance& instance, const GAParams& params);

}  // namespace onsite
