#include "onsite/ga.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

#include <fmt/core.h>

#include "onsite/random.hpp"

namespace onsite {

namespace {

void check_ranks(std::size_t n, std::initializer_list<std::size_t> ranks) {
  if (n < 2) throw std::invalid_argument("adaptive probabilities need a population of N >= 2");
  for (std::size_t r : ranks) {
    if (r < 1 || r > n) {
      throw std::invalid_argument(fmt::format("rank {} outside [1, {}]", r, n));
    }
  }
}

double interpolate(double lo, double hi, std::size_t rank, std::size_t n) {
  const double scaled = static_cast<double>(rank - 1) / static_cast<double>(n - 1);
  return lo + (hi - lo) * (1.0 - scaled);
}

}  // namespace

void validate(const GAParams& p) {
  const auto probability = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (p.population_size < 2) throw std::invalid_argument("population_size must be at least 2");
  if (!probability(p.p_c_min) || !probability(p.p_c_max) || p.p_c_min > p.p_c_max) {
    throw std::invalid_argument("crossover bounds must satisfy 0 <= p_c_min <= p_c_max <= 1");
  }
  if (!probability(p.p_m_min) || !probability(p.p_m_max) || p.p_m_min > p.p_m_max) {
    throw std::invalid_argument("mutation bounds must satisfy 0 <= p_m_min <= p_m_max <= 1");
  }
  if (!(p.elitism_rate > 0.0 && p.elitism_rate < 1.0)) {
    throw std::invalid_argument("elitism_rate must lie in (0, 1)");
  }
  if (!(p.tournament_fraction > 0.0 && p.tournament_fraction <= 1.0)) {
    throw std::invalid_argument("tournament_fraction must lie in (0, 1]");
  }
  if (p.max_generations < 1) throw std::invalid_argument("max_generations must be at least 1");
}

RankedPopulation rank_population(std::vector<Member> members, bool rank_best_high) {
  RankedPopulation pop;
  pop.best_high = rank_best_high;
  pop.members = std::move(members);
  pop.order.resize(pop.members.size());
  std::iota(pop.order.begin(), pop.order.end(), std::size_t{0});
  std::stable_sort(pop.order.begin(), pop.order.end(), [&](std::size_t a, std::size_t b) {
    return pop.members[a].cost.total > pop.members[b].cost.total;
  });
  pop.position.resize(pop.order.size());
  for (std::size_t i = 0; i < pop.order.size(); ++i) pop.position[pop.order[i]] = i;
  return pop;
}

double crossover_probability(std::size_t rank_a, std::size_t rank_b, std::size_t n,
                             const GAParams& params) {
  check_ranks(n, {rank_a, rank_b});
  return interpolate(params.p_c_min, params.p_c_max, std::max(rank_a, rank_b), n);
}

double mutation_probability(std::size_t rank, std::size_t n, const GAParams& params) {
  check_ranks(n, {rank});
  return interpolate(params.p_m_min, params.p_m_max, rank, n);
}

std::size_t tournament_size(const GAParams& params, std::size_t n) {
  const auto k = static_cast<std::size_t>(std::llround(params.tournament_fraction * n));
  return std::clamp<std::size_t>(k, 1, n);
}

std::size_t tournament_select(const RankedPopulation& population, std::size_t k, Rng& rng) {
  const std::size_t n = population.size();
  if (k < 1 || k > n) throw std::invalid_argument("tournament size must lie in [1, N]");

  // Floyd's sampling of a uniform k-subset.
  std::vector<char> taken(n, 0);
  std::size_t winner = 0;
  bool first = true;
  for (std::size_t j = n - k; j < n; ++j) {
    std::size_t pick = uniform_index(rng, j + 1);
    if (taken[pick]) pick = j;
    taken[pick] = 1;
    if (first || population.position[pick] > population.position[winner]) winner = pick;
    first = false;
  }
  return winner;
}

std::pair<Chromosome, Chromosome> splice(const Chromosome& a, const Chromosome& b,
                                         std::size_t cut) {
  const std::size_t n = a.keys.size();
  if (b.keys.size() != n) throw std::invalid_argument("parents differ in length");
  if (cut < 1 || cut >= n) throw std::invalid_argument("cut point must lie in [1, n)");

  std::pair<Chromosome, Chromosome> children{a, b};
  std::copy(b.keys.begin() + cut, b.keys.end(), children.first.keys.begin() + cut);
  std::copy(a.keys.begin() + cut, a.keys.end(), children.second.keys.begin() + cut);
  return children;
}

std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a, const Chromosome& b,
                                                      Rng& rng) {
  const std::size_t n = a.keys.size();
  if (n < 2) return {a, b};
  return splice(a, b, 1 + uniform_index(rng, n - 1));
}

Chromosome mutate(Chromosome chromosome, double p_m,
                  const std::vector<std::vector<std::size_t>>& eligible, Rng& rng) {
  for (std::size_t j = 0; j < chromosome.assignment.size(); ++j) {
    if (uniform01(rng) < p_m) {
      const auto& options = eligible[j];
      chromosome.assignment[j] = options[uniform_index(rng, options.size())];
    }
  }
  return chromosome;
}

Chromosome mutate(Chromosome chromosome, double p_m, const ProblemInstance& instance,
                  Rng& rng) {
  std::vector<std::vector<std::size_t>> eligible;
  eligible.reserve(instance.job_count());
  for (const Job& job : instance.jobs) eligible.push_back(eligible_workers(job, instance));
  return mutate(std::move(chromosome), p_m, eligible, rng);
}

namespace {

GenerationStats summarize(const RankedPopulation& pop) {
  GenerationStats s;
  const Member& best = pop.best();
  s.best_cost = best.cost.total;
  s.worst_cost = pop.worst().cost.total;
  s.best_distance_km = best.cost.distance_km;
  s.best_overtime_min = best.cost.overtime_min;
  double sum = 0.0;
  std::size_t feasible = 0;
  for (const Member& m : pop.members) {
    sum += m.cost.total;
    if (m.cost.feasible) ++feasible;
  }
  s.mean_cost = sum / static_cast<double>(pop.size());
  s.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(pop.size());
  return s;
}

}  // namespace

EvolveResult evolve(const ProblemInstance& instance, const GAParams& params) {
  validate(instance);
  validate(params);

  const std::size_t n_pop = params.population_size;
  const auto elite_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(params.elitism_rate * n_pop - 1e-9)), 1, n_pop);
  const std::size_t k = tournament_size(params, n_pop);

  const Evaluator evaluator(instance);
  std::vector<std::vector<std::size_t>> eligible;
  for (const Job& job : instance.jobs) eligible.push_back(eligible_workers(job, instance));

  Rng rng(params.seed);
  std::vector<Member> members;
  members.reserve(n_pop);
  for (std::size_t i = 0; i < n_pop; ++i) {
    Chromosome c = random_chromosome(instance, rng);
    CostBreakdown cost = evaluator.evaluate(c);
    members.push_back({std::move(c), cost});
  }

  EvolveResult result;
  result.initial_population = members;
  result.trace.reserve(params.max_generations);

  // Random stream order per offspring pair: tournament a, tournament b,
  // crossover draw, cut point (only when crossing), mutation of child a,
  // mutation of child b.
  const auto breed = [&](const RankedPopulation& pop, std::deque<Member>& out) {
    const std::size_t a = tournament_select(pop, k, rng);
    const std::size_t b = tournament_select(pop, k, rng);
    const std::size_t rank_a = pop.rank(a);
    const std::size_t rank_b = pop.rank(b);
    const Chromosome& pa = pop.members[a].chromosome;
    const Chromosome& pb = pop.members[b].chromosome;

    const double p_c = crossover_probability(rank_a, rank_b, n_pop, params);
    auto children = uniform01(rng) < p_c ? one_point_crossover(pa, pb, rng)
                                         : std::pair<Chromosome, Chromosome>{pa, pb};
    Chromosome ca = mutate(std::move(children.first),
                           mutation_probability(rank_a, n_pop, params), eligible, rng);
    Chromosome cb = mutate(std::move(children.second),
                           mutation_probability(rank_b, n_pop, params), eligible, rng);
    CostBreakdown cost_a = evaluator.evaluate(ca);
    CostBreakdown cost_b = evaluator.evaluate(cb);
    out.push_back({std::move(ca), cost_a});
    out.push_back({std::move(cb), cost_b});
  };

  RankedPopulation ranked = rank_population(std::move(members), params.rank_best_high);
  for (std::size_t gen = 0;; ++gen) {
    result.trace.push_back(summarize(ranked));
    if (gen + 1 == params.max_generations) break;

    std::vector<Member> next;
    next.reserve(n_pop);
    for (std::size_t e = 0; e < elite_count; ++e) {
      next.push_back(ranked.members[ranked.order[n_pop - 1 - e]]);
    }

    // Each slot takes the first feasible child produced for it, or the
    // last one tried once the retry budget is spent. Unused children roll
    // over to the next slot.
    std::deque<Member> pending;
    while (next.size() < n_pop) {
      for (std::size_t attempt = 0;; ++attempt) {
        if (pending.empty()) breed(ranked, pending);
        Member child = std::move(pending.front());
        pending.pop_front();
        if (child.cost.feasible || attempt >= params.infeasible_retry_budget) {
          next.push_back(std::move(child));
          break;
        }
      }
    }
    ranked = rank_population(std::move(next), params.rank_best_high);
  }

  result.best = ranked.best();
  result.final_population = std::move(ranked.members);
  return result;
}

}  // namespace onsite
