#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "onsite/instance.hpp"

namespace onsite {

using Rng = std::mt19937_64;

/// One candidate schedule.
///
/// `keys[i]` is the random key of gene slot i; the job placed at slot i of
/// the global sequence is the one whose index equals the rank of keys[i].
/// `assignment[j]` is the worker index serving job index j.
struct Chromosome {
  std::vector<double> keys;
  std::vector<std::size_t> assignment;

  bool operator==(const Chromosome&) const = default;
};

struct DecodedSchedule {
  std::vector<std::size_t> sequence;             // job indices, service order
  std::vector<std::vector<std::size_t>> routes;  // per worker index
};

/// Rank-decodes the keys: sequence[i] = rank(keys[i]) - 1, where rank 1 is
/// the smallest key and equal keys rank by gene index.
std::vector<std::size_t> decode(std::span<const double> keys);

/// Splits a global sequence into per-worker routes, preserving order.
/// Every worker gets an entry, possibly empty.
std::vector<std::vector<std::size_t>> routes_of(std::span<const std::size_t> sequence,
                                                std::span<const std::size_t> assignment,
                                                std::size_t worker_count);

DecodedSchedule decode_schedule(const Chromosome& chromosome, std::size_t worker_count);

Chromosome random_chromosome(const ProblemInstance& instance, Rng& rng);

/// Builds keys whose decoding reproduces `sequence` exactly. Keys are
/// evenly spaced in [0, 1).
Chromosome chromosome_from_sequence(std::span<const std::size_t> sequence,
                                    std::vector<std::size_t> assignment);

/// True when the chromosome matches the instance size, keys are in [0, 1)
/// and every job is assigned to an eligible worker.
bool is_valid(const Chromosome& chromosome, const ProblemInstance& instance);

}  // namespace onsite
