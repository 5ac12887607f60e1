#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "onsite/instance.hpp"

namespace onsite {

struct BoundingBox {
  double lat_min = 22.96;
  double lat_max = 23.12;
  double lon_min = 72.50;
  double lon_max = 72.68;

  bool operator==(const BoundingBox&) const = default;
};

struct IntRange {
  int lo = 0;
  int hi = 0;

  bool operator==(const IntRange&) const = default;
};

struct GeneratorConfig {
  std::size_t n_jobs = 80;
  std::size_t worker_ratio = 4;  // jobs per worker
  BoundingBox bbox;              // default covers Ahmedabad
  int n_skills = 10;
  double two_skill_probability = 0.5;
  std::uint64_t seed = 1;
  IntRange sla_range{120, 1440};
  IntRange duration_range{10, 60};
  IntRange priority_range{1, 10};
  IntRange level_range{5, 10};
  std::size_t skill_reroll_limit = 100;

  bool operator==(const GeneratorConfig&) const = default;
};

/// Throws std::invalid_argument.
void validate(const GeneratorConfig& config);

std::size_t worker_count_for(const GeneratorConfig& config);

struct GeneratedInstance {
  ProblemInstance instance;
  std::vector<std::string> repairs;  // one line per coverage fix applied
};

/// Draws a seeded random instance. Jobs left without an eligible worker
/// have their skills re-rolled; if that keeps failing, a worker with a free
/// skill slot learns the missing skill. Throws std::runtime_error when
/// coverage cannot be achieved.
GeneratedInstance generate(const GeneratorConfig& config, const ModelParams& params = {});

}  // namespace onsite
