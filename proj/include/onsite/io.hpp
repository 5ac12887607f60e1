#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "onsite/evaluation.hpp"
#include "onsite/ga.hpp"
#include "onsite/generator.hpp"
#include "onsite/instance.hpp"

namespace onsite::io {

using nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const ModelParams& params);
json to_json(const GAParams& params);
json to_json(const GeneratorConfig& config);
json to_json(const ProblemInstance& instance);

/// Field-wise overrides: keys absent from `j` leave the target untouched,
/// unknown keys raise FormatError.
void apply(const json& j, ModelParams& params);
void apply(const json& j, GAParams& params);
void apply(const json& j, GeneratorConfig& config);

/// Parses and validates an instance document.
ProblemInstance instance_from_json(const json& j);

/// Merged configuration for every subcommand. The model section, when
/// present, overrides the params stored in an instance file.
struct RunConfig {
  ModelParams model;
  GAParams ga;
  GeneratorConfig generator;
  json model_overrides = json::object();
};

RunConfig run_config_from_json(const json& j);
json to_json(const RunConfig& config);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

ProblemInstance read_instance(const std::filesystem::path& path);
std::string dump(const json& j);

/// "HH:MM" of a minutes-of-day value, rounded to the nearest minute.
std::string clock_time(double minutes_of_day);

json cost_to_json(const CostBreakdown& cost);

/// Per-worker routes with arrival and completion stamps, the global
/// sequence and the job -> worker map (all by id).
json schedule_to_json(const ProblemInstance& instance, const DecodedSchedule& schedule,
                      std::span<const std::size_t> assignment, const ItineraryReport& report,
                      const CostBreakdown& cost);

/// Reads "sequence" (job ids in service order) and "assignment"
/// (job id -> worker id) from a schedule document.
Chromosome chromosome_from_schedule_json(const json& j, const ProblemInstance& instance);

inline constexpr const char* kTraceHeader =
    "generation,best_cost,mean_cost,worst_cost,feasible_fraction,best_distance_km,"
    "best_overtime_min";

std::string trace_to_csv(const ConvergenceTrace& trace);

}  // namespace onsite::io
