#include "onsite/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <fmt/core.h>

namespace onsite {

// ADL hooks for the nested generator fields.
void to_json(nlohmann::json& j, const BoundingBox& b) {
  j = nlohmann::json::array({b.lat_min, b.lat_max, b.lon_min, b.lon_max});
}

void from_json(const nlohmann::json& j, BoundingBox& b) {
  if (!j.is_array() || j.size() != 4) {
    throw io::FormatError("bbox must be [lat_min, lat_max, lon_min, lon_max]");
  }
  b = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

void to_json(nlohmann::json& j, const IntRange& r) { j = nlohmann::json::array({r.lo, r.hi}); }

void from_json(const nlohmann::json& j, IntRange& r) {
  if (!j.is_array() || j.size() != 2) throw io::FormatError("ranges must be [lo, hi]");
  r = {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace onsite

namespace onsite::io {

namespace {

template <class F>
void visit_fields(ModelParams& p, F&& f) {
  f("d_max", p.d_max);
  f("t_max", p.t_max);
  f("o_max", p.o_max);
  f("p_avg", p.p_avg);
  f("w_d", p.w_d);
  f("w_sla", p.w_sla);
  f("w_t", p.w_t);
  f("travel_speed", p.travel_speed);
  f("regular_work", p.regular_work);
  f("buffer_factor", p.buffer_factor);
  f("skill_level_min", p.skill_level_min);
  f("skill_level_max", p.skill_level_max);
  f("penalty_weight", p.penalty_weight);
}

template <class F>
void visit_fields(GAParams& p, F&& f) {
  f("population_size", p.population_size);
  f("elitism_rate", p.elitism_rate);
  f("tournament_fraction", p.tournament_fraction);
  f("p_c_min", p.p_c_min);
  f("p_c_max", p.p_c_max);
  f("p_m_min", p.p_m_min);
  f("p_m_max", p.p_m_max);
  f("max_generations", p.max_generations);
  f("seed", p.seed);
  f("infeasible_retry_budget", p.infeasible_retry_budget);
  f("rank_best_high", p.rank_best_high);
}

template <class F>
void visit_fields(GeneratorConfig& c, F&& f) {
  f("n_jobs", c.n_jobs);
  f("worker_ratio", c.worker_ratio);
  f("bbox", c.bbox);
  f("n_skills", c.n_skills);
  f("two_skill_probability", c.two_skill_probability);
  f("seed", c.seed);
  f("sla_range", c.sla_range);
  f("duration_range", c.duration_range);
  f("priority_range", c.priority_range);
  f("level_range", c.level_range);
  f("skill_reroll_limit", c.skill_reroll_limit);
}

template <class T>
json fields_to_json(T value) {
  json j = json::object();
  visit_fields(value, [&](const char* key, const auto& field) { j[key] = field; });
  return j;
}

template <class T>
void apply_fields(const json& j, T& target, const char* section) {
  if (!j.is_object()) throw FormatError(fmt::format("{} must be a JSON object", section));
  for (const auto& [key, value] : j.items()) {
    bool found = false;
    visit_fields(target, [&](const char* name, auto& field) {
      if (key != name) return;
      found = true;
      try {
        using Field = std::decay_t<decltype(field)>;
        if constexpr (std::is_unsigned_v<Field>) {
          if (value.is_number_integer() && value.template get<long long>() < 0) {
            throw FormatError(fmt::format("{}.{} must be non-negative", section, key));
          }
        }
        field = value.template get<Field>();
      } catch (const json::exception& e) {
        throw FormatError(fmt::format("{}.{}: {}", section, key, e.what()));
      }
    });
    if (!found) throw FormatError(fmt::format("unknown key {}.{}", section, key));
  }
}

template <class T>
T get_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw FormatError(fmt::format("{}: missing \"{}\"", where, key));
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(fmt::format("{}.{}: {}", where, key, e.what()));
  }
}

}  // namespace

json to_json(const ModelParams& params) { return fields_to_json(params); }
json to_json(const GAParams& params) { return fields_to_json(params); }
json to_json(const GeneratorConfig& config) { return fields_to_json(config); }

void apply(const json& j, ModelParams& params) { apply_fields(j, params, "params"); }
void apply(const json& j, GAParams& params) { apply_fields(j, params, "ga"); }
void apply(const json& j, GeneratorConfig& config) { apply_fields(j, config, "generator"); }

json to_json(const ProblemInstance& instance) {
  json jobs = json::array();
  for (const Job& job : instance.jobs) {
    jobs.push_back({{"id", job.id},
                    {"lat", job.location.latitude},
                    {"lon", job.location.longitude},
                    {"skills", job.required_skills},
                    {"priority", job.priority},
                    {"duration_min", job.base_duration},
                    {"sla_min", job.sla}});
  }
  json workers = json::array();
  for (const Worker& w : instance.workers) {
    json skills = json::object();
    for (const auto& [s, level] : w.skills) skills[std::to_string(s)] = level;
    workers.push_back({{"id", w.id},
                       {"lat", w.base_location.latitude},
                       {"lon", w.base_location.longitude},
                       {"skills", skills},
                       {"shift_start_min", w.shift_start},
                       {"shift_end_min", w.shift_end}});
  }
  return {{"params", to_json(instance.params)}, {"jobs", jobs}, {"workers", workers}};
}

ProblemInstance instance_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  ProblemInstance inst;
  if (j.contains("params")) apply(j.at("params"), inst.params);

  if (!j.contains("jobs") || !j.at("jobs").is_array()) throw FormatError("missing jobs array");
  if (!j.contains("workers") || !j.at("workers").is_array()) {
    throw FormatError("missing workers array");
  }

  for (const json& e : j.at("jobs")) {
    const std::string where = fmt::format("jobs[{}]", inst.jobs.size());
    Job job;
    job.id = get_field<int>(e, "id", where);
    job.location = {get_field<double>(e, "lat", where), get_field<double>(e, "lon", where)};
    for (int s : get_field<std::vector<int>>(e, "skills", where)) {
      if (!job.required_skills.insert(s).second) {
        throw FormatError(fmt::format("{}: duplicate skill {}", where, s));
      }
    }
    job.priority = get_field<int>(e, "priority", where);
    job.base_duration = get_field<double>(e, "duration_min", where);
    job.sla = get_field<double>(e, "sla_min", where);
    inst.jobs.push_back(std::move(job));
  }

  for (const json& e : j.at("workers")) {
    const std::string where = fmt::format("workers[{}]", inst.workers.size());
    Worker w;
    w.id = get_field<int>(e, "id", where);
    w.base_location = {get_field<double>(e, "lat", where), get_field<double>(e, "lon", where)};
    const json skills = get_field<json>(e, "skills", where);
    if (!skills.is_object()) throw FormatError(where + ".skills must map skill id to level");
    for (const auto& [key, level] : skills.items()) {
      int skill = 0;
      try {
        std::size_t used = 0;
        skill = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw FormatError(fmt::format("{}: skill id \"{}\" is not an integer", where, key));
      }
      w.skills[skill] = level.get<int>();
    }
    if (e.contains("shift_start_min")) w.shift_start = e.at("shift_start_min").get<double>();
    if (e.contains("shift_end_min")) w.shift_end = e.at("shift_end_min").get<double>();
    inst.workers.push_back(std::move(w));
  }

  validate(inst);
  return inst;
}

RunConfig run_config_from_json(const json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "model") {
      apply(value, cfg.model);
      cfg.model_overrides = value;
    } else if (key == "ga") {
      apply(value, cfg.ga);
    } else if (key == "generator") {
      apply(value, cfg.generator);
    } else {
      throw FormatError(fmt::format("unknown config section \"{}\"", key));
    }
  }
  return cfg;
}

json to_json(const RunConfig& config) {
  return {{"model", to_json(config.model)},
          {"ga", to_json(config.ga)},
          {"generator", to_json(config.generator)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(fmt::format("cannot open {}", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
  out << text;
}

ProblemInstance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string clock_time(double minutes_of_day) {
  const long total = std::lround(minutes_of_day);
  return fmt::format("{:02d}:{:02d}", total / 60, total % 60);
}

json cost_to_json(const CostBreakdown& c) {
  return {{"distance_term", c.distance_term}, {"sla_term", c.sla_term},
          {"overtime_term", c.overtime_term}, {"total", c.total},
          {"violations", c.violations},       {"feasible", c.feasible},
          {"distance_km", c.distance_km},     {"overtime_min", c.overtime_min}};
}

json schedule_to_json(const ProblemInstance& instance, const DecodedSchedule& schedule,
                      std::span<const std::size_t> assignment, const ItineraryReport& report,
                      const CostBreakdown& cost) {
  json sequence = json::array();
  for (std::size_t j : schedule.sequence) sequence.push_back(instance.jobs[j].id);

  json assigned = json::object();
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    assigned[std::to_string(instance.jobs[j].id)] = instance.workers[assignment[j]].id;
  }

  json routes = json::array();
  for (std::size_t w = 0; w < schedule.routes.size(); ++w) {
    const Worker& worker = instance.workers[w];
    const WorkerItinerary& it = report.workers[w];
    json stops = json::array();
    for (std::size_t j : schedule.routes[w]) {
      const Job& job = instance.jobs[j];
      const double arrive = worker.shift_start + report.arrival[j];
      const double done = worker.shift_start + report.completion[j];
      stops.push_back({{"job_id", job.id},
                       {"arrival_min", report.arrival[j]},
                       {"completion_min", report.completion[j]},
                       {"arrival_of_day", std::lround(arrive)},
                       {"completion_of_day", std::lround(done)},
                       {"arrival_clock", clock_time(arrive)},
                       {"completion_clock", clock_time(done)},
                       {"sla_min", job.sla},
                       {"late", report.completion[j] > job.sla}});
    }
    const double back = worker.shift_start + it.work_time;
    routes.push_back({{"worker_id", worker.id},
                      {"distance_km", it.distance_km},
                      {"work_time_min", it.work_time},
                      {"overtime_min", it.overtime},
                      {"start_clock", clock_time(worker.shift_start)},
                      {"return_of_day", std::lround(back)},
                      {"return_clock", clock_time(back)},
                      {"stops", stops}});
  }

  return {{"cost", cost_to_json(cost)},
          {"feasible", cost.feasible},
          {"sequence", sequence},
          {"assignment", assigned},
          {"routes", routes}};
}

Chromosome chromosome_from_schedule_json(const json& j, const ProblemInstance& instance) {
  std::unordered_map<int, std::size_t> job_index;
  std::unordered_map<int, std::size_t> worker_index;
  for (std::size_t i = 0; i < instance.jobs.size(); ++i) job_index[instance.jobs[i].id] = i;
  for (std::size_t i = 0; i < instance.workers.size(); ++i) {
    worker_index[instance.workers[i].id] = i;
  }

  const auto ids = get_field<std::vector<int>>(j, "sequence", "schedule");
  if (ids.size() != instance.job_count()) {
    throw FormatError("schedule sequence must list every job exactly once");
  }
  std::vector<std::size_t> sequence;
  std::vector<char> seen(instance.job_count(), 0);
  for (int id : ids) {
    const auto it = job_index.find(id);
    if (it == job_index.end() || seen[it->second]) {
      throw FormatError(fmt::format("schedule sequence has unknown or repeated job {}", id));
    }
    seen[it->second] = 1;
    sequence.push_back(it->second);
  }

  const json assigned = get_field<json>(j, "assignment", "schedule");
  if (!assigned.is_object()) throw FormatError("schedule assignment must map job id to worker id");
  std::vector<std::size_t> assignment(instance.job_count());
  std::vector<char> given(instance.job_count(), 0);
  for (const auto& [key, value] : assigned.items()) {
    int id = 0;
    try {
      id = std::stoi(key);
    } catch (const std::exception&) {
      throw FormatError(fmt::format("assignment key \"{}\" is not a job id", key));
    }
    const auto job = job_index.find(id);
    const auto worker = worker_index.find(value.get<int>());
    if (job == job_index.end() || worker == worker_index.end()) {
      throw FormatError(fmt::format("assignment of job {} names an unknown job or worker", id));
    }
    assignment[job->second] = worker->second;
    given[job->second] = 1;
  }
  for (std::size_t i = 0; i < given.size(); ++i) {
    if (!given[i]) {
      throw FormatError(fmt::format("job {} has no assigned worker", instance.jobs[i].id));
    }
  }

  Chromosome c = chromosome_from_sequence(sequence, std::move(assignment));
  if (!is_valid(c, instance)) throw FormatError("schedule assigns a job to an ineligible worker");
  return c;
}

std::string trace_to_csv(const ConvergenceTrace& trace) {
  std::string out = kTraceHeader;
  out += '\n';
  for (std::size_t g = 0; g < trace.size(); ++g) {
    const GenerationStats& s = trace[g];
    out += fmt::format("{},{},{},{},{},{},{}\n", g, s.best_cost, s.mean_cost, s.worst_cost,
                       s.feasible_fraction, s.best_distance_km, s.best_overtime_min);
  }
  return out;
}

}  // namespace onsite::io
