#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "respmon/timeutil.hpp"

namespace respmon {

struct ActivityPhase {
  double offset_min = 0.0;  // start, relative to scenario start
  std::string level;        // "Sedentary" | "Moderate" | "Vigorous"
};

struct AmbientProfile {
  double base_temp_c = 25.0;
  double base_humidity_pct = 60.0;
  double temp_drift_per_min = 0.0;
  double humidity_drift_per_min = 0.0;
  double temp_jitter = 0.0;      // uniform +/- amplitude, seeded
  double humidity_jitter = 0.0;
};

struct SymptomEvent {
  double offset_min = 0.0;
  std::string sound;
};

// A reproducible synthetic training session: activity phases, drifting
// ambient conditions, scripted or stochastic symptoms. Fixed seed means
// byte-identical output.
struct ScenarioConfig {
  Date date{2017, 4, 8};
  TimeOfDay start{4 * 3600 + 45 * 60};
  double duration_min = 0.0;
  int sample_interval_s = 5;
  std::vector<ActivityPhase> activity_schedule;
  AmbientProfile ambient;
  std::vector<SymptomEvent> symptom_script;
  // Alternative to the script: sound label -> expected occurrences per
  // minute, sampled per tick from the seeded generator.
  std::map<std::string, double> symptom_rates;
  std::uint64_t seed = 0;

  static ScenarioConfig parse(std::string_view json_text);
  static ScenarioConfig load_file(const std::filesystem::path& path);
};

// Writes a schema-conformant event file for the scenario. Throws
// ValidationError when an offset falls outside the duration.
void simulate(const ScenarioConfig& config, std::ostream& out);

std::string simulate_to_string(const ScenarioConfig& config);

}  // namespace respmon
