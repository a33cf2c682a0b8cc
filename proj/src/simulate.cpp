#include "respmon/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "respmon/errors.hpp"
#include "respmon/event_store.hpp"

namespace respmon {

namespace {

void check_offset(double offset_min, double duration_min, const char* what) {
  if (offset_min < 0.0 || offset_min > duration_min) {
    throw ValidationError(std::string(what) + " offset " +
                          std::to_string(offset_min) +
                          " min falls outside the scenario duration");
  }
}

}  // namespace

ScenarioConfig ScenarioConfig::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario config is not valid JSON: ") +
                     e.what());
  }
  ScenarioConfig config;
  try {
    if (doc.contains("date")) {
      config.date = parse_date(doc.at("date").get<std::string>());
    }
    if (doc.contains("start_time")) {
      config.start = parse_time(doc.at("start_time").get<std::string>());
    }
    config.duration_min = doc.at("duration_min").get<double>();
    config.sample_interval_s =
        doc.value("sample_interval_s", config.sample_interval_s);
    for (const auto& phase : doc.value("activity_schedule",
                                       nlohmann::json::array())) {
      config.activity_schedule.push_back(
          ActivityPhase{phase.at("offset_min").get<double>(),
                        phase.at("level").get<std::string>()});
    }
    if (doc.contains("ambient")) {
      const auto& a = doc.at("ambient");
      config.ambient.base_temp_c = a.value("base_temp_c", 25.0);
      config.ambient.base_humidity_pct = a.value("base_humidity_pct", 60.0);
      config.ambient.temp_drift_per_min = a.value("temp_drift_per_min", 0.0);
      config.ambient.humidity_drift_per_min =
          a.value("humidity_drift_per_min", 0.0);
      config.ambient.temp_jitter = a.value("temp_jitter", 0.0);
      config.ambient.humidity_jitter = a.value("humidity_jitter", 0.0);
    }
    for (const auto& ev : doc.value("symptom_script",
                                    nlohmann::json::array())) {
      config.symptom_script.push_back(
          SymptomEvent{ev.at("offset_min").get<double>(),
                       ev.at("sound").get<std::string>()});
    }
    if (doc.contains("symptom_rates")) {
      for (const auto& [sound, rate] : doc.at("symptom_rates").items()) {
        config.symptom_rates[sound] = rate.get<double>();
      }
    }
    config.seed = doc.value("seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scenario config schema violation: ") +
                     e.what());
  }
  if (config.duration_min < 0.0) {
    throw ValidationError("scenario duration must be nonnegative");
  }
  if (config.sample_interval_s <= 0) {
    throw ValidationError("sample interval must be positive");
  }
  return config;
}

ScenarioConfig ScenarioConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario config: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void simulate(const ScenarioConfig& config, std::ostream& out) {
  for (const auto& phase : config.activity_schedule) {
    check_offset(phase.offset_min, config.duration_min, "activity phase");
    activity_from_string(phase.level);  // reject unknown levels up front
  }
  for (const auto& ev : config.symptom_script) {
    check_offset(ev.offset_min, config.duration_min, "symptom event");
  }

  out << kEventFileHeader << '\n';

  const double duration_s = config.duration_min * 60.0;
  const int interval = config.sample_interval_s;
  const std::size_t ticks =
      static_cast<std::size_t>(std::ceil(duration_s / interval));

  // Scripted symptoms land on the tick covering their offset; a collision
  // slides to the next free tick so no scripted sound is ever lost.
  std::map<std::size_t, std::string> scripted;
  for (const auto& ev : config.symptom_script) {
    std::size_t idx =
        static_cast<std::size_t>(ev.offset_min * 60.0 / interval);
    while (idx < ticks && scripted.contains(idx)) ++idx;
    if (idx >= ticks) {
      throw ValidationError("symptom script denser than the sample grid");
    }
    scripted[idx] = ev.sound;
  }

  std::vector<std::pair<double, std::string>> schedule;
  for (const auto& phase : config.activity_schedule) {
    schedule.emplace_back(phase.offset_min * 60.0, phase.level);
  }
  std::sort(schedule.begin(), schedule.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> chance(0.0, 1.0);

  const std::int64_t start_epoch =
      epoch_seconds(DateTime{config.date, config.start});

  for (std::size_t tick = 0; tick < ticks; ++tick) {
    const double t_s = static_cast<double>(tick) * interval;
    const double t_min = t_s / 60.0;

    std::string activity = "null";
    for (const auto& [offset_s, level] : schedule) {
      if (offset_s <= t_s) activity = level;
    }

    double temp = config.ambient.base_temp_c +
                  config.ambient.temp_drift_per_min * t_min +
                  config.ambient.temp_jitter * unit(rng);
    double humidity = config.ambient.base_humidity_pct +
                      config.ambient.humidity_drift_per_min * t_min +
                      config.ambient.humidity_jitter * unit(rng);
    temp = std::clamp(temp, -40.0, 60.0);
    humidity = std::clamp(humidity, 0.0, 100.0);

    std::string sound = "null";
    if (const auto it = scripted.find(tick); it != scripted.end()) {
      sound = it->second;
    }
    for (const auto& [label, per_min] : config.symptom_rates) {
      const double p = std::min(1.0, per_min * interval / 60.0);
      const bool hit = chance(rng) < p;
      if (hit && sound == "null") sound = label;
    }

    const std::int64_t epoch = start_epoch + static_cast<std::int64_t>(t_s);
    const Date date = civil_from_days(epoch / 86400);
    const TimeOfDay time{static_cast<int>(epoch % 86400)};

    char row[160];
    std::snprintf(row, sizeof(row), "%zu,%s,%s,%.2f,%.2f,%s,%s",
                  tick + 1, sound.c_str(), activity.c_str(), humidity, temp,
                  to_string(time).c_str(), to_string(date).c_str());
    out << row << '\n';
  }
}

std::string simulate_to_string(const ScenarioConfig& config) {
  std::ostringstream out;
  simulate(config, out);
  return out.str();
}

}  // namespace respmon
