#include "respmon/summaries.hpp"

#include <charconv>
#include <cstdio>

namespace respmon {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

kernels::SymptomCounts summarize_symptoms(const EventWindow& window,
                                          kernels::Bucketing bucketing) {
  const std::span<const SensorRecord> records(window.records);
  return records.size() >= kernels::kParallelCutoff
             ? kernels::count_symptoms_parallel(records, bucketing)
             : kernels::count_symptoms_serial(records, bucketing);
}

std::vector<AmbientSample> summarize_ambient(const EventWindow& window) {
  std::vector<AmbientSample> series;
  series.reserve(window.records.size());
  // Window records are already time-sorted.
  for (const auto& record : window.records) {
    series.push_back(
        AmbientSample{record.time, record.temperature_c, record.humidity_pct});
  }
  return series;
}

kernels::ActivityCounts summarize_activity(const EventWindow& window) {
  const std::span<const SensorRecord> records(window.records);
  return records.size() >= kernels::kParallelCutoff
             ? kernels::count_activity_parallel(records)
             : kernels::count_activity_serial(records);
}

DailySummary summarize_day(const EventWindow& window,
                           kernels::Bucketing bucketing) {
  return DailySummary{summarize_symptoms(window, bucketing),
                      summarize_ambient(window),
                      summarize_activity(window)};
}

std::string symptoms_csv(const kernels::SymptomCounts& counts) {
  std::string out = "bucket,label,count\n";
  for (const auto& [bucket, labels] : counts) {
    for (const auto& [label, count] : labels) {
      out += bucket + "," + label + "," + std::to_string(count) + "\n";
    }
  }
  return out;
}

std::string ambient_csv(const std::vector<AmbientSample>& series) {
  std::string out = "time,temp_c,humidity_pct\n";
  for (const auto& sample : series) {
    out += to_string(sample.time) + "," + format_double(sample.temperature_c) +
           "," + format_double(sample.humidity_pct) + "\n";
  }
  return out;
}

std::string activity_csv(const kernels::ActivityCounts& counts) {
  std::string out = "hour,level,count\n";
  for (const auto& [hour, levels] : counts) {
    for (const auto& [level, count] : levels) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "%02d", hour);
      out += std::string(buf) + "," + level + "," + std::to_string(count) +
             "\n";
    }
  }
  return out;
}

}  // namespace respmon
