#pragma once

#include <string>
#include <vector>

#include "respmon/event_store.hpp"
#include "respmon/window_kernels.hpp"

namespace respmon {

struct AmbientSample {
  TimeOfDay time;
  double temperature_c = 0.0;
  double humidity_pct = 0.0;
};

// Chart-data inputs for one day: symptom frequency per period, the ambient
// trace, and per-hour activity intensity.
struct DailySummary {
  kernels::SymptomCounts symptom_counts;
  std::vector<AmbientSample> ambient_series;
  kernels::ActivityCounts activity_intensity;
};

// Non-null sound counts per period bucket; empty buckets never appear.
kernels::SymptomCounts summarize_symptoms(
    const EventWindow& window,
    kernels::Bucketing bucketing = kernels::Bucketing::Hourly);

// Time-ordered (time, temperature, humidity) triple per record.
std::vector<AmbientSample> summarize_ambient(const EventWindow& window);

// Non-null activity counts per hour of day.
kernels::ActivityCounts summarize_activity(const EventWindow& window);

DailySummary summarize_day(
    const EventWindow& window,
    kernels::Bucketing bucketing = kernels::Bucketing::Hourly);

// Chart-data CSV bodies, one value row per line.
// symptoms: bucket,label,count / ambient: time,temp_c,humidity_pct /
// activity: hour,level,count
std::string symptoms_csv(const kernels::SymptomCounts& counts);
std::string ambient_csv(const std::vector<AmbientSample>& series);
std::string activity_csv(const kernels::ActivityCounts& counts);

}  // namespace respmon
