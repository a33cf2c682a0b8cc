#include "respmon/window_kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <array>
#include <cstdio>
#include <vector>

namespace respmon::kernels {

namespace {

struct AtomName {
  std::uint32_t bit;
  const char* id;
};

constexpr std::array<AtomName, 8> kAtomNames = {{
    {kWheeze, "whz"},
    {kCough, "cgh"},
    {kStridor, "str"},
    {kSneeze, "snz"},
    {kSnuffle, "snf"},
    {kVigorous, "vgr"},
    {kLowTemp, "lt"},
    {kLowHumidity, "lh"},
}};

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

int this_thread() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

}  // namespace

std::uint32_t record_atom_mask(const SensorRecord& record,
                               const MappingThresholds& thresholds) {
  std::uint32_t mask = 0;
  if (record.sound) {
    const auto atom = sound_atom(*record.sound);
    if (atom == "whz") mask |= kWheeze;
    else if (atom == "cgh") mask |= kCough;
    else if (atom == "str") mask |= kStridor;
    else if (atom == "snz") mask |= kSneeze;
    else if (atom == "snf") mask |= kSnuffle;
  }
  if (record.activity && thresholds.vigorous_levels.contains(*record.activity)) {
    mask |= kVigorous;
  }
  if (record.temperature_c < thresholds.low_temp_c) mask |= kLowTemp;
  if (record.humidity_pct < thresholds.low_humidity_pct) mask |= kLowHumidity;
  return mask;
}

std::set<std::string> mask_to_atoms(std::uint32_t mask) {
  std::set<std::string> atoms;
  for (const auto& [bit, id] : kAtomNames) {
    if (mask & bit) atoms.insert(id);
  }
  return atoms;
}

ObservationScan scan_observations_serial(std::span<const SensorRecord> records,
                                         const MappingThresholds& thresholds) {
  ObservationScan scan;
  for (const auto& record : records) {
    scan.mask |= record_atom_mask(record, thresholds);
    if (record.sound && !sound_atom(*record.sound)) {
      ++scan.unknown_sounds[*record.sound];
    }
  }
  return scan;
}

ObservationScan scan_observations_parallel(
    std::span<const SensorRecord> records,
    const MappingThresholds& thresholds) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(records.size());
  std::uint32_t mask = 0;
  std::vector<std::map<std::string, std::size_t>> unknown_per_thread(
      static_cast<std::size_t>(max_threads()));

#pragma omp parallel for schedule(static) reduction(| : mask)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const SensorRecord& record = records[static_cast<std::size_t>(i)];
    mask |= record_atom_mask(record, thresholds);
    if (record.sound && !sound_atom(*record.sound)) {
      ++unknown_per_thread[static_cast<std::size_t>(this_thread())]
          [*record.sound];
    }
  }

  ObservationScan scan;
  scan.mask = mask;
  for (const auto& local : unknown_per_thread) {
    for (const auto& [label, count] : local) {
      scan.unknown_sounds[label] += count;
    }
  }
  return scan;
}

std::string bucket_key(TimeOfDay t, Bucketing bucketing) {
  if (bucketing == Bucketing::Hourly) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%02d:00", t.hour());
    return buf;
  }
  const int h = t.hour();
  if (h < 6) return "night";
  if (h < 12) return "morning";
  if (h < 18) return "afternoon";
  return "evening";
}

SymptomCounts count_symptoms_serial(std::span<const SensorRecord> records,
                                    Bucketing bucketing) {
  SymptomCounts counts;
  for (const auto& record : records) {
    if (!record.sound) continue;
    ++counts[bucket_key(record.time, bucketing)][*record.sound];
  }
  return counts;
}

SymptomCounts count_symptoms_parallel(std::span<const SensorRecord> records,
                                      Bucketing bucketing) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<SymptomCounts> per_thread(static_cast<std::size_t>(max_threads()));

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const SensorRecord& record = records[static_cast<std::size_t>(i)];
    if (!record.sound) continue;
    ++per_thread[static_cast<std::size_t>(this_thread())]
        [bucket_key(record.time, bucketing)][*record.sound];
  }

  SymptomCounts counts;
  for (const auto& local : per_thread) {
    for (const auto& [bucket, labels] : local) {
      for (const auto& [label, count] : labels) {
        counts[bucket][label] += count;
      }
    }
  }
  return counts;
}

ActivityCounts count_activity_serial(std::span<const SensorRecord> records) {
  ActivityCounts counts;
  for (const auto& record : records) {
    if (!record.activity) continue;
    ++counts[record.time.hour()][std::string(to_string(*record.activity))];
  }
  return counts;
}

ActivityCounts count_activity_parallel(std::span<const SensorRecord> records) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(records.size());
  std::vector<ActivityCounts> per_thread(static_cast<std::size_t>(max_threads()));

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const SensorRecord& record = records[static_cast<std::size_t>(i)];
    if (!record.activity) continue;
    ++per_thread[static_cast<std::size_t>(this_thread())]
        [record.time.hour()][std::string(to_string(*record.activity))];
  }

  ActivityCounts counts;
  for (const auto& local : per_thread) {
    for (const auto& [hour, levels] : local) {
      for (const auto& [level, count] : levels) {
        counts[hour][level] += count;
      }
    }
  }
  return counts;
}

}  // namespace respmon::kernels
