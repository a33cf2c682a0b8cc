#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

#include "respmon/event_store.hpp"

// Window-scan kernels. Each comes in a serial reference form and an
// OpenMP form; the serial form is the oracle the parallel one is tested
// against, and the bench tool compares their throughput.
namespace respmon::kernels {

// The sensor mapping can only ever produce these eight atoms, so a window
// scan reduces to a bitmask OR.
enum AtomBit : std::uint32_t {
  kWheeze = 1u << 0,
  kCough = 1u << 1,
  kStridor = 1u << 2,
  kSneeze = 1u << 3,
  kSnuffle = 1u << 4,
  kVigorous = 1u << 5,
  kLowTemp = 1u << 6,
  kLowHumidity = 1u << 7,
};

// Atom bits contributed by one record; unknown sound labels set no bit.
std::uint32_t record_atom_mask(const SensorRecord& record,
                               const MappingThresholds& thresholds);

std::set<std::string> mask_to_atoms(std::uint32_t mask);

struct ObservationScan {
  std::uint32_t mask = 0;
  // label -> occurrences, for sounds the mapping does not know.
  std::map<std::string, std::size_t> unknown_sounds;
};

ObservationScan scan_observations_serial(std::span<const SensorRecord> records,
                                         const MappingThresholds& thresholds);
ObservationScan scan_observations_parallel(
    std::span<const SensorRecord> records,
    const MappingThresholds& thresholds);

enum class Bucketing { Hourly, Quarters };

// Bucket key for a time of day: "04:00" hourly, or the day-quarter name
// (night / morning / afternoon / evening).
std::string bucket_key(TimeOfDay t, Bucketing bucketing);

// bucket key -> sound label -> count, non-null sounds only.
using SymptomCounts = std::map<std::string, std::map<std::string, std::size_t>>;

SymptomCounts count_symptoms_serial(std::span<const SensorRecord> records,
                                    Bucketing bucketing);
SymptomCounts count_symptoms_parallel(std::span<const SensorRecord> records,
                                      Bucketing bucketing);

// hour of day -> activity level name -> count, non-null activity only.
using ActivityCounts = std::map<int, std::map<std::string, std::size_t>>;

ActivityCounts count_activity_serial(std::span<const SensorRecord> records);
ActivityCounts count_activity_parallel(std::span<const SensorRecord> records);

// Record count at which the parallel forms start paying for their thread
// setup; below it the public entry points stay serial.
inline constexpr std::size_t kParallelCutoff = 4096;

}  // namespace respmon::kernels
