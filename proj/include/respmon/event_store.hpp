#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "respmon/knowledge_base.hpp"
#include "respmon/timeutil.hpp"

namespace respmon {

enum class ActivityLevel { Sedentary, Moderate, Vigorous };

std::string_view to_string(ActivityLevel level);
ActivityLevel activity_from_string(std::string_view text);

// One captured sensor event. Sound and activity may both be absent
// (ambient-only rows).
struct SensorRecord {
  std::int64_t id = 0;
  std::optional<std::string> sound;           // classifier label, e.g. "Wheeze"
  std::optional<ActivityLevel> activity;
  double humidity_pct = 0.0;                  // [0, 100]
  double temperature_c = 0.0;                 // sanity band [-40, 60]
  TimeOfDay time;
  Date date;

  DateTime timestamp() const { return DateTime{date, time}; }
  bool operator==(const SensorRecord&) const = default;
};

// Cutoffs that turn raw measurements into trigger atoms. The sources name
// the triggers but not the numbers, so these ship as overridable defaults
// tuned for a warm-climate baseline.
struct MappingThresholds {
  double low_temp_c = 15.0;
  double low_humidity_pct = 40.0;
  std::set<ActivityLevel> vigorous_levels{ActivityLevel::Vigorous};

  static MappingThresholds parse(std::string_view json_text);
  static MappingThresholds load_file(const std::filesystem::path& path);
};

struct TimeRange {
  TimeOfDay from;
  TimeOfDay to;  // inclusive
};

// Records for one queried slice, sorted by (date, time, id) and
// duplicate-free by id.
struct EventWindow {
  std::vector<SensorRecord> records;
  std::optional<TimeSpan> span;
};

struct IngestReport {
  std::size_t appended = 0;
  std::vector<std::string> issues;  // one entry per skipped row, with line no.
};

inline constexpr std::string_view kEventFileHeader =
    "ID,Sound_Detected,Activity_Level,Relative_Humidity,Temperature_C,"
    "Event_Time,Date";

// Append-only event log with an in-memory copy. Optionally bound to a file:
// appends then also land in the file, and an existing file is replayed on
// open. Single writer, any number of readers; queries snapshot under a
// shared lock so no reader sees a half-written row.
class EventStore {
 public:
  EventStore() = default;
  explicit EventStore(const std::filesystem::path& log_path);

  // Parses a delimited event file and appends every valid row. Malformed
  // rows are skipped and reported with their line numbers. Throws ParseError
  // when the file is unreadable or its header does not match.
  IngestReport ingest_file(const std::filesystem::path& source);
  IngestReport ingest_stream(std::istream& in, std::string_view origin);

  void append(const SensorRecord& record);

  EventWindow query_window(const Date& date,
                           std::optional<TimeRange> range = {}) const;

  std::size_t size() const;

 private:
  void persist(const SensorRecord& record);

  mutable std::shared_mutex mutex_;
  std::vector<SensorRecord> records_;
  std::optional<std::filesystem::path> log_path_;
  std::ofstream log_;
};

// Serializes one record as an event-file line (ISO date, `null` for absent
// optionals, shortest round-trip float form).
std::string format_record(const SensorRecord& record);

// Parses one event-file line. Throws ParseError with a description of the
// offending field.
SensorRecord parse_record(std::string_view line);

// Canonical token for a sound label known to the atom mapping, or nullopt
// for labels from upstream classifiers we do not model. Lookup ignores case.
std::optional<std::string> sound_atom(std::string_view label);

// Evidence atoms contributed by a single record: the sound atom when the
// label is known, `vgr` for qualifying activity, `lt`/`lh` when the ambient
// readings fall below their cutoffs. Unknown sound labels contribute nothing
// and are reported through `unknown_sound` when given.
std::set<std::string> map_record(const SensorRecord& record,
                                 const MappingThresholds& thresholds,
                                 std::string* unknown_sound = nullptr);

// Union of map_record over the whole window, with the window span attached.
// Unknown sound labels are collected into `warnings` when given. Large
// windows are scanned in parallel; the result is identical either way.
ObservationSet build_observation_set(const EventWindow& window,
                                     const MappingThresholds& thresholds,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace respmon
