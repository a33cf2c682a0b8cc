#include "respmon/event_store.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "respmon/errors.hpp"
#include "respmon/window_kernels.hpp"

namespace respmon {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

double parse_double(std::string_view s, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("invalid " + std::string(what) + ": '" + std::string(s) +
                     "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

void validate_bands(const SensorRecord& record) {
  if (record.humidity_pct < 0.0 || record.humidity_pct > 100.0) {
    throw ParseError("relative humidity " +
                     format_double(record.humidity_pct) + " outside [0,100]");
  }
  if (record.temperature_c < -40.0 || record.temperature_c > 60.0) {
    throw ParseError("temperature " + format_double(record.temperature_c) +
                     " outside the sanity band [-40,60]");
  }
}

}  // namespace

std::string_view to_string(ActivityLevel level) {
  switch (level) {
    case ActivityLevel::Sedentary: return "Sedentary";
    case ActivityLevel::Moderate: return "Moderate";
    case ActivityLevel::Vigorous: return "Vigorous";
  }
  return "Sedentary";
}

ActivityLevel activity_from_string(std::string_view text) {
  const std::string t = lower(text);
  if (t == "sedentary") return ActivityLevel::Sedentary;
  if (t == "moderate") return ActivityLevel::Moderate;
  if (t == "vigorous") return ActivityLevel::Vigorous;
  throw ParseError("unknown activity level: '" + std::string(text) + "'");
}

MappingThresholds MappingThresholds::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("threshold config is not valid JSON: ") +
                     e.what());
  }
  MappingThresholds th;
  th.low_temp_c = doc.value("low_temp_c", th.low_temp_c);
  th.low_humidity_pct = doc.value("low_humidity_pct", th.low_humidity_pct);
  if (doc.contains("vigorous_levels")) {
    th.vigorous_levels.clear();
    for (const auto& level : doc.at("vigorous_levels")) {
      th.vigorous_levels.insert(
          activity_from_string(level.get<std::string>()));
    }
  }
  if (th.low_temp_c < -40.0 || th.low_temp_c > 60.0) {
    throw ValidationError("low_temp_c outside the sensor sanity band");
  }
  if (th.low_humidity_pct < 0.0 || th.low_humidity_pct > 100.0) {
    throw ValidationError("low_humidity_pct outside [0,100]");
  }
  return th;
}

MappingThresholds MappingThresholds::load_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open threshold config: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string format_record(const SensorRecord& record) {
  std::string line = std::to_string(record.id);
  line += ',';
  line += record.sound ? *record.sound : "null";
  line += ',';
  line += record.activity ? std::string(to_string(*record.activity)) : "null";
  line += ',';
  line += format_double(record.humidity_pct);
  line += ',';
  line += format_double(record.temperature_c);
  line += ',';
  line += to_string(record.time);
  line += ',';
  line += to_string(record.date);
  return line;
}

SensorRecord parse_record(std::string_view line) {
  const auto fields = split_csv(line);
  if (fields.size() != 7) {
    throw ParseError("expected 7 fields, got " +
                     std::to_string(fields.size()));
  }
  SensorRecord record;
  {
    const std::string_view f = trim(fields[0]);
    const auto [ptr, ec] =
        std::from_chars(f.data(), f.data() + f.size(), record.id);
    if (ec != std::errc{} || ptr != f.data() + f.size()) {
      throw ParseError("invalid record id: '" + std::string(f) + "'");
    }
  }
  const std::string_view sound = trim(fields[1]);
  if (sound != "null" && !sound.empty()) {
    record.sound = std::string(sound);
  }
  const std::string_view activity = trim(fields[2]);
  if (activity != "null" && !activity.empty()) {
    record.activity = activity_from_string(activity);
  }
  record.humidity_pct = parse_double(trim(fields[3]), "relative humidity");
  record.temperature_c = parse_double(trim(fields[4]), "temperature");
  record.time = parse_time(trim(fields[5]));
  record.date = parse_date(trim(fields[6]));
  validate_bands(record);
  return record;
}

EventStore::EventStore(const std::filesystem::path& log_path)
    : log_path_(log_path) {
  if (std::filesystem::exists(log_path)) {
    std::ifstream in(log_path);
    if (!in) {
      throw ParseError("cannot open event log: " + log_path.string());
    }
    const IngestReport report = ingest_stream(in, log_path.string());
    if (!report.issues.empty()) {
      throw ParseError("event log " + log_path.string() + " is damaged: " +
                       report.issues.front());
    }
    log_.open(log_path, std::ios::app);
  } else {
    log_.open(log_path, std::ios::app);
    log_ << kEventFileHeader << '\n';
    log_.flush();
  }
  if (!log_) {
    throw ParseError("cannot open event log for append: " +
                     log_path.string());
  }
}

IngestReport EventStore::ingest_file(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) {
    throw ParseError("cannot open event file: " + source.string());
  }
  return ingest_stream(in, source.string());
}

IngestReport EventStore::ingest_stream(std::istream& in,
                                       std::string_view origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(std::string(origin) + ": missing header line");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (trim(line) != kEventFileHeader) {
    throw ParseError(std::string(origin) + ": header mismatch, expected '" +
                     std::string(kEventFileHeader) + "'");
  }

  IngestReport report;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    try {
      append(parse_record(line));
      ++report.appended;
    } catch (const ParseError& e) {
      report.issues.push_back(std::string(origin) + ":" +
                              std::to_string(line_no) + ": " + e.what());
    }
  }
  return report;
}

void EventStore::append(const SensorRecord& record) {
  validate_bands(record);
  std::unique_lock lock(mutex_);
  records_.push_back(record);
  persist(record);
}

void EventStore::persist(const SensorRecord& record) {
  if (log_.is_open()) {
    log_ << format_record(record) << '\n';
    log_.flush();
  }
}

EventWindow EventStore::query_window(const Date& date,
                                     std::optional<TimeRange> range) const {
  std::vector<SensorRecord> snapshot;
  {
    std::shared_lock lock(mutex_);
    snapshot = records_;
  }

  EventWindow window;
  for (const auto& record : snapshot) {
    if (record.date != date) continue;
    if (range && (record.time < range->from || record.time > range->to)) {
      continue;
    }
    window.records.push_back(record);
  }
  std::sort(window.records.begin(), window.records.end(),
            [](const SensorRecord& a, const SensorRecord& b) {
              return std::tuple(a.date, a.time, a.id) <
                     std::tuple(b.date, b.time, b.id);
            });
  const auto dup = std::unique(window.records.begin(), window.records.end(),
                               [](const SensorRecord& a,
                                  const SensorRecord& b) {
                                 return a.id == b.id;
                               });
  window.records.erase(dup, window.records.end());

  if (!window.records.empty()) {
    window.span = TimeSpan{window.records.front().timestamp(),
                           window.records.back().timestamp()};
  } else if (range) {
    window.span = TimeSpan{DateTime{date, range->from},
                           DateTime{date, range->to}};
  }
  return window;
}

std::size_t EventStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::optional<std::string> sound_atom(std::string_view label) {
  const std::string t = lower(label);
  if (t == "wheeze") return "whz";
  if (t == "cough") return "cgh";
  if (t == "stridor") return "str";
  if (t == "sneeze") return "snz";
  if (t == "snuffle") return "snf";
  return std::nullopt;
}

std::set<std::string> map_record(const SensorRecord& record,
                                 const MappingThresholds& thresholds,
                                 std::string* unknown_sound) {
  if (unknown_sound != nullptr && record.sound &&
      !sound_atom(*record.sound)) {
    *unknown_sound = *record.sound;
  }
  return kernels::mask_to_atoms(
      kernels::record_atom_mask(record, thresholds));
}

ObservationSet build_observation_set(const EventWindow& window,
                                     const MappingThresholds& thresholds,
                                     std::vector<std::string>* warnings) {
  const std::span<const SensorRecord> records(window.records);
  const kernels::ObservationScan scan =
      records.size() >= kernels::kParallelCutoff
          ? kernels::scan_observations_parallel(records, thresholds)
          : kernels::scan_observations_serial(records, thresholds);

  if (warnings != nullptr) {
    for (const auto& [label, count] : scan.unknown_sounds) {
      warnings->push_back("unknown sound label '" + label + "' in " +
                          std::to_string(count) +
                          " record(s); not mapped to evidence");
    }
  }

  ObservationSet q;
  q.atoms = kernels::mask_to_atoms(scan.mask);
  q.window = window.span;
  return q;
}

}  // namespace respmon
