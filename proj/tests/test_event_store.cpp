#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <filesystem>
#include <random>
#include <sstream>
#include <thread>

#include "respmon/errors.hpp"
#include "respmon/event_store.hpp"
#include "respmon/window_kernels.hpp"
#include "testutil.hpp"

using namespace respmon;
namespace tu = respmon::testutil;

namespace {

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("record line round-trip") {
  for (const auto& record : tu::capture_rows()) {
    CHECK(parse_record(format_record(record)) == record);
  }
}

TEST_CASE("legacy date form normalizes") {
  const SensorRecord r =
      parse_record("31,null,null,80.33,28.44,04:49:48,Apr 08 2017");
  CHECK(r.date == Date{2017, 4, 8});
  CHECK(r.sound == std::nullopt);
  CHECK(r.activity == std::nullopt);
  // Re-serialized form uses the ISO date.
  CHECK(format_record(r).find("2017-04-08") != std::string::npos);
}

TEST_CASE("malformed rows are rejected with a reason") {
  CHECK_THROWS_AS(parse_record("not,enough,fields"), ParseError);
  CHECK_THROWS_AS(parse_record("1,null,null,120,25,04:00:00,2017-04-08"),
                  ParseError);  // humidity above 100
  CHECK_THROWS_AS(parse_record("1,null,null,50,99,04:00:00,2017-04-08"),
                  ParseError);  // temperature outside the sanity band
  CHECK_THROWS_AS(parse_record("1,null,Flying,50,25,04:00:00,2017-04-08"),
                  ParseError);  // unknown activity level
  CHECK_THROWS_AS(parse_record("x,null,null,50,25,04:00:00,2017-04-08"),
                  ParseError);  // non-numeric id
  CHECK_THROWS_AS(parse_record("1,null,null,50,25,25:00:00,2017-04-08"),
                  ParseError);  // impossible hour
  CHECK_THROWS_AS(parse_record("1,null,null,50,25,04:00:00,2017-02-30"),
                  ParseError);  // impossible date
}

TEST_CASE("ingesting the capture fixture") {
  EventStore store;
  const IngestReport report = store.ingest_file(tu::fixture("fig3c.csv"));
  CHECK(report.appended == 10);
  CHECK(report.issues.empty());
  CHECK(store.size() == 10);

  const EventWindow window = store.query_window(Date{2017, 4, 8});
  REQUIRE(window.records.size() == 10);
  const auto null_sounds =
      std::count_if(window.records.begin(), window.records.end(),
                    [](const SensorRecord& r) { return !r.sound; });
  CHECK(null_sounds == 2);
  CHECK(window.records == tu::capture_rows());

  CHECK(store.query_window(Date{2017, 4, 9}).records.empty());

  // Inclusive time slice picks out the first six rows.
  const EventWindow slice = store.query_window(
      Date{2017, 4, 8},
      TimeRange{parse_time("04:49:00"), parse_time("04:50:30")});
  REQUIRE(slice.records.size() == 6);
  CHECK(slice.records.front().id == 31);
  CHECK(slice.records.back().id == 36);
}

TEST_CASE("ingest skips bad rows and reports line numbers") {
  std::istringstream in(std::string(kEventFileHeader) + "\n" +
                        "1,null,null,50,25,04:00:00,2017-04-08\n" +
                        "2,null,null,120,25,04:00:01,2017-04-08\n" +
                        "3,null,null,55,26,04:00:02,2017-04-08\n");
  EventStore store;
  const IngestReport report = store.ingest_stream(in, "test");
  CHECK(report.appended == 2);
  REQUIRE(report.issues.size() == 1);
  CHECK(report.issues[0].find("test:3") != std::string::npos);
}

TEST_CASE("ingest edge cases") {
  {
    std::istringstream in(std::string(kEventFileHeader) + "\n");
    EventStore store;
    CHECK(store.ingest_stream(in, "empty").appended == 0);
  }
  {
    std::istringstream in("ID,Wrong,Header\n");
    EventStore store;
    CHECK_THROWS_AS(store.ingest_stream(in, "bad"), ParseError);
  }
  {
    std::istringstream in("");
    EventStore store;
    CHECK_THROWS_AS(store.ingest_stream(in, "headerless"), ParseError);
  }
  {
    std::istringstream in(std::string(kEventFileHeader) + "\n" +
                          "garbage\nmore garbage\n");
    EventStore store;
    const IngestReport report = store.ingest_stream(in, "junk");
    CHECK(report.appended == 0);
    CHECK(report.issues.size() == 2);
  }
  CHECK_THROWS_AS(EventStore{}.ingest_file("/no/such/file.csv"), ParseError);
}

TEST_CASE("file-bound store persists appends") {
  const auto path = temp_path("respmon_store_test.csv");
  std::filesystem::remove(path);
  {
    EventStore store(path);
    store.ingest_file(tu::fixture("fig3c.csv"));
    store.append(tu::make_record(41, "Cough", "Vigorous", 70.0, 20.0,
                                 "05:00:00"));
  }
  EventStore reopened(path);
  CHECK(reopened.size() == 11);
  const EventWindow window = reopened.query_window(Date{2017, 4, 8});
  CHECK(window.records.back().id == 41);
  std::filesystem::remove(path);
}

TEST_CASE("direct appends respect the sanity bands") {
  EventStore store;
  const SensorRecord bad = tu::make_record(1, nullptr, nullptr, 120.0, 25.0,
                                           "04:00:00");
  CHECK_THROWS_AS(store.append(bad), ParseError);
  CHECK(store.size() == 0);
}

TEST_CASE("query results are sorted and unique by id") {
  EventStore store;
  store.append(tu::make_record(3, nullptr, nullptr, 50, 25, "10:00:00"));
  store.append(tu::make_record(1, nullptr, nullptr, 50, 25, "08:00:00"));
  store.append(tu::make_record(2, nullptr, nullptr, 50, 25, "09:00:00"));
  store.append(tu::make_record(2, nullptr, nullptr, 50, 25, "09:00:00"));
  const EventWindow window = store.query_window(Date{2017, 4, 8});
  REQUIRE(window.records.size() == 3);
  CHECK(window.records[0].id == 1);
  CHECK(window.records[1].id == 2);
  CHECK(window.records[2].id == 3);
  REQUIRE(window.span.has_value());
  CHECK(window.span->start.time == parse_time("08:00:00"));
  CHECK(window.span->end.time == parse_time("10:00:00"));
}

TEST_CASE("mapping a record to evidence atoms") {
  const MappingThresholds th;

  // Warm, humid row with wheeze during vigorous exercise.
  const auto row38 =
      tu::make_record(38, "Wheeze", "Vigorous", 84.58, 27.0, "04:51:42");
  CHECK(map_record(row38, th) == std::set<std::string>{"whz", "vgr"});

  // Ambient-only row in comfortable conditions maps to nothing.
  const auto row31 = tu::make_record(31, nullptr, nullptr, 80.33, 28.44,
                                     "04:49:48");
  CHECK(map_record(row31, th).empty());

  // Every cutoff crossed at once.
  const auto cold = tu::make_record(1, "Wheeze", "Vigorous", 30.0, 10.0,
                                    "06:00:00");
  CHECK(map_record(cold, th) ==
        std::set<std::string>{"whz", "vgr", "lt", "lh"});

  // Moderate activity is not a vigorous-exercise trigger by default.
  const auto moderate = tu::make_record(2, nullptr, "Moderate", 80.0, 25.0,
                                        "06:00:00");
  CHECK(map_record(moderate, th).empty());

  // Unknown classifier labels are reported, not mapped.
  const auto odd = tu::make_record(3, "Grunt", nullptr, 80.0, 25.0,
                                   "06:00:00");
  std::string unknown;
  CHECK(map_record(odd, th, &unknown).empty());
  CHECK(unknown == "Grunt");

  // Sound lookup is case-insensitive.
  CHECK(sound_atom("WHEEZE") == "whz");
  CHECK(sound_atom("stridor") == "str");
  CHECK(!sound_atom("Grunt"));
}

TEST_CASE("threshold configuration") {
  const MappingThresholds th = MappingThresholds::parse(
      R"({"low_temp_c": 10, "low_humidity_pct": 30,
          "vigorous_levels": ["Vigorous", "Moderate"]})");
  CHECK(th.low_temp_c == 10.0);
  CHECK(th.vigorous_levels.contains(ActivityLevel::Moderate));

  const auto moderate = tu::make_record(2, nullptr, "Moderate", 80.0, 25.0,
                                        "06:00:00");
  CHECK(map_record(moderate, th) == std::set<std::string>{"vgr"});

  CHECK_THROWS_AS(MappingThresholds::parse(R"({"low_temp_c": 99})"),
                  ValidationError);
  CHECK_THROWS_AS(MappingThresholds::parse("nonsense"), ParseError);
}

TEST_CASE("raising the temperature cutoff never removes the cold trigger") {
  std::mt19937_64 rng(505);
  const auto records = tu::random_records(rng, 200);
  MappingThresholds low, high;
  low.low_temp_c = 5.0;
  high.low_temp_c = 25.0;
  for (const auto& r : records) {
    const auto atoms_low = map_record(r, low);
    const auto atoms_high = map_record(r, high);
    if (atoms_low.contains("lt")) CHECK(atoms_high.contains("lt"));
  }
}

TEST_CASE("observation set over the capture fixture") {
  EventStore store;
  store.ingest_file(tu::fixture("fig3c.csv"));
  const EventWindow window = store.query_window(Date{2017, 4, 8});
  const ObservationSet q = build_observation_set(window, MappingThresholds{});
  CHECK(q.atoms == std::set<std::string>{"whz", "cgh", "vgr"});
  REQUIRE(q.window.has_value());
  CHECK(q.window->start.time == parse_time("04:49:48"));
  CHECK(q.window->end.time == parse_time("04:51:52"));

  CHECK(build_observation_set(EventWindow{}, MappingThresholds{})
            .atoms.empty());
}

TEST_CASE("observation set equals the union of per-row mappings") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const auto records = tu::random_records(
        rng, std::uniform_int_distribution<std::size_t>(0, 5000)(rng));
    const EventWindow window = tu::window_of(records);
    const MappingThresholds th;

    std::set<std::string> expected;
    for (const auto& r : records) {
      const auto atoms = map_record(r, th);
      expected.insert(atoms.begin(), atoms.end());
    }
    CHECK(build_observation_set(window, th).atoms == expected);
  }
}

TEST_CASE("parallel kernels match the serial reference") {
  std::mt19937_64 rng(707);
  const MappingThresholds th;
  for (const std::size_t n : {std::size_t{0}, std::size_t{1},
                              std::size_t{100}, std::size_t{5000},
                              std::size_t{50000}}) {
    const auto records = tu::random_records(rng, n);
    const std::span<const SensorRecord> view(records);

    const auto serial = kernels::scan_observations_serial(view, th);
    const auto parallel = kernels::scan_observations_parallel(view, th);
    CHECK(serial.mask == parallel.mask);
    CHECK(serial.unknown_sounds == parallel.unknown_sounds);

    CHECK(kernels::count_symptoms_serial(view, kernels::Bucketing::Hourly) ==
          kernels::count_symptoms_parallel(view, kernels::Bucketing::Hourly));
    CHECK(kernels::count_symptoms_serial(view, kernels::Bucketing::Quarters) ==
          kernels::count_symptoms_parallel(view,
                                           kernels::Bucketing::Quarters));
    CHECK(kernels::count_activity_serial(view) ==
          kernels::count_activity_parallel(view));
  }
}

TEST_CASE("concurrent readers see whole rows only") {
  EventStore store;
  std::atomic<bool> done{false};

  std::thread writer([&] {
    for (int i = 1; i <= 2000; ++i) {
      // Humidity and temperature are tied to the id so a torn row would
      // break the relation.
      SensorRecord r;
      r.id = i;
      r.humidity_pct = (i % 50) + 10.0;
      r.temperature_c = ((i % 50) + 10.0) / 2.0;
      r.time = TimeOfDay{i % 86400};
      r.date = Date{2017, 4, 8};
      store.append(r);
    }
    done = true;
  });

  std::size_t snapshots = 0;
  while (!done) {
    const EventWindow window = store.query_window(Date{2017, 4, 8});
    for (const auto& r : window.records) {
      REQUIRE(r.humidity_pct == (r.id % 50) + 10.0);
      REQUIRE(r.temperature_c == ((r.id % 50) + 10.0) / 2.0);
    }
    ++snapshots;
  }
  writer.join();
  CHECK(store.size() == 2000);
  CHECK(snapshots > 0);
}
