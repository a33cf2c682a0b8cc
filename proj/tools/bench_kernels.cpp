// Times the serial reference kernels against their OpenMP forms over a
// synthetic event stream and prints one row per kernel.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "respmon/event_store.hpp"
#include "respmon/window_kernels.hpp"

namespace {

using namespace respmon;

std::vector<SensorRecord> synthetic_stream(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> temp(5.0, 35.0);
  std::uniform_real_distribution<double> humidity(20.0, 95.0);
  std::uniform_int_distribution<int> sound_pick(0, 9);
  std::uniform_int_distribution<int> activity_pick(0, 4);

  static const char* kSounds[] = {"Cough", "Wheeze", "Stridor",
                                  "Sneeze", "Snuffle"};
  static const ActivityLevel kLevels[] = {
      ActivityLevel::Sedentary, ActivityLevel::Moderate,
      ActivityLevel::Vigorous};

  std::vector<SensorRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SensorRecord r;
    r.id = static_cast<std::int64_t>(i) + 1;
    const int s = sound_pick(rng);
    if (s < 5) r.sound = kSounds[s];
    const int a = activity_pick(rng);
    if (a < 3) r.activity = kLevels[a];
    r.temperature_c = temp(rng);
    r.humidity_pct = humidity(rng);
    r.time = TimeOfDay{static_cast<int>(i % 86400)};
    r.date = Date{2017, 4, 8};
    records.push_back(std::move(r));
  }
  return records;
}

template <typename Fn>
double time_ms(int repeat, Fn&& fn) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    best = std::min(
        best,
        std::chrono::duration<double, std::milli>(stop - start).count());
  }
  return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-22s %10.3f ms %10.3f ms   x%.2f\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Window-kernel benchmark: serial reference vs OpenMP"};
  std::size_t records = 2'000'000;
  int repeat = 5;
  std::uint64_t seed = 42;
  app.add_option("--records", records, "Synthetic stream length");
  app.add_option("--repeat", repeat, "Timed repetitions (best-of)");
  app.add_option("--seed", seed, "Stream generator seed");
  CLI11_PARSE(app, argc, argv);

  const std::vector<SensorRecord> stream = synthetic_stream(records, seed);
  const std::span<const SensorRecord> view(stream);
  const MappingThresholds thresholds;

  std::printf("records: %zu, repeat: %d (best-of)\n", records, repeat);
  std::printf("%-22s %13s %13s %8s\n", "kernel", "serial", "openmp",
              "speedup");

  // Results feed a volatile sink so the loops cannot be dropped.
  volatile std::size_t sink = 0;

  {
    kernels::ObservationScan out;
    const double s = time_ms(repeat, [&] {
      out = kernels::scan_observations_serial(view, thresholds);
      sink = sink + out.mask;
    });
    const double p = time_ms(repeat, [&] {
      out = kernels::scan_observations_parallel(view, thresholds);
      sink = sink + out.mask;
    });
    row("scan_observations", s, p);
  }
  {
    kernels::SymptomCounts out;
    const double s = time_ms(repeat, [&] {
      out = kernels::count_symptoms_serial(view, kernels::Bucketing::Hourly);
      sink = sink + out.size();
    });
    const double p = time_ms(repeat, [&] {
      out = kernels::count_symptoms_parallel(view, kernels::Bucketing::Hourly);
      sink = sink + out.size();
    });
    row("count_symptoms", s, p);
  }
  {
    kernels::ActivityCounts out;
    const double s = time_ms(repeat, [&] {
      out = kernels::count_activity_serial(view);
      sink = sink + out.size();
    });
    const double p = time_ms(repeat, [&] {
      out = kernels::count_activity_parallel(view);
      sink = sink + out.size();
    });
    row("count_activity", s, p);
  }
  return 0;
}
