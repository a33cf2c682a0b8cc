// Command-line surface for the monitoring pipeline: KB validation, event
// ingestion, scenario simulation, inference runs, and daily chart-data
// summaries.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "respmon/errors.hpp"
#include "respmon/event_store.hpp"
#include "respmon/inference_engine.hpp"
#include "respmon/knowledge_base.hpp"
#include "respmon/simulate.hpp"
#include "respmon/summaries.hpp"

namespace {

using namespace respmon;

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot write " + path.string());
  }
  out << body;
}

int cmd_kb_validate(const std::string& path) {
  const KnowledgeBase kb = KnowledgeBase::load_file(path);
  std::cout << path << ": OK (" << kb.conditions().size() << " conditions, "
            << kb.atoms().size() << " atoms, version " << kb.version()
            << ")\n";
  return 0;
}

int cmd_ingest(const std::string& store_path, const std::string& input) {
  EventStore store {std::filesystem::path(store_path)};
  const IngestReport report = store.ingest_file(input);
  for (const auto& issue : report.issues) {
    std::cerr << "skipped: " << issue << '\n';
  }
  std::cout << "appended " << report.appended << " record(s) to "
            << store_path << '\n';
  if (report.appended == 0 && !report.issues.empty()) {
    std::cerr << "error: no valid rows in " << input << '\n';
  }
  return 0;
}

int cmd_simulate(const std::string& config_path,
                 const std::optional<std::string>& out_path,
                 const std::optional<std::uint64_t>& seed_override) {
  ScenarioConfig config = ScenarioConfig::load_file(config_path);
  if (seed_override) config.seed = *seed_override;
  if (out_path) {
    std::ofstream out(*out_path);
    if (!out) throw Error("cannot write " + *out_path);
    simulate(config, out);
    std::cout << "wrote " << *out_path << '\n';
  } else {
    simulate(config, std::cout);
  }
  return 0;
}

struct InferOptions {
  std::string kb_path;
  std::string events_path;
  std::string date;
  std::optional<std::string> from;
  std::optional<std::string> to;
  std::optional<std::string> thresholds_path;
  std::optional<std::string> profile_path;
  std::optional<std::string> rules_path;
  double alert_threshold = 0.6;
  std::optional<std::string> out_path;
  bool watch = false;
  int watch_interval_ms = 500;
  int watch_max_runs = 0;  // 0 = until interrupted
};

int run_infer_once(const InferOptions& opt) {
  const KnowledgeBase kb = KnowledgeBase::load_file(opt.kb_path);
  const MappingThresholds thresholds =
      opt.thresholds_path ? MappingThresholds::load_file(*opt.thresholds_path)
                          : MappingThresholds{};
  PatientProfile profile;
  if (opt.profile_path) {
    profile = PatientProfile::load_file(*opt.profile_path);
    profile.validate_against(kb);
  }
  std::vector<DiscriminationRule> rules;
  if (opt.rules_path) rules = load_rules_file(*opt.rules_path);

  EventStore store;
  const IngestReport ingest = store.ingest_file(opt.events_path);
  for (const auto& issue : ingest.issues) {
    std::cerr << "skipped: " << issue << '\n';
  }

  std::optional<TimeRange> range;
  if (opt.from || opt.to) {
    range = TimeRange{opt.from ? parse_time(*opt.from) : TimeOfDay{0},
                      opt.to ? parse_time(*opt.to) : TimeOfDay{86399}};
  }
  const EventWindow window = store.query_window(parse_date(opt.date), range);

  std::vector<std::string> warnings;
  InferenceReport report =
      run_inference(kb, window, thresholds, profile, rules, &warnings);
  report.alert = build_alert(report, opt.alert_threshold);
  print_warnings(warnings);

  std::cout << render_report_text(report);
  if (opt.out_path) {
    write_text_file(*opt.out_path, report_to_json(report) + "\n");
    std::cout << "report written to " << *opt.out_path << '\n';
  }
  return 0;
}

int cmd_infer(const InferOptions& opt) {
  if (!opt.watch) return run_infer_once(opt);

  std::uintmax_t last_size = 0;
  int runs = 0;
  while (true) {
    std::uintmax_t size = 0;
    if (std::filesystem::exists(opt.events_path)) {
      size = std::filesystem::file_size(opt.events_path);
    }
    if (runs == 0 || size > last_size) {
      last_size = size;
      run_infer_once(opt);
      ++runs;
      if (opt.watch_max_runs > 0 && runs >= opt.watch_max_runs) break;
    }
    std::this_thread::sleep_for(
        std::chrono::milliseconds(opt.watch_interval_ms));
  }
  return 0;
}

struct SummarizeOptions {
  std::string events_path;
  std::string date;
  std::string out_dir;
  std::string buckets = "hourly";
};

int cmd_summarize(const SummarizeOptions& opt) {
  EventStore store;
  const IngestReport ingest = store.ingest_file(opt.events_path);
  for (const auto& issue : ingest.issues) {
    std::cerr << "skipped: " << issue << '\n';
  }
  const Date date = parse_date(opt.date);
  const EventWindow window = store.query_window(date);

  kernels::Bucketing bucketing;
  if (opt.buckets == "hourly") {
    bucketing = kernels::Bucketing::Hourly;
  } else if (opt.buckets == "quarters") {
    bucketing = kernels::Bucketing::Quarters;
  } else {
    throw Error("unknown bucket scheme '" + opt.buckets +
                "' (expected hourly or quarters)");
  }

  const DailySummary summary = summarize_day(window, bucketing);
  const std::filesystem::path dir(opt.out_dir);
  std::filesystem::create_directories(dir);
  const std::string tag = to_string(date);

  const auto symptoms = dir / ("symptoms_" + tag + ".csv");
  const auto ambient = dir / ("ambient_" + tag + ".csv");
  const auto activity = dir / ("activity_" + tag + ".csv");
  write_text_file(symptoms, symptoms_csv(summary.symptom_counts));
  write_text_file(ambient, ambient_csv(summary.ambient_series));
  write_text_file(activity, activity_csv(summary.activity_intensity));
  std::cout << "wrote " << symptoms.string() << '\n'
            << "wrote " << ambient.string() << '\n'
            << "wrote " << activity.string() << '\n';
  return 0;
}

int cmd_report(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open report: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  // Render straight from the document so any conforming report file works.
  const auto doc = nlohmann::json::parse(buf.str());
  std::cout << "Report generated at " << doc.value("generated_at", "?")
            << " (KB version " << doc.value("kb_version", "?") << ")\n";
  std::cout << "Observed evidence:";
  for (const auto& atom : doc.value("observed", nlohmann::json::array())) {
    std::cout << ' ' << atom.get<std::string>();
  }
  std::cout << "\nSuspected conditions:\n";
  for (const auto& entry : doc.value("entries", nlohmann::json::array())) {
    std::cout << "  " << entry.at("condition").get<std::string>()
              << "  weight=" << entry.at("weight_rounded").get<std::string>()
              << " (truncated "
              << entry.at("weight_truncated").get<std::string>() << ") ["
              << entry.at("status").get<std::string>() << "]\n";
  }
  std::cout << "Top suspicion:";
  for (const auto& id : doc.value("phi", nlohmann::json::array())) {
    std::cout << ' ' << id.get<std::string>();
  }
  std::cout << '\n';
  if (doc.contains("alert") && !doc.at("alert").is_null()) {
    std::cout << "ALERT active\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exercise-induced respiratory condition monitor"};
  app.require_subcommand(1);

  // kb validate
  auto* kb_cmd = app.add_subcommand("kb", "Knowledge-base utilities");
  kb_cmd->require_subcommand(1);
  auto* kb_validate =
      kb_cmd->add_subcommand("validate", "Validate a KB document");
  std::string kb_path;
  kb_validate->add_option("path", kb_path, "KB document (JSON)")->required();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Append an event file to a store");
  std::string store_path, ingest_input;
  ingest->add_option("--store", store_path, "Event store file")->required();
  ingest->add_option("input", ingest_input, "Event file to append")
      ->required();

  // simulate
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Generate a synthetic event stream");
  std::string scenario_path;
  std::optional<std::string> simulate_out;
  std::optional<std::uint64_t> seed_override;
  simulate_cmd->add_option("--config", scenario_path, "Scenario config (JSON)")
      ->required();
  simulate_cmd->add_option("--out", simulate_out, "Output event file");
  simulate_cmd->add_option("--seed", seed_override, "Override the config seed");

  // infer
  auto* infer = app.add_subcommand("infer", "Run inference over a date window");
  InferOptions infer_opt;
  infer->add_option("--kb", infer_opt.kb_path, "KB document")->required();
  infer->add_option("--events", infer_opt.events_path, "Event file")
      ->required();
  infer->add_option("--date", infer_opt.date, "Date (YYYY-MM-DD)")->required();
  infer->add_option("--from", infer_opt.from, "Window start (HH:MM:SS)");
  infer->add_option("--to", infer_opt.to, "Window end (HH:MM:SS)");
  infer->add_option("--thresholds", infer_opt.thresholds_path,
                    "Mapping thresholds config");
  infer->add_option("--profile", infer_opt.profile_path, "Patient profile");
  infer->add_option("--rules", infer_opt.rules_path, "Discrimination rules");
  infer->add_option("--alert-threshold", infer_opt.alert_threshold,
                    "Alert when the top weight reaches this value");
  infer->add_option("--out", infer_opt.out_path, "Write the report (JSON)");
  infer->add_flag("--watch", infer_opt.watch,
                  "Re-run whenever the event file grows");
  infer->add_option("--watch-interval-ms", infer_opt.watch_interval_ms,
                    "Polling interval in watch mode");
  infer->add_option("--watch-max-runs", infer_opt.watch_max_runs,
                    "Stop watch mode after this many runs (0 = no limit)");

  // summarize
  auto* summarize =
      app.add_subcommand("summarize", "Emit daily chart-data summaries");
  SummarizeOptions sum_opt;
  summarize->add_option("--events", sum_opt.events_path, "Event file")
      ->required();
  summarize->add_option("--date", sum_opt.date, "Date (YYYY-MM-DD)")
      ->required();
  summarize->add_option("--out", sum_opt.out_dir, "Output directory")
      ->required();
  summarize->add_option("--buckets", sum_opt.buckets,
                        "Symptom bucket scheme: hourly or quarters");

  // report
  auto* report = app.add_subcommand("report", "Render a report file");
  std::string report_path;
  report->add_option("path", report_path, "Report JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (kb_validate->parsed()) return cmd_kb_validate(kb_path);
    if (ingest->parsed()) return cmd_ingest(store_path, ingest_input);
    if (simulate_cmd->parsed()) {
      return cmd_simulate(scenario_path, simulate_out, seed_override);
    }
    if (infer->parsed()) return cmd_infer(infer_opt);
    if (summarize->parsed()) return cmd_summarize(sum_opt);
    if (report->parsed()) return cmd_report(report_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
