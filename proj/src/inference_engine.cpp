#include "respmon/inference_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "respmon/cf_calculus.hpp"
#include "respmon/errors.hpp"

namespace respmon {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

nlohmann::json parse_json(std::string_view text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + " is not valid JSON: " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(std::string("cannot open ") + what + ": " +
                     path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool is_vigorous_record(const SensorRecord& r) {
  return r.activity == ActivityLevel::Vigorous;
}

bool sound_matches(const SensorRecord& r, const std::string& label) {
  return r.sound && lower(*r.sound) == lower(label);
}

// Window records are sorted, so "first" is positional.
std::optional<std::int64_t> first_epoch_where(
    const EventWindow& window, const auto& pred) {
  for (const auto& record : window.records) {
    if (pred(record)) return epoch_seconds(record.timestamp());
  }
  return std::nullopt;
}

bool rule_fires(const DiscriminationRule& rule, const EventWindow& window) {
  switch (rule.kind) {
    case RuleKind::OnsetDelay: {
      const auto vigorous_start =
          first_epoch_where(window, is_vigorous_record);
      const auto sound_start = first_epoch_where(
          window,
          [&](const SensorRecord& r) { return sound_matches(r, rule.sound); });
      return vigorous_start && sound_start &&
             static_cast<double>(*sound_start - *vigorous_start) >=
                 rule.min_minutes * 60.0;
    }
    case RuleKind::ConcurrentWithVigorous:
      return std::any_of(window.records.begin(), window.records.end(),
                         [&](const SensorRecord& r) {
                           return sound_matches(r, rule.sound) &&
                                  is_vigorous_record(r);
                         });
  }
  return false;
}

void sort_entries(std::vector<SuspicionEntry>& entries) {
  std::sort(entries.begin(), entries.end(),
            [](const SuspicionEntry& a, const SuspicionEntry& b) {
              if (a.adjusted_weight != b.adjusted_weight) {
                return a.adjusted_weight > b.adjusted_weight;
              }
              return a.condition < b.condition;
            });
}

}  // namespace

PatientProfile PatientProfile::parse(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "patient profile");
  PatientProfile profile;
  try {
    profile.identifier = doc.value("identifier", "");
    if (doc.contains("diagnosed_conditions")) {
      for (const auto& id : doc.at("diagnosed_conditions")) {
        profile.diagnosed_conditions.insert(id.get<std::string>());
      }
    }
    if (doc.contains("asthma")) {
      profile.asthma = doc.at("asthma").get<bool>()
                           ? AsthmaStatus::Diagnosed
                           : AsthmaStatus::ExplicitlyNone;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("patient profile schema violation: ") +
                     e.what());
  }
  if (profile.asthma == AsthmaStatus::Unknown &&
      (profile.diagnosed_conditions.contains("asthma") ||
       profile.diagnosed_conditions.contains("EIA"))) {
    profile.asthma = AsthmaStatus::Diagnosed;
  }
  return profile;
}

PatientProfile PatientProfile::load_file(const std::filesystem::path& path) {
  return parse(read_file(path, "patient profile"));
}

void PatientProfile::validate_against(const KnowledgeBase& kb) const {
  for (const auto& id : diagnosed_conditions) {
    if (id != "asthma" && kb.find_condition(id) == nullptr) {
      throw ValidationError("profile diagnosis '" + id +
                            "' names no known condition");
    }
  }
}

std::string_view to_string(RuleKind kind) {
  return kind == RuleKind::OnsetDelay ? "onset_delay"
                                      : "concurrent_with_vigorous";
}

RuleKind rule_kind_from_string(std::string_view text) {
  if (text == "onset_delay") return RuleKind::OnsetDelay;
  if (text == "concurrent_with_vigorous") {
    return RuleKind::ConcurrentWithVigorous;
  }
  throw ParseError("unknown rule kind: '" + std::string(text) + "'");
}

std::vector<DiscriminationRule> parse_rules(std::string_view json_text) {
  const nlohmann::json doc = parse_json(json_text, "rules file");
  std::vector<DiscriminationRule> rules;
  try {
    for (const auto& r : doc.at("rules")) {
      DiscriminationRule rule;
      rule.id = r.at("id").get<std::string>();
      rule.kind = rule_kind_from_string(r.at("kind").get<std::string>());
      rule.sound = r.at("sound").get<std::string>();
      rule.min_minutes = r.value("min_minutes", 0.0);
      rule.target = r.at("target").get<std::string>();
      rule.cf_delta = r.at("cf_delta").get<double>();
      if (rule.cf_delta < -1.0 || rule.cf_delta > 1.0) {
        throw ValidationError("rule '" + rule.id +
                              "' has cf_delta outside [-1,1]");
      }
      rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rules file schema violation: ") + e.what());
  }
  return rules;
}

std::vector<DiscriminationRule> load_rules_file(
    const std::filesystem::path& path) {
  return parse_rules(read_file(path, "rules file"));
}

std::string_view to_string(SuspicionStatus status) {
  switch (status) {
    case SuspicionStatus::Ranked: return "ranked";
    case SuspicionStatus::ExcludedNoSymptom: return "excluded_no_symptom";
    case SuspicionStatus::ExcludedByProfile: return "excluded_by_profile";
  }
  return "ranked";
}

void apply_profile_rule(std::vector<SuspicionEntry>& entries,
                        const PatientProfile& profile) {
  if (profile.asthma == AsthmaStatus::Unknown) return;
  const std::string excluded =
      profile.asthma == AsthmaStatus::Diagnosed ? "EIB" : "EIA";
  for (auto& entry : entries) {
    if (entry.condition == excluded &&
        entry.status == SuspicionStatus::Ranked) {
      entry.status = SuspicionStatus::ExcludedByProfile;
      entry.applied_rules.push_back("profile/asthma-history");
    }
  }
}

void apply_timing_rules(std::vector<SuspicionEntry>& entries,
                        const EventWindow& window,
                        std::span<const DiscriminationRule> rules,
                        std::vector<std::string>* warnings) {
  for (const auto& rule : rules) {
    const auto target = std::find_if(entries.begin(), entries.end(),
                                     [&](const SuspicionEntry& e) {
                                       return e.condition == rule.target;
                                     });
    if (target == entries.end()) {
      if (warnings != nullptr) {
        warnings->push_back("rule '" + rule.id + "' targets '" + rule.target +
                            "' which is not among the suspected conditions; "
                            "skipped");
      }
      continue;
    }
    if (!rule_fires(rule, window)) continue;

    const cf::CertaintyValue combined = cf::combine_incremental(
        cf::CertaintyValue{target->adjusted_weight},
        cf::CertaintyValue{rule.cf_delta});
    // Suspicion indices live on [0,1]; a strong negative delta saturates at
    // "no suspicion" rather than going negative.
    target->adjusted_weight = std::clamp(combined.value, 0.0, 1.0);
    target->applied_rules.push_back(rule.id);
  }
}

std::set<std::string> select_phi(std::span<const SuspicionEntry> entries) {
  double best = -1.0;
  for (const auto& entry : entries) {
    if (entry.status != SuspicionStatus::Ranked) continue;
    best = std::max(best, entry.adjusted_weight);
  }
  std::set<std::string> phi;
  if (best < 0.0) return phi;
  for (const auto& entry : entries) {
    if (entry.status == SuspicionStatus::Ranked &&
        entry.adjusted_weight == best) {
      phi.insert(entry.condition);
    }
  }
  return phi;
}

InferenceReport run_inference(const KnowledgeBase& kb,
                              const EventWindow& window,
                              const MappingThresholds& thresholds,
                              const PatientProfile& profile,
                              std::span<const DiscriminationRule> rules,
                              std::vector<std::string>* warnings) {
  InferenceReport report;
  report.kb_version = kb.version();
  report.generated_at = now_utc_iso();
  report.q = build_observation_set(window, thresholds, warnings);

  const std::set<std::string> beta =
      suspected_conditions(kb, report.q, warnings);
  const ParticipationTable table = participation_ratios(kb, beta, report.q);

  for (const auto& condition : beta) {
    const auto [gamma, theta] = gamma_theta(kb, condition, table, report.q);
    SuspicionEntry entry;
    entry.condition = condition;
    entry.gamma = gamma;
    entry.theta = theta;
    entry.weight = certainty_weight(gamma, theta);
    entry.adjusted_weight = entry.weight;
    entry.status = gamma == 0.0 ? SuspicionStatus::ExcludedNoSymptom
                                : SuspicionStatus::Ranked;
    report.entries.push_back(std::move(entry));
  }

  apply_profile_rule(report.entries, profile);
  apply_timing_rules(report.entries, window, rules, warnings);
  sort_entries(report.entries);
  report.phi = select_phi(report.entries);
  return report;
}

std::optional<AlertPayload> build_alert(const InferenceReport& report,
                                        double threshold) {
  if (report.phi.empty()) return std::nullopt;
  double best = 0.0;
  for (const auto& entry : report.entries) {
    if (entry.status == SuspicionStatus::Ranked) {
      best = std::max(best, entry.adjusted_weight);
    }
  }
  if (best < threshold) return std::nullopt;

  AlertPayload alert;
  alert.threshold = threshold;
  for (const auto& entry : report.entries) {
    if (report.phi.contains(entry.condition)) {
      alert.conditions.emplace_back(entry.condition, entry.adjusted_weight);
    }
  }
  alert.observed = report.q.atoms;
  alert.window = report.q.window;
  return alert;
}

std::string round_2dp(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", std::floor(v * 100.0 + 0.5) / 100.0);
  return buf;
}

std::string truncate_2dp(double v) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", std::floor(v * 100.0) / 100.0);
  return buf;
}

namespace {

nlohmann::json span_to_json(const std::optional<TimeSpan>& span) {
  if (!span) return nullptr;
  return nlohmann::json{{"start", to_string(span->start)},
                        {"end", to_string(span->end)}};
}

}  // namespace

std::string report_to_json(const InferenceReport& report) {
  nlohmann::json doc;
  doc["generated_at"] = report.generated_at;
  doc["kb_version"] = report.kb_version;
  doc["window"] = span_to_json(report.q.window);
  doc["observed"] = report.q.atoms;

  nlohmann::json entries = nlohmann::json::array();
  for (const auto& entry : report.entries) {
    entries.push_back(nlohmann::json{
        {"condition", entry.condition},
        {"gamma", entry.gamma},
        {"theta", entry.theta},
        {"weight", entry.weight},
        {"adjusted_weight", entry.adjusted_weight},
        {"weight_rounded", round_2dp(entry.adjusted_weight)},
        {"weight_truncated", truncate_2dp(entry.adjusted_weight)},
        {"status", std::string(to_string(entry.status))},
        {"applied_rules", entry.applied_rules},
    });
  }
  doc["entries"] = std::move(entries);
  doc["phi"] = report.phi;

  if (report.alert) {
    nlohmann::json conditions = nlohmann::json::array();
    for (const auto& [id, weight] : report.alert->conditions) {
      conditions.push_back(nlohmann::json{{"condition", id},
                                          {"weight", weight},
                                          {"weight_rounded", round_2dp(weight)}});
    }
    doc["alert"] = nlohmann::json{
        {"threshold", report.alert->threshold},
        {"conditions", std::move(conditions)},
        {"observed", report.alert->observed},
        {"window", span_to_json(report.alert->window)},
    };
  } else {
    doc["alert"] = nullptr;
  }
  return doc.dump(2);
}

std::string render_report_text(const InferenceReport& report) {
  std::ostringstream out;
  out << "Observed evidence:";
  if (report.q.atoms.empty()) {
    out << " (none)";
  } else {
    for (const auto& atom : report.q.atoms) out << ' ' << atom;
  }
  out << '\n';
  if (report.q.window) {
    out << "Window: " << to_string(report.q.window->start) << " .. "
        << to_string(report.q.window->end) << '\n';
  }
  out << "Suspected conditions:\n";
  if (report.entries.empty()) {
    out << "  (none)\n";
  }
  for (const auto& entry : report.entries) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "  %-6s gamma=%.4f theta=%.4f weight=%.6f (%s / %s) [%s]",
                  entry.condition.c_str(), entry.gamma, entry.theta,
                  entry.adjusted_weight,
                  round_2dp(entry.adjusted_weight).c_str(),
                  truncate_2dp(entry.adjusted_weight).c_str(),
                  std::string(to_string(entry.status)).c_str());
    out << line;
    if (!entry.applied_rules.empty()) {
      out << " rules:";
      for (const auto& rule : entry.applied_rules) out << ' ' << rule;
    }
    out << '\n';
  }
  out << "Top suspicion:";
  if (report.phi.empty()) {
    out << " (none)";
  } else {
    for (const auto& id : report.phi) out << ' ' << id;
  }
  out << '\n';
  if (report.alert) {
    out << "ALERT (threshold " << round_2dp(report.alert->threshold) << "):";
    for (const auto& [id, weight] : report.alert->conditions) {
      out << ' ' << id << '=' << round_2dp(weight);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace respmon
