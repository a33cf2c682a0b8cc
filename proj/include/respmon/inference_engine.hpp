#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "respmon/event_store.hpp"
#include "respmon/knowledge_base.hpp"

namespace respmon {

enum class AsthmaStatus { Unknown, Diagnosed, ExplicitlyNone };

// Medical history supplied at profile setup. An asthma diagnosis (or an
// explicit statement of none) is what separates the otherwise identical
// EIA/EIB presentations.
struct PatientProfile {
  std::string identifier;
  std::set<std::string> diagnosed_conditions;
  AsthmaStatus asthma = AsthmaStatus::Unknown;

  static PatientProfile parse(std::string_view json_text);
  static PatientProfile load_file(const std::filesystem::path& path);

  // Every diagnosed id must name a KB condition or the reserved token
  // "asthma". Throws ValidationError otherwise.
  void validate_against(const KnowledgeBase& kb) const;
};

enum class RuleKind {
  // Fires when the first matching sound occurs at least `min_minutes`
  // after the first vigorous-activity record.
  OnsetDelay,
  // Fires when some record carries the matching sound during vigorous
  // activity.
  ConcurrentWithVigorous,
};

std::string_view to_string(RuleKind kind);
RuleKind rule_kind_from_string(std::string_view text);

// Declarative timing knowledge: symptom-vs-exercise timing raises or lowers
// a condition's suspicion index by cf_delta.
struct DiscriminationRule {
  std::string id;
  RuleKind kind = RuleKind::OnsetDelay;
  std::string sound;        // label the predicate watches for
  double min_minutes = 0.0; // OnsetDelay only
  std::string target;       // condition id
  double cf_delta = 0.0;    // in [-1, 1]
};

std::vector<DiscriminationRule> parse_rules(std::string_view json_text);
std::vector<DiscriminationRule> load_rules_file(
    const std::filesystem::path& path);

enum class SuspicionStatus { Ranked, ExcludedNoSymptom, ExcludedByProfile };

std::string_view to_string(SuspicionStatus status);

struct SuspicionEntry {
  std::string condition;
  double gamma = 0.0;
  double theta = 0.0;
  double weight = 0.0;           // straight from the certainty-weight formula
  double adjusted_weight = 0.0;  // after discrimination rules
  SuspicionStatus status = SuspicionStatus::Ranked;
  std::vector<std::string> applied_rules;

  bool operator==(const SuspicionEntry&) const = default;
};

struct AlertPayload {
  double threshold = 0.0;
  std::vector<std::pair<std::string, double>> conditions;  // phi with weights
  std::set<std::string> observed;
  std::optional<TimeSpan> window;
};

struct InferenceReport {
  ObservationSet q;
  std::vector<SuspicionEntry> entries;  // weight desc, condition id asc
  std::set<std::string> phi;
  std::string generated_at;
  std::string kb_version;
  std::optional<AlertPayload> alert;
};

// The full reasoning pass: observation set, suspected conditions,
// participation ratios, per-condition scores and weights, zero-symptom
// exclusion, profile and timing discrimination, then the top pick.
// Deterministic up to generated_at.
InferenceReport run_inference(const KnowledgeBase& kb,
                              const EventWindow& window,
                              const MappingThresholds& thresholds,
                              const PatientProfile& profile = {},
                              std::span<const DiscriminationRule> rules = {},
                              std::vector<std::string>* warnings = nullptr);

// Diagnosed asthma excludes EIB; an explicit non-asthmatic profile
// excludes EIA. Unknown history changes nothing. Only ranked entries are
// touched, and exclusion keeps the computed weight in the report.
void apply_profile_rule(std::vector<SuspicionEntry>& entries,
                        const PatientProfile& profile);

// Evaluates each rule's predicate over the raw window and folds cf_delta
// into the target's adjusted weight via incremental combination. Rules
// whose target is not among the entries are skipped with a warning.
void apply_timing_rules(std::vector<SuspicionEntry>& entries,
                        const EventWindow& window,
                        std::span<const DiscriminationRule> rules,
                        std::vector<std::string>* warnings = nullptr);

// Argmax over ranked entries; ties keep every co-leader.
std::set<std::string> select_phi(std::span<const SuspicionEntry> entries);

// An alert fires when the top adjusted weight reaches the threshold.
std::optional<AlertPayload> build_alert(const InferenceReport& report,
                                        double threshold);

// Half-up rounding at two decimals ("0.86" for 0.8571...).
std::string round_2dp(double v);
// Truncation at two decimals ("0.85" for 0.8571...).
std::string truncate_2dp(double v);

std::string report_to_json(const InferenceReport& report);

// Console rendering: observed evidence, ranked table, top pick, alert.
std::string render_report_text(const InferenceReport& report);

}  // namespace respmon
