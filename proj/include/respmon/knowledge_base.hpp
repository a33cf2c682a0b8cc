#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "respmon/timeutil.hpp"

namespace respmon {

enum class AtomKind { Symptom, Trigger };

std::string_view to_string(AtomKind kind);
AtomKind atom_kind_from_string(std::string_view text);

// One observable evidence: either a manifestation (wheeze, cough, ...) or a
// provoking context (vigorous exercise, low temperature, ...). The kind is
// fixed per atom; an atom is never both.
struct EvidenceAtom {
  std::string id;  // short lowercase token, e.g. "whz"
  AtomKind kind = AtomKind::Symptom;
  std::string display_name;
  // Atoms beyond the core scenario rows, shipped so that conditions whose
  // sounds go unobserved still rank with a zero symptom score.
  bool extended = false;
};

struct ConditionProfile {
  std::string id;    // e.g. "EIB"
  std::string name;  // full name
  std::set<std::string> symptoms;
  std::set<std::string> triggers;

  bool mentions(const std::string& atom_id) const {
    return symptoms.contains(atom_id) || triggers.contains(atom_id);
  }
};

// Immutable after load; all accessors are read-only and safe to share
// across threads.
class KnowledgeBase {
 public:
  // Parses and validates a KB document (JSON text). Rejects duplicate ids,
  // references to undefined atoms, kind mismatches, and conditions with no
  // evidence at all.
  static KnowledgeBase parse(std::string_view json_text);
  static KnowledgeBase load_file(const std::filesystem::path& path);

  const std::string& version() const { return version_; }
  const std::vector<EvidenceAtom>& atoms() const { return atoms_; }
  const std::vector<ConditionProfile>& conditions() const {
    return conditions_;
  }

  const EvidenceAtom* find_atom(const std::string& id) const;
  const ConditionProfile* find_condition(const std::string& id) const;

  // Union of every condition's symptom and trigger sets. Derived, not stored.
  std::set<std::string> universe() const;

 private:
  std::string version_;
  std::vector<EvidenceAtom> atoms_;
  std::vector<ConditionProfile> conditions_;
  std::map<std::string, std::size_t> atom_index_;
  std::map<std::string, std::size_t> condition_index_;
};

// The evidence atoms observed over a window of sensor records.
struct ObservationSet {
  std::set<std::string> atoms;
  std::optional<TimeSpan> window;

  bool operator==(const ObservationSet&) const = default;
};

// Observed atom id -> 1 / (number of suspected conditions naming it).
using ParticipationTable = std::map<std::string, double>;

// Conditions with at least one of their atoms observed. Observed atoms
// outside the KB universe are dropped; each drop is reported through
// `warnings` when given.
std::set<std::string> suspected_conditions(
    const KnowledgeBase& kb, const ObservationSet& q,
    std::vector<std::string>* warnings = nullptr);

// Ratio of each observed in-universe atom across the suspected set. An atom
// shared by fewer conditions discriminates better and scores higher.
ParticipationTable participation_ratios(const KnowledgeBase& kb,
                                        const std::set<std::string>& beta,
                                        const ObservationSet& q);

// Per-condition maxima of participation ratios over observed symptoms and
// observed triggers respectively. Zero when nothing of that kind was seen.
std::pair<double, double> gamma_theta(const KnowledgeBase& kb,
                                      const std::string& condition,
                                      const ParticipationTable& table,
                                      const ObservationSet& q);

// Normalized suspicion index:
//   W = (gamma + theta) / max(gamma + theta, 1 - gamma * theta)
// Stays in [0, 1]; hits 1 exactly when gamma + theta >= 1 - gamma * theta;
// zero only when both scores are zero.
double certainty_weight(double gamma, double theta);

}  // namespace respmon
