#include "respmon/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "respmon/errors.hpp"

namespace respmon {

std::string_view to_string(AtomKind kind) {
  return kind == AtomKind::Symptom ? "symptom" : "trigger";
}

AtomKind atom_kind_from_string(std::string_view text) {
  if (text == "symptom") return AtomKind::Symptom;
  if (text == "trigger") return AtomKind::Trigger;
  throw ParseError("unknown atom kind: '" + std::string(text) + "'");
}

KnowledgeBase KnowledgeBase::parse(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("KB document is not valid JSON: ") +
                     e.what());
  }

  KnowledgeBase kb;
  try {
    kb.version_ = doc.at("version").get<std::string>();
    for (const auto& a : doc.at("atoms")) {
      EvidenceAtom atom;
      atom.id = a.at("id").get<std::string>();
      atom.kind = atom_kind_from_string(a.at("kind").get<std::string>());
      atom.display_name = a.at("display_name").get<std::string>();
      atom.extended = a.value("extended", false);
      if (kb.atom_index_.contains(atom.id)) {
        throw ValidationError("duplicate atom id: '" + atom.id + "'");
      }
      kb.atom_index_[atom.id] = kb.atoms_.size();
      kb.atoms_.push_back(std::move(atom));
    }
    for (const auto& c : doc.at("conditions")) {
      ConditionProfile cond;
      cond.id = c.at("id").get<std::string>();
      cond.name = c.at("name").get<std::string>();
      for (const auto& s : c.at("symptoms")) {
        cond.symptoms.insert(s.get<std::string>());
      }
      for (const auto& t : c.at("triggers")) {
        cond.triggers.insert(t.get<std::string>());
      }
      if (kb.condition_index_.contains(cond.id)) {
        throw ValidationError("duplicate condition id: '" + cond.id + "'");
      }
      kb.condition_index_[cond.id] = kb.conditions_.size();
      kb.conditions_.push_back(std::move(cond));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("KB document schema violation: ") + e.what());
  }

  for (const auto& cond : kb.conditions_) {
    if (cond.symptoms.empty() && cond.triggers.empty()) {
      throw ValidationError("condition '" + cond.id + "' lists no evidence");
    }
    for (const auto& id : cond.symptoms) {
      const EvidenceAtom* atom = kb.find_atom(id);
      if (atom == nullptr) {
        throw ValidationError("condition '" + cond.id +
                              "' references undefined atom '" + id + "'");
      }
      if (atom->kind != AtomKind::Symptom) {
        throw ValidationError("condition '" + cond.id + "' lists trigger '" +
                              id + "' as a symptom");
      }
      if (cond.triggers.contains(id)) {
        throw ValidationError("condition '" + cond.id + "' lists '" + id +
                              "' as both symptom and trigger");
      }
    }
    for (const auto& id : cond.triggers) {
      const EvidenceAtom* atom = kb.find_atom(id);
      if (atom == nullptr) {
        throw ValidationError("condition '" + cond.id +
                              "' references undefined atom '" + id + "'");
      }
      if (atom->kind != AtomKind::Trigger) {
        throw ValidationError("condition '" + cond.id + "' lists symptom '" +
                              id + "' as a trigger");
      }
    }
  }
  return kb;
}

KnowledgeBase KnowledgeBase::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open KB file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const EvidenceAtom* KnowledgeBase::find_atom(const std::string& id) const {
  const auto it = atom_index_.find(id);
  return it == atom_index_.end() ? nullptr : &atoms_[it->second];
}

const ConditionProfile* KnowledgeBase::find_condition(
    const std::string& id) const {
  const auto it = condition_index_.find(id);
  return it == condition_index_.end() ? nullptr : &conditions_[it->second];
}

std::set<std::string> KnowledgeBase::universe() const {
  std::set<std::string> all;
  for (const auto& cond : conditions_) {
    all.insert(cond.symptoms.begin(), cond.symptoms.end());
    all.insert(cond.triggers.begin(), cond.triggers.end());
  }
  return all;
}

std::set<std::string> suspected_conditions(const KnowledgeBase& kb,
                                           const ObservationSet& q,
                                           std::vector<std::string>* warnings) {
  const std::set<std::string> universe = kb.universe();
  std::set<std::string> observed;
  for (const auto& atom : q.atoms) {
    if (universe.contains(atom)) {
      observed.insert(atom);
    } else if (warnings != nullptr) {
      warnings->push_back("observed atom '" + atom +
                          "' is outside the knowledge base universe; dropped");
    }
  }

  std::set<std::string> beta;
  for (const auto& cond : kb.conditions()) {
    const bool hit = std::any_of(observed.begin(), observed.end(),
                                 [&](const std::string& atom) {
                                   return cond.mentions(atom);
                                 });
    if (hit) beta.insert(cond.id);
  }
  return beta;
}

ParticipationTable participation_ratios(const KnowledgeBase& kb,
                                        const std::set<std::string>& beta,
                                        const ObservationSet& q) {
  const std::set<std::string> universe = kb.universe();
  ParticipationTable table;
  for (const auto& atom : q.atoms) {
    if (!universe.contains(atom)) continue;
    std::size_t sharers = 0;
    for (const auto& id : beta) {
      const ConditionProfile* cond = kb.find_condition(id);
      if (cond != nullptr && cond->mentions(atom)) ++sharers;
    }
    if (sharers > 0) {
      table[atom] = 1.0 / static_cast<double>(sharers);
    }
  }
  return table;
}

std::pair<double, double> gamma_theta(const KnowledgeBase& kb,
                                      const std::string& condition,
                                      const ParticipationTable& table,
                                      const ObservationSet& q) {
  const ConditionProfile* cond = kb.find_condition(condition);
  if (cond == nullptr) {
    throw ValidationError("unknown condition: '" + condition + "'");
  }
  double gamma = 0.0;
  double theta = 0.0;
  for (const auto& [atom, ratio] : table) {
    if (!q.atoms.contains(atom)) continue;
    if (cond->symptoms.contains(atom)) {
      gamma = std::max(gamma, ratio);
    } else if (cond->triggers.contains(atom)) {
      theta = std::max(theta, ratio);
    }
  }
  return {gamma, theta};
}

double certainty_weight(double gamma, double theta) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw RangeError("gamma must lie in [0,1], got " + std::to_string(gamma));
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw RangeError("theta must lie in [0,1], got " + std::to_string(theta));
  }
  const double sum = gamma + theta;
  const double denom = std::max(sum, 1.0 - gamma * theta);
  // denom is at least 1 when sum is 0, so the zero-evidence case divides
  // cleanly to 0.
  return sum / denom;
}

}  // namespace respmon
