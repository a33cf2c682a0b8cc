#pragma once

// Brute-force reference for the suspicion pipeline. Everything here is
// recomputed with naive loops directly over the condition profiles so the
// production path has an independent answer to match.

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "respmon/knowledge_base.hpp"

namespace respmon::testutil {

struct OracleResult {
  std::set<std::string> beta;
  std::map<std::string, double> ratios;
  std::map<std::string, double> gammas;
  std::map<std::string, double> thetas;
  std::map<std::string, double> weights;
};

inline OracleResult oracle_infer(const KnowledgeBase& kb,
                                 std::set<std::string> observed) {
  OracleResult result;

  std::set<std::string> universe;
  for (const auto& cond : kb.conditions()) {
    for (const auto& a : cond.symptoms) universe.insert(a);
    for (const auto& a : cond.triggers) universe.insert(a);
  }
  std::erase_if(observed,
                [&](const std::string& a) { return !universe.contains(a); });

  for (const auto& cond : kb.conditions()) {
    bool hit = false;
    for (const auto& atom : observed) {
      if (cond.symptoms.contains(atom) || cond.triggers.contains(atom)) {
        hit = true;
      }
    }
    if (hit) result.beta.insert(cond.id);
  }

  for (const auto& atom : observed) {
    int sharers = 0;
    for (const auto& cond : kb.conditions()) {
      if (!result.beta.contains(cond.id)) continue;
      if (cond.symptoms.contains(atom) || cond.triggers.contains(atom)) {
        ++sharers;
      }
    }
    if (sharers > 0) result.ratios[atom] = 1.0 / sharers;
  }

  for (const auto& cond : kb.conditions()) {
    if (!result.beta.contains(cond.id)) continue;
    double gamma = 0.0;
    double theta = 0.0;
    for (const auto& atom : observed) {
      const auto it = result.ratios.find(atom);
      if (it == result.ratios.end()) continue;
      if (cond.symptoms.contains(atom)) gamma = std::max(gamma, it->second);
      if (cond.triggers.contains(atom)) theta = std::max(theta, it->second);
    }
    result.gammas[cond.id] = gamma;
    result.thetas[cond.id] = theta;
    const double sum = gamma + theta;
    const double denom = std::max(sum, 1.0 - gamma * theta);
    result.weights[cond.id] = sum / denom;
  }
  return result;
}

}  // namespace respmon::testutil
