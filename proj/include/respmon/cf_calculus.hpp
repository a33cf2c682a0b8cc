#pragma once

#include <span>
#include <string_view>

namespace respmon::cf {

// How much an observed evidence raises the expert's belief above the prior.
// Always in [0, 1].
struct Belief {
  double value = 0.0;
};

// How much an observed evidence lowers the expert's belief below the prior.
// Always in [0, 1].
struct Disbelief {
  double value = 0.0;
};

// Net certainty in a hypothesis on the [-1, 1] scale:
// -1 definitely false, 0 unknown, +1 definitely true.
struct CertaintyValue {
  double value = 0.0;
};

// Expert's prior in a hypothesis and the conditional given an evidence.
struct PriorBelief {
  double prior = 0.0;        // P(H)
  double conditional = 0.0;  // P(H|E)
};

// Belief gained when the conditional exceeds the prior:
//   1 when prior = 1, else (max(conditional, prior) - prior) / (1 - prior).
// Throws RangeError when either argument leaves [0, 1].
Belief measure_of_belief(double prior, double conditional);
Belief measure_of_belief(const PriorBelief& pb);

// Disbelief gained when the conditional falls below the prior:
//   1 when prior = 0, else (min(conditional, prior) - prior) / (-prior).
Disbelief measure_of_disbelief(double prior, double conditional);
Disbelief measure_of_disbelief(const PriorBelief& pb);

// CF = belief - disbelief.
CertaintyValue certainty_factor(Belief b, Disbelief d);

// Asymptotic combination of two certainty values supporting the same
// conclusion. Same-sign pairs move toward the nearer endpoint without
// ever crossing it; opposite signs are resolved by the ratio rule.
// The pair (+1, -1) is contradictory and throws DegenerateEvidenceError.
CertaintyValue combine_incremental(CertaintyValue first, CertaintyValue second);

// Certainty of a conjunction of premises: the minimum.
CertaintyValue propagate_conjunctive(std::span<const CertaintyValue> cfs);

// Certainty of a disjunction of premises: the maximum.
CertaintyValue propagate_disjunctive(std::span<const CertaintyValue> cfs);

// Interpretation bands for the certainty scale. The inner cut bounds the
// "unknown" plateau around zero; the outer cut separates "probably" from
// "definitely". Both configurable; defaults documented in the README.
struct ScaleBands {
  double inner = 0.2;
  double outer = 0.8;
};

// Maps a certainty value to one of five labels:
//   [-1, -outer) definitely false | [-outer, -inner) probably false |
//   [-inner, +inner] unknown | (inner, outer] probably true |
//   (outer, 1] definitely true.
std::string_view interpret(CertaintyValue cf, const ScaleBands& bands = {});

}  // namespace respmon::cf
