#include "respmon/cf_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "respmon/errors.hpp"

namespace respmon::cf {

namespace {

void require_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw RangeError(std::string(name) + " must lie in [0,1], got " +
                     std::to_string(v));
  }
}

void require_cf(double v, const char* name) {
  if (!(v >= -1.0 && v <= 1.0)) {
    throw RangeError(std::string(name) + " must lie in [-1,1], got " +
                     std::to_string(v));
  }
}

// Combination arithmetic can overshoot an endpoint by an ulp.
double clamp_cf(double v) { return std::clamp(v, -1.0, 1.0); }

}  // namespace

Belief measure_of_belief(double prior, double conditional) {
  require_unit(prior, "prior");
  require_unit(conditional, "conditional");
  if (prior == 1.0) return Belief{1.0};
  return Belief{(std::max(conditional, prior) - prior) / (1.0 - prior)};
}

Belief measure_of_belief(const PriorBelief& pb) {
  return measure_of_belief(pb.prior, pb.conditional);
}

Disbelief measure_of_disbelief(double prior, double conditional) {
  require_unit(prior, "prior");
  require_unit(conditional, "conditional");
  if (prior == 0.0) return Disbelief{1.0};
  return Disbelief{(std::min(conditional, prior) - prior) / (-prior)};
}

Disbelief measure_of_disbelief(const PriorBelief& pb) {
  return measure_of_disbelief(pb.prior, pb.conditional);
}

CertaintyValue certainty_factor(Belief b, Disbelief d) {
  require_unit(b.value, "belief");
  require_unit(d.value, "disbelief");
  return CertaintyValue{b.value - d.value};
}

CertaintyValue combine_incremental(CertaintyValue first,
                                   CertaintyValue second) {
  const double x = first.value;
  const double y = second.value;
  require_cf(x, "first certainty value");
  require_cf(y, "second certainty value");

  if (x >= 0.0 && y >= 0.0) {
    return CertaintyValue{clamp_cf(x + y * (1.0 - x))};
  }
  if (x < 0.0 && y < 0.0) {
    return CertaintyValue{clamp_cf(x + y * (1.0 + x))};
  }
  const double m = std::min(std::fabs(x), std::fabs(y));
  if (m >= 1.0) {
    throw DegenerateEvidenceError(
        "cannot combine fully contradictory evidence (+1 with -1)");
  }
  return CertaintyValue{clamp_cf((x + y) / (1.0 - m))};
}

CertaintyValue propagate_conjunctive(std::span<const CertaintyValue> cfs) {
  if (cfs.empty()) {
    throw EmptyPremiseError("conjunctive propagation over no premises");
  }
  CertaintyValue out = cfs.front();
  for (const auto& cf : cfs.subspan(1)) {
    if (cf.value < out.value) out = cf;
  }
  return out;
}

CertaintyValue propagate_disjunctive(std::span<const CertaintyValue> cfs) {
  if (cfs.empty()) {
    throw EmptyPremiseError("disjunctive propagation over no premises");
  }
  CertaintyValue out = cfs.front();
  for (const auto& cf : cfs.subspan(1)) {
    if (cf.value > out.value) out = cf;
  }
  return out;
}

std::string_view interpret(CertaintyValue cf, const ScaleBands& bands) {
  const double v = cf.value;
  if (v < -bands.outer) return "definitely false";
  if (v < -bands.inner) return "probably false";
  if (v <= bands.inner) return "unknown";
  if (v <= bands.outer) return "probably true";
  return "definitely true";
}

}  // namespace respmon::cf
