#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "respmon/cf_calculus.hpp"
#include "respmon/errors.hpp"

using namespace respmon;
using namespace respmon::cf;

namespace {

constexpr double kTol = 1e-12;

std::vector<CertaintyValue> values(std::initializer_list<double> vs) {
  std::vector<CertaintyValue> out;
  for (double v : vs) out.push_back(CertaintyValue{v});
  return out;
}

}  // namespace

TEST_CASE("measure of belief") {
  CHECK(measure_of_belief(1.0, 0.3).value == 1.0);
  CHECK(measure_of_belief(0.3, 0.3).value == 0.0);
  CHECK(measure_of_belief(0.2, 0.6).value == doctest::Approx(0.5).epsilon(kTol));
  // Evidence below the prior adds no belief.
  CHECK(measure_of_belief(0.8, 0.1).value == 0.0);

  CHECK_THROWS_AS(measure_of_belief(-0.1, 0.5), RangeError);
  CHECK_THROWS_AS(measure_of_belief(0.5, 1.2), RangeError);
  CHECK_THROWS_AS(measure_of_belief(std::nan(""), 0.5), RangeError);
}

TEST_CASE("measure of disbelief") {
  CHECK(measure_of_disbelief(0.0, 0.7).value == 1.0);
  CHECK(measure_of_disbelief(0.3, 0.3).value == 0.0);
  CHECK(measure_of_disbelief(0.5, 0.2).value ==
        doctest::Approx(0.6).epsilon(kTol));
  CHECK(measure_of_disbelief(0.2, 0.9).value == 0.0);

  CHECK_THROWS_AS(measure_of_disbelief(1.5, 0.5), RangeError);
}

TEST_CASE("prior-belief pair overloads") {
  const PriorBelief raised{0.2, 0.6};
  CHECK(measure_of_belief(raised).value == measure_of_belief(0.2, 0.6).value);
  CHECK(measure_of_disbelief(raised).value == 0.0);
}

TEST_CASE("certainty factor endpoints and subtraction") {
  CHECK(certainty_factor(Belief{1.0}, Disbelief{0.0}).value == 1.0);
  CHECK(certainty_factor(Belief{0.0}, Disbelief{1.0}).value == -1.0);
  CHECK(certainty_factor(Belief{0.7}, Disbelief{0.2}).value ==
        doctest::Approx(0.5).epsilon(kTol));
  CHECK_THROWS_AS(certainty_factor(Belief{1.3}, Disbelief{0.0}), RangeError);
}

TEST_CASE("belief and disbelief are exclusive and bounded") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double h = unit(rng);
    const double he = unit(rng);
    const double b = measure_of_belief(h, he).value;
    const double d = measure_of_disbelief(h, he).value;
    CHECK(b >= 0.0);
    CHECK(b <= 1.0);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    // At most one of the two reacts to any single evidence.
    CHECK(!(b > 0.0 && d > 0.0));
    CHECK((b > 0.0) == (he > h));
    CHECK((d > 0.0) == (he < h));
    const double cf = certainty_factor(Belief{b}, Disbelief{d}).value;
    CHECK(cf >= -1.0);
    CHECK(cf <= 1.0);
  }
}

TEST_CASE("incremental combination examples") {
  CHECK(combine_incremental(CertaintyValue{0.5}, CertaintyValue{0.5}).value ==
        0.75);
  CHECK(combine_incremental(CertaintyValue{0.42}, CertaintyValue{0.0}).value ==
        0.42);
  CHECK(combine_incremental(CertaintyValue{0.6}, CertaintyValue{-0.4}).value ==
        doctest::Approx(1.0 / 3.0).epsilon(kTol));
  CHECK_THROWS_AS(
      combine_incremental(CertaintyValue{1.0}, CertaintyValue{-1.0}),
      DegenerateEvidenceError);
  CHECK_THROWS_AS(
      combine_incremental(CertaintyValue{1.5}, CertaintyValue{0.0}),
      RangeError);
}

TEST_CASE("incremental combination properties") {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> cf_range(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int i = 0; i < 2000; ++i) {
    const double x = cf_range(rng);
    const double y = cf_range(rng);
    if (std::min(std::fabs(x), std::fabs(y)) >= 1.0 && x * y < 0.0) continue;

    const double xy = combine_incremental(CertaintyValue{x},
                                          CertaintyValue{y}).value;
    const double yx = combine_incremental(CertaintyValue{y},
                                          CertaintyValue{x}).value;
    CHECK(std::fabs(xy - yx) <= kTol);
    CHECK(std::fabs(xy) <= 1.0);
    CHECK(combine_incremental(CertaintyValue{x}, CertaintyValue{0.0}).value ==
          x);
  }

  // Same-sign associativity, positive and negative triples.
  for (int sign = 0; sign < 2; ++sign) {
    for (int i = 0; i < 1000; ++i) {
      double a = unit(rng), b = unit(rng), c = unit(rng);
      if (sign == 1) {
        a = -a;
        b = -b;
        c = -c;
      }
      const auto comb = [](double u, double v) {
        return combine_incremental(CertaintyValue{u}, CertaintyValue{v}).value;
      };
      CHECK(std::fabs(comb(comb(a, b), c) - comb(a, comb(b, c))) <= kTol);
    }
  }

  // Two positive inputs: result dominates both and is monotone in each.
  for (int i = 0; i < 1000; ++i) {
    const double x1 = unit(rng);
    const double x2 = std::min(1.0, x1 + unit(rng) * (1.0 - x1));
    const double y = unit(rng);
    const auto comb = [](double u, double v) {
      return combine_incremental(CertaintyValue{u}, CertaintyValue{v}).value;
    };
    CHECK(comb(x1, y) >= std::max(x1, y) - kTol);
    CHECK(comb(x2, y) + kTol >= comb(x1, y));
  }
}

TEST_CASE("conjunctive and disjunctive propagation") {
  CHECK(propagate_conjunctive(values({0.5, 0.25})).value == 0.25);
  CHECK(propagate_conjunctive(values({0.8})).value == 0.8);
  CHECK(propagate_conjunctive(values({0.2, -0.1, 0.9})).value == -0.1);

  CHECK(propagate_disjunctive(values({0.5, 0.25})).value == 0.5);
  CHECK(propagate_disjunctive(values({0.2, 0.25, 0.25})).value == 0.25);
  CHECK(propagate_disjunctive(values({0.1})).value == 0.1);

  CHECK_THROWS_AS(propagate_conjunctive({}), EmptyPremiseError);
  CHECK_THROWS_AS(propagate_disjunctive({}), EmptyPremiseError);

  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> cf_range(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 12);
  for (int i = 0; i < 1000; ++i) {
    std::vector<CertaintyValue> cfs;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) cfs.push_back(CertaintyValue{cf_range(rng)});
    double lo = cfs[0].value, hi = cfs[0].value;
    for (const auto& cf : cfs) {
      lo = std::min(lo, cf.value);
      hi = std::max(hi, cf.value);
    }
    CHECK(propagate_conjunctive(cfs).value == lo);
    CHECK(propagate_disjunctive(cfs).value == hi);
  }
}

TEST_CASE("certainty scale labels") {
  CHECK(interpret(CertaintyValue{1.0}) == "definitely true");
  CHECK(interpret(CertaintyValue{0.0}) == "unknown");
  CHECK(interpret(CertaintyValue{-1.0}) == "definitely false");

  CHECK(interpret(CertaintyValue{0.2}) == "unknown");
  CHECK(interpret(CertaintyValue{0.21}) == "probably true");
  CHECK(interpret(CertaintyValue{0.8}) == "probably true");
  CHECK(interpret(CertaintyValue{0.81}) == "definitely true");
  CHECK(interpret(CertaintyValue{-0.5}) == "probably false");
  CHECK(interpret(CertaintyValue{-0.85}) == "definitely false");

  // Custom bands move the cut points.
  const ScaleBands wide{0.5, 0.9};
  CHECK(interpret(CertaintyValue{0.4}, wide) == "unknown");
  CHECK(interpret(CertaintyValue{0.95}, wide) == "definitely true");
}
