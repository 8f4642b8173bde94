#include <cmath>

#include "doctest.h"

#include "conemetric/sequences.hpp"

using namespace conemetric;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

OrderUnitSpace orthant2() { return OrderUnitSpace(Cone::Orthant(2), vec({1, 1})); }

OrderUnitSpace lorentz3() { return OrderUnitSpace(Cone::Lorentz(3), vec({1, 0, 0})); }

SequencePrefix constant_sequence(std::size_t n) {
  // one point visited forever, with a second point present in the domain
  ConeMetric metric = ConeMetric::ScaledScalar(orthant2(),
      {Point{"a", vec({0})}, Point{"b", vec({1})}}, vec({1, 1}), ScalarMetric{});
  return SequencePrefix(std::move(metric), std::vector<std::size_t>(n, 0));
}

}  // namespace

TEST_CASE("prefix construction validates the inputs") {
  ConeMetric metric = ConeMetric::Discrete(orthant2(), {Point{"a", std::nullopt}}, vec({1, 1}));
  CHECK_THROWS_AS(SequencePrefix(metric, {0}), std::invalid_argument);
  CHECK_THROWS_AS(SequencePrefix(metric, {0, 1}), std::invalid_argument);
}

TEST_CASE("constant sequences certify at every threshold") {
  const SequencePrefix s = constant_sequence(10);
  for (double eps : {1.0, 0.1, 0.001}) {
    const CauchyVerdict verdict = is_unit_cauchy(s, s.metric().space().unit(), eps);
    CHECK(verdict.certified);
    CHECK(verdict.k == 0);
  }
  const CauchyVerdict convergence = unit_converges(s, 0, 0.5);
  CHECK(convergence.certified);
  CHECK(convergence.k == 0);
}

TEST_CASE("dyadic partial sums certify with the expected window") {
  // x_n = sum of 2^-i for i <= n; tail gaps below 0.1 from index 4 on
  std::vector<Point> points;
  std::vector<std::size_t> visits;
  double sum = 0.0;
  for (int i = 0; i < 20; ++i) {
    sum += std::ldexp(1.0, -i);
    Vector c(1);
    c[0] = sum;
    points.push_back(Point{"s" + std::to_string(i), c});
    visits.push_back(i);
  }
  ConeMetric metric =
      ConeMetric::ScaledScalar(orthant2(), std::move(points), vec({1, 1}), ScalarMetric{});
  const SequencePrefix s(std::move(metric), visits);
  const CauchyVerdict verdict = is_unit_cauchy(s, s.metric().space().unit(), 0.1);
  CHECK(verdict.certified);
  CHECK(verdict.k == 4);
}

TEST_CASE("a two-entry prefix decides on its only pair") {
  const SequencePrefix pair = make_alternating_sequence(orthant2(), 0.5, 2);
  CHECK_FALSE(is_unit_cauchy(pair, pair.metric().space().unit(), 0.3).certified);
  CHECK(is_unit_cauchy(pair, pair.metric().space().unit(), 0.9).certified);
}

TEST_CASE("alternating pairs never certify below their gap") {
  const SequencePrefix s = make_alternating_sequence(orthant2(), 1.0, 16);
  const CauchyVerdict verdict = is_unit_cauchy(s, s.metric().space().unit(), 0.5);
  CHECK_FALSE(verdict.certified);
  REQUIRE(verdict.witness.has_value());
  CHECK(verdict.witness->first == 14);  // the final window still violates
  CHECK(verdict.witness->second == 15);

  // above the gap the very first window works
  CHECK(is_unit_cauchy(s, s.metric().space().unit(), 1.5).certified);
}

TEST_CASE("threshold ladder with secondary-unit transfer") {
  for (const OrderUnitSpace& space : {orthant2(), lorentz3()}) {
    const SequencePrefix orbit = make_orbit_sequence(space, 0.5, 1.0, 32);
    const LadderReport geometric = unit_cauchy_ladder(orbit, {1.0, 0.1, 0.01});
    CHECK(geometric.all_certified);
    for (const LadderEntry& entry : geometric.entries) {
      CHECK(entry.verdict.certified);
      CHECK(entry.secondary.certified);
    }

    const SequencePrefix alternating = make_alternating_sequence(space, 0.7, 32);
    const LadderReport mixed = unit_cauchy_ladder(alternating, {1.0, 0.5, 0.1});
    CHECK_FALSE(mixed.all_certified);
    CHECK(mixed.entries[0].verdict.certified);        // 0.7 < 1
    CHECK_FALSE(mixed.entries[1].verdict.certified);  // 0.7 >= 0.5
    CHECK_FALSE(mixed.entries[2].verdict.certified);
  }
}

TEST_CASE("certificates are monotone in the threshold") {
  Rng rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const SequencePrefix s =
        make_orbit_sequence(orthant2(), rng.uniform(0.4, 0.8), rng.uniform(0.5, 2.0), 24);
    const double eps = std::exp(rng.uniform(std::log(0.01), std::log(1.0)));
    const CauchyVerdict tight = is_unit_cauchy(s, s.metric().space().unit(), eps);
    const CauchyVerdict loose = is_unit_cauchy(s, s.metric().space().unit(), 2.0 * eps);
    if (tight.certified) {
      CHECK(loose.certified);
      CHECK(loose.k <= tight.k);
    }
  }
}

TEST_CASE("convergence verdicts separate limits") {
  const SequencePrefix orbit = make_orbit_sequence(orthant2(), 0.5, 1.0, 24);
  // the final orbit point is the de-facto limit on this prefix
  const std::size_t last = orbit.points().back();
  CHECK(unit_converges(orbit, last, 0.1).certified);

  // a sequence near p0 does not converge to a point one unit away
  const SequencePrefix constant = constant_sequence(12);
  CHECK_FALSE(unit_converges(constant, 1, 0.5).certified);
  CHECK(unit_converges(constant, 1, 1.5).certified);
}

TEST_CASE("scalar and unit-dominance Cauchy verdicts coincide") {
  Rng rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const OrderUnitSpace space = trial % 2 == 0 ? orthant2() : lorentz3();
    const SequencePrefix s =
        trial % 3 == 2
            ? make_alternating_sequence(space, rng.uniform(0.3, 2.0), 20)
            : make_orbit_sequence(space, rng.uniform(0.4, 0.8), rng.uniform(0.5, 2.0), 20);
    for (double eps : {1.3, 0.7, 0.09}) {
      const CauchyEquivalenceReport report = cauchy_equivalence_check(s, eps);
      CHECK(report.ratio_identity_ok);
      if (report.boundary_pairs == 0) CHECK(report.equivalent);
    }
  }
}

TEST_CASE("noisy orbits still certify once the noise decays") {
  const SequencePrefix s = make_noisy_orbit_sequence(orthant2(), 0.6, 1.0, 0.05, 5, 40);
  const CauchyVerdict verdict = is_unit_cauchy(s, s.metric().space().unit(), 0.1);
  CHECK(verdict.certified);
  const CauchyVerdict scalar = scalar_cauchy(s, 0.1);
  CHECK(scalar.certified);
  CHECK(scalar.k == verdict.k);
}
