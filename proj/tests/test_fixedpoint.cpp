#include <cmath>

#include "doctest.h"

#include "conemetric/fixedpoint.hpp"

using namespace conemetric;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

OrderUnitSpace orthant2() { return OrderUnitSpace(Cone::Orthant(2), vec({1, 1})); }

// halving map on the dyadic grid 1, 1/2, ..., 2^-depth with the floor fixed
std::pair<ConeMetric, std::vector<std::size_t>> halving_parts(int depth) {
  std::vector<Point> points;
  std::vector<std::size_t> map;
  for (int j = 0; j <= depth; ++j) {
    Vector c(1);
    c[0] = std::ldexp(1.0, -j);
    points.push_back(Point{"g" + std::to_string(j), c});
    map.push_back(static_cast<std::size_t>(std::min(j + 1, depth)));
  }
  ConeMetric metric = ConeMetric::ScaledScalar(orthant2(), std::move(points), vec({1, 1}),
                                               ScalarMetric{});
  return {std::move(metric), std::move(map)};
}

ContractionProblem halving_problem(int depth) {
  auto [metric, map] = halving_parts(depth);
  return ContractionProblem(std::move(metric), std::move(map));
}

}  // namespace

TEST_CASE("minimal dominating scale") {
  const OrderUnitSpace space = orthant2();
  CHECK(min_dominating_scale(space, vec({1, 1}), vec({0.5, 0.25})) == 0.5);
  CHECK(min_dominating_scale(space, vec({1, 1}), vec({0, 0})) == 0.0);
  CHECK_FALSE(min_dominating_scale(space, vec({1, 0}), vec({0, 1})).has_value());
  CHECK_THROWS_AS(min_dominating_scale(space, vec({-1, 1}), vec({1, 1})),
                  std::invalid_argument);
  // steep but finite ratios resolve below the 2^60 cap
  const auto steep = min_dominating_scale(space, vec({1, 1e-15}), vec({1, 1}));
  REQUIRE(steep.has_value());
  CHECK(*steep == doctest::Approx(1e15).epsilon(1e-6));

  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    const Vector u = sample_cone_point(space.cone(), rng);
    const Vector v = sample_cone_point(space.cone(), rng);
    const auto base = min_dominating_scale(space, u, v);
    const double alpha = std::exp(rng.uniform(-1.0, 1.0));
    const auto scaled = min_dominating_scale(space, Vector(alpha * u), Vector(alpha * v));
    REQUIRE(base.has_value() == scaled.has_value());
    if (base) CHECK(*scaled == doctest::Approx(*base).epsilon(1e-9));
  }
}

TEST_CASE("contraction estimates on canonical maps") {
  SUBCASE("identity map") {
    ConeMetric metric = ConeMetric::ScaledScalar(
        orthant2(), {Point{"a", vec({0})}, Point{"b", vec({1})}, Point{"c", vec({2.5})}},
        vec({1, 1}), ScalarMetric{});
    const ContractionProblem identity(metric, {0, 1, 2});
    CHECK(estimate_contraction(identity) == 1.0);

    const ContractionProblem constant(metric, {1, 1, 1});
    CHECK(estimate_contraction(constant) == 0.0);
  }
  SUBCASE("halving map") {
    CHECK(estimate_contraction(halving_problem(12)) == 0.5);
  }
  SUBCASE("needs at least two points") {
    ConeMetric metric =
        ConeMetric::Discrete(orthant2(), {Point{"a", std::nullopt}}, vec({1, 1}));
    const ContractionProblem trivial(metric, {0});
    CHECK_THROWS_AS(estimate_contraction(trivial), std::invalid_argument);
  }
}

TEST_CASE("claimed ratios are validated on every pair") {
  const auto [metric, map] = halving_parts(6);
  CHECK_NOTHROW(ContractionProblem(metric, map, 0.5));
  CHECK_THROWS_AS(ContractionProblem(metric, map, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(ContractionProblem(metric, map, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(ContractionProblem(metric, {0, 9, 0, 0, 0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("banach iteration on the halving grid") {
  const ContractionProblem problem = halving_problem(50);
  const BanachResult run = banach_iterate(problem, 0, 1e-9, 100);

  CHECK(run.contraction_ratio == 0.5);
  CHECK(run.residual < 1e-9);
  // the geometric bound is exact on this instance
  for (std::size_t n = 0; n < run.iterates.size(); ++n) {
    const double coordinate = (*problem.metric().point(run.iterates[n]).coords)[0];
    CHECK(coordinate <= run.bound_trace[n] * (1.0 + 1e-9));
    CHECK(run.bound_trace[n] == doctest::Approx(std::pow(0.5, double(n))).epsilon(1e-12));
  }
  // converged within tol of the halving map's limit
  const double final_coord = (*problem.metric().point(run.fixed_point).coords)[0];
  CHECK(final_coord <= 1e-9);
}

TEST_CASE("a fixed starting point returns immediately") {
  const ContractionProblem problem = halving_problem(8);
  const BanachResult run = banach_iterate(problem, 8, 1e-9, 100);
  CHECK(run.fixed_point == 8);
  CHECK(run.iterates == std::vector<std::size_t>{8});
  CHECK(run.residual == 0.0);
}

TEST_CASE("two starting points meet at desk scale") {
  const ContractionProblem problem = halving_problem(50);
  const ScalarizedMetric s = scalarize(problem.metric());
  const BanachResult a = banach_iterate(problem, 0, 1e-9, 100);
  const BanachResult b = banach_iterate(problem, 3, 1e-9, 100);
  CHECK(s.value(a.fixed_point, b.fixed_point) <= 2e-9);
}

TEST_CASE("failure modes of the iteration") {
  ConeMetric metric = ConeMetric::ScaledScalar(
      orthant2(), {Point{"a", vec({0})}, Point{"b", vec({1})}}, vec({1, 1}),
      ScalarMetric{});
  const ContractionProblem identity(metric, {0, 1});
  CHECK_THROWS_AS(banach_iterate(identity, 0, 1e-9, 100), std::runtime_error);

  const ContractionProblem slow = halving_problem(50);
  CHECK_THROWS_AS(banach_iterate(slow, 0, 1e-12, 3), IterationLimitError);
  try {
    banach_iterate(slow, 0, 1e-12, 3);
  } catch (const IterationLimitError& e) {
    CHECK(e.best_point == 3);  // three halvings from the top
    CHECK(e.residual > 0.0);
  }
}

TEST_CASE("scalar contraction transfers from the cone order") {
  const ContractionProblem problem = halving_problem(20);
  const ScalarizedMetric s = scalarize(problem.metric());
  const double k = *estimate_contraction(problem);
  for (std::size_t i = 0; i < problem.metric().size(); ++i) {
    for (std::size_t j = i + 1; j < problem.metric().size(); ++j) {
      CHECK(s.value(problem.apply(i), problem.apply(j)) <= k * s.value(i, j) + 1e-9);
    }
  }
}

TEST_CASE("normality estimates") {
  CHECK(normality_constant(Cone::Orthant(3), 1000, 5) <= 1.0 + 1e-9);
  CHECK(normality_constant(Cone::Orthant(3), 1000, 5) > 0.99);  // tight pairs sampled
  // deterministic in the seed
  CHECK(normality_constant(Cone::Lorentz(3), 500, 9) ==
        normality_constant(Cone::Lorentz(3), 500, 9));
  CHECK_THROWS_AS(normality_constant(Cone::Orthant(2), 0, 1), std::invalid_argument);
}
