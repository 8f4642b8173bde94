#include "conemetric/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "conemetric/fixedpoint.hpp"
#include "conemetric/sequences.hpp"

namespace conemetric::suite {
namespace {

struct NamedCone {
  std::string name;
  Cone cone;
};

Cone sample_polyhedral() {
  Matrix f(4, 3);
  f << 1, 0, 1,
       0, 1, 1,
      -1, 0, 1,
       0, -1, 1;
  return Cone::Polyhedral(std::move(f));
}

std::vector<NamedCone> battery_cones() {
  std::vector<NamedCone> cones;
  for (Index n = 2; n <= 5; ++n) cones.push_back({"orthant-" + std::to_string(n), Cone::Orthant(n)});
  for (Index n = 3; n <= 5; ++n) cones.push_back({"lorentz-" + std::to_string(n), Cone::Lorentz(n)});
  for (Index k = 2; k <= 3; ++k) cones.push_back({"psd-" + std::to_string(k), Cone::Psd(k)});
  cones.push_back({"polyhedral-3", sample_polyhedral()});
  return cones;
}

// an order unit with healthy margin that still exercises the general-e paths
Vector perturbed_unit(const Cone& cone, Rng& rng) {
  return canonical_unit(cone) + 0.3 * sample_cone_point(cone, rng);
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

CriterionResult make_result(int id, const char* name) {
  CriterionResult result;
  result.id = id;
  result.name = name;
  return result;
}

// --- criterion 1: gauge and dual-functional norms agree -------------------

CriterionResult criterion_norm_agreement(std::uint64_t seed) {
  CriterionResult result = make_result(1, "norm-oracle-agreement");
  double worst = 0.0;
  int cone_index = 0;
  for (const NamedCone& named : battery_cones()) {
    Rng rng(seed ^ (0x100 + cone_index++));
    const OrderUnitSpace space(named.cone, perturbed_unit(named.cone, rng));
    for (int i = 0; i < 1000; ++i) {
      const Vector x =
          rng.gaussian(named.cone.ambient_dim()) * std::exp(rng.uniform(-2.0, 3.0));
      const double gauge = gauge_norm(space, x, 1e-12);
      const double dual = dual_norm(space, x);
      const double deviation = std::abs(gauge - dual) / std::max(1.0, dual);
      worst = std::max(worst, deviation);
      result.checks += 1;
      if (deviation > 1e-9) result.failures += 1;
    }
  }
  result.pass = result.failures == 0;
  result.detail = "max relative deviation " + format_double(worst);
  return result;
}

// --- criterion 2: interior membership and order-unit verdicts collapse ----

CriterionResult criterion_unit_interior_collapse(std::uint64_t seed) {
  CriterionResult result = make_result(2, "interior-order-unit-collapse");
  int cone_index = 0;
  long long semantic_checks = 0;
  for (const NamedCone& named : battery_cones()) {
    Rng rng(seed ^ (0x200 + cone_index++));
    const Cone& cone = named.cone;
    const Vector canon = canonical_unit(cone);
    int semantic_budget = 25;
    for (int i = 0; i < 1000; ++i) {
      Vector v;
      switch (i % 3) {
        case 0: v = rng.gaussian(cone.ambient_dim()); break;
        case 1: v = sample_cone_point(cone, rng); break;
        default: v = perturbed_unit(cone, rng); break;
      }
      const double margin = membership_margin(cone, v);
      const bool interior = interior_contains(cone, v, 1e-9);
      const bool unit = is_order_unit(cone, v, 1e-9);
      if (std::abs(margin - 1e-9) <= 1e-7 * std::max(1.0, v.norm())) {
        result.boundary_excluded += 1;
        continue;
      }
      result.checks += 1;
      if (interior != unit) result.failures += 1;

      // semantic spot checks of the unit property itself
      if (unit && semantic_budget > 0) {
        semantic_budget -= 1;
        for (int t = 0; t < 10; ++t) {
          const Vector x = rng.gaussian(cone.ambient_dim());
          bool dominated = false;
          for (double lambda = 1.0; lambda <= 0x1p120 && !dominated; lambda *= 2.0) {
            dominated = contains(cone, Vector(lambda * v - x), 0.0);
          }
          semantic_checks += 1;
          if (!dominated) result.failures += 1;
        }
      } else if (!unit && margin <= 0.0) {
        // a point outside the interior cannot dominate an interior point
        semantic_checks += 1;
        if (contains(cone, Vector(0x1p60 * v - canon), 0.0)) result.failures += 1;
      }
    }
  }
  result.pass = result.failures == 0;
  result.detail = std::to_string(semantic_checks) + " semantic domination checks";
  return result;
}

// --- criterion 3: strict unit dominance matches gauge < 1 -----------------

CriterionResult criterion_unit_dominance(std::uint64_t seed) {
  CriterionResult result = make_result(3, "unit-dominance-gauge");
  int cone_index = 0;
  for (const NamedCone& named : battery_cones()) {
    Rng rng(seed ^ (0x300 + cone_index++));
    const OrderUnitSpace space(named.cone, perturbed_unit(named.cone, rng));
    int accepted = 0, attempts = 0;
    while (accepted < 1000 && attempts < 2000) {
      attempts += 1;
      Vector v = sample_cone_point(named.cone, rng);
      const double p = dual_norm(space, v);
      if (!(p > 0.0)) continue;
      v *= std::exp(rng.uniform(std::log(0.25), std::log(4.0))) / p;
      const double gauge = gauge_norm(space, v, 1e-12);
      if (std::abs(gauge - 1.0) <= 1e-7) {
        result.boundary_excluded += 1;
        continue;
      }
      accepted += 1;
      result.checks += 1;
      if (strictly_dominated_by_unit(space, v) != (gauge < 1.0)) result.failures += 1;
    }
  }
  result.pass = result.failures == 0;
  result.detail = "samples rescaled around the unit sphere of the gauge";
  return result;
}

// --- criterion 4: ball identity and cover index ----------------------------

std::vector<Point> id_points(int n) {
  std::vector<Point> points;
  for (int i = 0; i < n; ++i) points.push_back(Point{"q" + std::to_string(i), std::nullopt});
  return points;
}

std::vector<Point> line_points(int n, Rng& rng, double lo, double hi) {
  std::vector<Point> points;
  for (int i = 0; i < n; ++i) {
    Vector c(1);
    c[0] = rng.uniform(lo, hi);
    points.push_back(Point{"q" + std::to_string(i), c});
  }
  return points;
}

CriterionResult criterion_ball_identity(std::uint64_t seed) {
  CriterionResult result = make_result(4, "ball-identity");
  Rng rng(seed ^ 0x400);

  const OrderUnitSpace orthant2(Cone::Orthant(2), Vector::Ones(2));
  Vector lorentz_unit = Vector::Zero(3);
  lorentz_unit[0] = 1.0;
  const OrderUnitSpace lorentz3(Cone::Lorentz(3), lorentz_unit);

  std::vector<ConeMetric> metrics;
  metrics.push_back(ConeMetric::Discrete(orthant2, id_points(8), 0.8 * Vector::Ones(2)));
  {
    Vector c(2);
    c << 1.0, 2.0;
    metrics.push_back(ConeMetric::ScaledScalar(orthant2, line_points(10, rng, 0.0, 3.0), c,
                                               ScalarMetric{ScalarMetricKind::Euclidean, 1.0}));
  }
  metrics.push_back(ConeMetric::Componentwise(
      orthant2, line_points(10, rng, 0.0, 3.0),
      {ScalarMetric{ScalarMetricKind::Euclidean, 1.0},
       ScalarMetric{ScalarMetricKind::Euclidean, 2.0}}));
  {
    // 20-point table over the orthant: (L1 gap, Linf gap) of planar points
    const int n = 20;
    std::vector<Point> points;
    std::vector<Vector> coords;
    for (int i = 0; i < n; ++i) {
      Vector c(2);
      c << rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0);
      coords.push_back(c);
      points.push_back(Point{"q" + std::to_string(i), c});
    }
    std::vector<Vector> values;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Vector d(2);
        d << (coords[i] - coords[j]).lpNorm<1>(),
            (coords[i] - coords[j]).lpNorm<Eigen::Infinity>();
        values.push_back(d);
      }
    }
    metrics.push_back(ConeMetric::Table(orthant2, std::move(points), std::move(values)));
  }
  {
    Vector c(3);
    c << 0.7, 0.2, 0.1;
    metrics.push_back(ConeMetric::Discrete(lorentz3, id_points(8), c));
  }
  {
    Vector c(3);
    c << 1.0, 0.3, 0.0;
    metrics.push_back(ConeMetric::ScaledScalar(lorentz3, line_points(10, rng, 0.0, 3.0), c,
                                               ScalarMetric{ScalarMetricKind::Euclidean, 1.0}));
  }

  const std::vector<double> mus = {0.1, 0.5, 1.0, 2.0, 10.0};
  const std::vector<double> radii = {1.0, 0.3, 0.05};
  for (const ConeMetric& m : metrics) {
    const ScalarizedMetric sm = scalarize(m);
    for (std::size_t x = 0; x < m.size(); ++x) {
      for (double mu : mus) {
        const BallIdentityReport report = ball_identity_check(m, sm, x, mu);
        result.checks += 1;
        result.boundary_excluded += report.boundary_excluded;
        if (!report.pass()) result.failures += 1;
      }
      for (double r : radii) {
        result.checks += 1;
        try {
          const int k = ball_cover_index(m, sm, x, r);
          if (k > static_cast<int>(std::floor(1.0 / r)) + 1) result.failures += 1;
        } catch (const std::logic_error&) {
          result.failures += 1;
        }
      }
    }
  }
  result.pass = result.failures == 0;
  result.detail = std::to_string(metrics.size()) + " metrics, mu ladder and cover radii";
  return result;
}

// --- criterion 5: unit-dominance Cauchy == scalar Cauchy -------------------

CriterionResult criterion_cauchy_equivalence(std::uint64_t seed) {
  CriterionResult result = make_result(5, "cauchy-equivalence");
  const std::vector<double> eps_list = {1.0, 0.1, 0.01};
  constexpr std::size_t kLength = 48;

  const OrderUnitSpace orthant2(Cone::Orthant(2), Vector::Ones(2));
  Vector lorentz_unit = Vector::Zero(3);
  lorentz_unit[0] = 1.0;
  const OrderUnitSpace lorentz3(Cone::Lorentz(3), lorentz_unit);

  long long label_checks = 0;
  bool ratio_identity_ok = true;
  for (int i = 0; i < 100; ++i) {
    Rng rng(seed ^ (0x500 + i));
    const OrderUnitSpace& space = (i % 2 == 0) ? orthant2 : lorentz3;

    SequencePrefix prefix = [&]() {
      if (i < 60) {
        return make_orbit_sequence(space, rng.uniform(0.35, 0.8), rng.uniform(0.5, 3.0),
                                   kLength);
      }
      if (i < 80) {
        double gap = 0.0;
        do {
          gap = rng.uniform(0.2, 3.0);
        } while (std::abs(gap - 1.0) < 1e-3 || std::abs(gap - 0.1) < 1e-4 ||
                 std::abs(gap - 0.01) < 1e-5);
        return make_alternating_sequence(space, gap, kLength);
      }
      const double x0 = rng.uniform(0.5, 2.0);
      return make_noisy_orbit_sequence(space, rng.uniform(0.4, 0.7), x0, 0.05 * x0,
                                       seed ^ (0x5000 + i), kLength);
    }();

    const ScalarizedMetric sm = scalarize(prefix.metric());
    const std::size_t n = prefix.length();
    // the windows shrink with k, so the last admissible window decides
    const double tail_gap = std::abs(
        (*prefix.metric().point(prefix.points()[n - 2]).coords)[0] -
        (*prefix.metric().point(prefix.points()[n - 1]).coords)[0]);

    for (double eps : eps_list) {
      const CauchyVerdict unit_verdict =
          is_unit_cauchy(prefix, prefix.metric().space().unit(), eps);
      const CauchyVerdict scalar_verdict = scalar_cauchy(prefix, sm, eps);

      int boundary_pairs = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
          if (std::abs(sm.value(prefix.points()[a], prefix.points()[b]) - eps) <
              1e-7 * eps) {
            boundary_pairs += 1;
          }
        }
      }
      if (boundary_pairs > 0) {
        result.boundary_excluded += 1;
        continue;
      }
      result.checks += 1;
      const bool agree =
          unit_verdict.certified == scalar_verdict.certified &&
          (!unit_verdict.certified || unit_verdict.k == scalar_verdict.k);
      if (!agree) result.failures += 1;

      // generator ground truth from the raw coordinates
      if (std::abs(tail_gap - eps) > 1e-6 * eps) {
        label_checks += 1;
        const bool expected = tail_gap < eps;
        if (unit_verdict.certified != expected) result.failures += 1;
      }
    }

    if (i == 0) {
      ratio_identity_ok = cauchy_equivalence_check(prefix, 0.1).ratio_identity_ok;
    }
  }
  if (!ratio_identity_ok) result.failures += 1;
  result.pass = result.failures == 0;
  result.detail = std::to_string(label_checks) + " ground-truth labels matched";
  return result;
}

// --- criterion 6: fixed-point iteration through the scalar metric ----------

CriterionResult criterion_fixed_point(std::uint64_t seed) {
  (void)seed;  // both instances are fully deterministic
  CriterionResult result = make_result(6, "banach-fixed-point");
  const OrderUnitSpace orthant2(Cone::Orthant(2), Vector::Ones(2));

  // analytic(i) is the closed-form scalar distance from domain point i to the
  // true fixed point; with scaling direction e the scalar metric is exactly
  // the coordinate gap, so the function stays independent of the gauge code.
  const auto check_problem = [&](const ContractionProblem& problem, std::size_t start,
                                 const auto& analytic) {
    const ScalarizedMetric sm = scalarize(problem.metric());
    const BanachResult run = banach_iterate(problem, start, 1e-9, 500);
    const double k = run.contraction_ratio;
    result.checks += 1;
    if (!(k < 1.0)) result.failures += 1;

    result.checks += 1;
    if (!(analytic(run.fixed_point) <= 1e-8)) result.failures += 1;

    // a-priori bound on every recorded iterate
    for (std::size_t i = 0; i < run.iterates.size(); ++i) {
      result.checks += 1;
      if (!(analytic(run.iterates[i]) <= run.bound_trace[i] * (1.0 + 1e-6))) {
        result.failures += 1;
      }
    }

    // scalar transfer on all domain pairs
    for (std::size_t a = 0; a < problem.metric().size(); ++a) {
      for (std::size_t b = a + 1; b < problem.metric().size(); ++b) {
        result.checks += 1;
        if (!(sm.value(problem.apply(a), problem.apply(b)) <=
              k * sm.value(a, b) + 1e-9)) {
          result.failures += 1;
        }
      }
    }
    return run;
  };

  {
    // halving on a dyadic grid; the resolution floor is its own image
    const int depth = 60;
    std::vector<Point> points;
    std::vector<std::size_t> map;
    for (int j = 0; j <= depth; ++j) {
      Vector c(1);
      c[0] = std::ldexp(1.0, -j);
      points.push_back(Point{"g" + std::to_string(j), c});
      map.push_back(static_cast<std::size_t>(std::min(j + 1, depth)));
    }
    ConeMetric metric = ConeMetric::ScaledScalar(
        orthant2, std::move(points), Vector::Ones(2),
        ScalarMetric{ScalarMetricKind::Euclidean, 1.0});
    const ContractionProblem problem(std::move(metric), std::move(map));
    const auto analytic = [&](std::size_t i) {
      return std::abs((*problem.metric().point(i).coords)[0]);
    };
    const BanachResult run = check_problem(problem, 0, analytic);
    result.checks += 1;
    if (std::abs(run.contraction_ratio - 0.5) > 1e-9) result.failures += 1;
  }

  {
    // planar affine contraction with linear-algebra fixed point; the moduli
    // stay below 1/2 so stepping the last orbit point onto the fixed point
    // keeps every pair ratio under 1
    Matrix a(2, 2);
    a << 0.3, 0.1, -0.05, 0.25;
    Vector b(2);
    b << 0.3, 0.1;
    const Vector fixed = (Matrix::Identity(2, 2) - a).colPivHouseholderQr().solve(b);

    const int steps = 24;
    std::vector<Point> points;
    std::vector<std::size_t> map;
    Vector x(2);
    x << 3.0, -2.0;
    for (int j = 0; j <= steps; ++j) {
      points.push_back(Point{"a" + std::to_string(j), x});
      map.push_back(static_cast<std::size_t>(j + 1));
      x = a * x + b;
    }
    points.push_back(Point{"fix", fixed});
    map.back() = points.size() - 1;    // the last orbit point steps onto it
    map.push_back(points.size() - 1);  // and the fixed point stays put
    ConeMetric metric = ConeMetric::ScaledScalar(
        orthant2, std::move(points), Vector::Ones(2),
        ScalarMetric{ScalarMetricKind::Euclidean, 1.0});
    const ContractionProblem problem(std::move(metric), std::move(map));
    const auto analytic = [&](std::size_t i) {
      return (*problem.metric().point(i).coords - fixed).norm();
    };
    check_problem(problem, 0, analytic);
  }

  result.pass = result.failures == 0;
  result.detail = "dyadic halving grid and affine planar contraction";
  return result;
}

// --- criterion 7: gauge monotonicity on the cone order ---------------------

CriterionResult criterion_monotonicity(std::uint64_t seed) {
  CriterionResult result = make_result(7, "gauge-monotonicity");
  int cone_index = 0;
  for (const NamedCone& named : battery_cones()) {
    Rng rng(seed ^ (0x700 + cone_index++));
    const OrderUnitSpace space(named.cone, perturbed_unit(named.cone, rng));
    for (int i = 0; i < 1000; ++i) {
      const Vector u = sample_cone_point(named.cone, rng);
      const Vector v = u + sample_cone_point(named.cone, rng);
      result.checks += 1;
      if (!(dual_norm(space, u) <= dual_norm(space, v) + 1e-9)) result.failures += 1;
      if (i < 100) {
        result.checks += 1;
        if (!(gauge_norm(space, u) <= gauge_norm(space, v) + 1e-9)) result.failures += 1;
      }
    }
  }
  result.pass = result.failures == 0;
  result.detail = "dual route on all samples, gauge route on a subsample";
  return result;
}

// --- criterion 8: orthant normality under the Euclidean norm ---------------

CriterionResult criterion_normality(std::uint64_t seed) {
  CriterionResult result = make_result(8, "orthant-normality");
  const double estimate = normality_constant(Cone::Orthant(3), 10000, seed ^ 0x800);
  result.checks = 10000;
  result.failures = estimate <= 1.0 + 1e-9 ? 0 : 1;
  result.pass = result.failures == 0;
  result.detail = "estimate " + format_double(estimate);
  return result;
}

std::vector<CriterionResult> run_measured(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(criterion_norm_agreement(seed));
  results.push_back(criterion_unit_interior_collapse(seed));
  results.push_back(criterion_unit_dominance(seed));
  results.push_back(criterion_ball_identity(seed));
  results.push_back(criterion_cauchy_equivalence(seed));
  results.push_back(criterion_fixed_point(seed));
  results.push_back(criterion_monotonicity(seed));
  results.push_back(criterion_normality(seed));
  return results;
}

}  // namespace

std::vector<CriterionResult> run_all(std::uint64_t seed) {
  std::vector<CriterionResult> results = run_measured(seed);
  const std::string first = results_to_json(results).dump();
  const std::string second = results_to_json(run_measured(seed)).dump();

  CriterionResult determinism = make_result(9, "suite-determinism");
  determinism.checks = 1;
  determinism.failures = first == second ? 0 : 1;
  determinism.pass = determinism.failures == 0;
  determinism.detail = first == second ? "two runs byte-identical" : "reports differ";
  results.push_back(std::move(determinism));
  return results;
}

Json results_to_json(const std::vector<CriterionResult>& results) {
  Json j = Json::array();
  for (const CriterionResult& r : results) {
    j.push_back(Json{{"criterion", r.id},
                     {"name", r.name},
                     {"pass", r.pass},
                     {"checks", r.checks},
                     {"failures", r.failures},
                     {"boundary_excluded", r.boundary_excluded},
                     {"detail", r.detail}});
  }
  return j;
}

bool all_pass(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.pass; });
}

}  // namespace conemetric::suite
