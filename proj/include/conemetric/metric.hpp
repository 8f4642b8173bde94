#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conemetric/ordernorm.hpp"
#include "conemetric/types.hpp"

namespace conemetric {

enum class MetricFamily { Discrete, ScaledScalar, Componentwise, Table };

enum class ScalarMetricKind { Euclidean, Manhattan, Chebyshev, Discrete };

// A weighted scalar metric evaluated on point coordinates.
struct ScalarMetric {
  ScalarMetricKind kind = ScalarMetricKind::Euclidean;
  double weight = 1.0;

  double operator()(const Vector& a, const Vector& b) const;
};

struct Point {
  std::string id;
  std::optional<Vector> coords;
};

// A cone-valued distance on a finite point set. The built-in families are
// valid metrics by construction (their parameters are validated on entry);
// Table holds caller data and must pass verify_axioms before scalarization.
class ConeMetric {
 public:
  static ConeMetric Discrete(OrderUnitSpace space, std::vector<Point> points,
                             Vector c);
  static ConeMetric ScaledScalar(OrderUnitSpace space, std::vector<Point> points,
                                 Vector c, ScalarMetric rho);
  static ConeMetric Componentwise(OrderUnitSpace space, std::vector<Point> points,
                                  std::vector<ScalarMetric> rhos);
  static ConeMetric Table(OrderUnitSpace space, std::vector<Point> points,
                          std::vector<Vector> values);  // row-major size*size

  MetricFamily family() const { return family_; }
  const OrderUnitSpace& space() const { return space_; }
  std::size_t size() const { return points_.size(); }
  const Point& point(std::size_t i) const { return points_.at(i); }
  const std::vector<Point>& points() const { return points_; }
  std::size_t index_of(const std::string& id) const;

  Vector dist(std::size_t i, std::size_t j) const;

  // True when the family parameters already guarantee the metric axioms.
  bool axioms_hold_by_construction() const { return by_construction_; }

  const Vector& direction() const;                 // Discrete, ScaledScalar
  const ScalarMetric& rho() const;                 // ScaledScalar
  const std::vector<ScalarMetric>& rhos() const;   // Componentwise
  const std::vector<Vector>& table() const;        // Table

 private:
  ConeMetric(MetricFamily family, OrderUnitSpace space, std::vector<Point> points);
  const Vector& coords_of(std::size_t i) const;

  MetricFamily family_;
  OrderUnitSpace space_;
  std::vector<Point> points_;
  bool by_construction_ = false;
  Vector direction_;
  ScalarMetric rho_;
  std::vector<ScalarMetric> rhos_;
  std::vector<Vector> table_;
};

struct MetricViolation {
  std::string axiom;                // identity | symmetry | triangle | nonnegativity
  std::vector<std::size_t> points;  // witnesses
};

struct AxiomReport {
  int pair_checks = 0;
  int triple_checks = 0;
  std::vector<MetricViolation> violations;
  bool pass() const { return violations.empty(); }
};

// Checks identity, symmetry, and the cone-order triangle inequality on every
// pair and triple of the finite domain, plus cone-valued nonnegativity.
AxiomReport verify_axioms(const ConeMetric& m, double tol);

// The induced real metric values(x, y) = gauge_norm(d(x, y)).
class ScalarizedMetric {
 public:
  ScalarizedMetric(ConeMetric source, Matrix values);

  const ConeMetric& source() const { return source_; }
  std::size_t size() const { return source_.size(); }
  double value(std::size_t i, std::size_t j) const { return values_(i, j); }

 private:
  ConeMetric source_;
  Matrix values_;
};

// Scalarizes through the gauge norm. Verifies the cone-metric axioms first
// (skipped for families valid by construction) and asserts that the result
// satisfies the scalar metric axioms.
ScalarizedMetric scalarize(const ConeMetric& m, double gauge_rel_tol = 1e-12);

// { y : u - d(x, y) is an order unit }, the order-unit ball around x.
std::vector<std::size_t> unit_ball(const ConeMetric& m, std::size_t x,
                                   const Vector& u);

// { y : values(x, y) < r }.
std::vector<std::size_t> scalar_ball(const ScalarizedMetric& s, std::size_t x,
                                     double r);

struct BallMismatch {
  std::size_t point;
  bool in_unit_ball;
  bool in_scalar_ball;
};

struct BallIdentityReport {
  double mu = 0.0;
  int compared = 0;
  int boundary_excluded = 0;
  std::vector<BallMismatch> mismatches;
  bool pass() const { return mismatches.empty(); }
};

// Set identity between the unit ball of radius mu*e and the scalar ball of
// radius mu, with points whose scalar distance sits within the relative band
// of mu excluded from the comparison.
BallIdentityReport ball_identity_check(const ConeMetric& m,
                                       const ScalarizedMetric& s, std::size_t x,
                                       double mu, double band = 1e-7);
BallIdentityReport ball_identity_check(const ConeMetric& m, std::size_t x,
                                       double mu, double band = 1e-7);

// Smallest k >= 1 with unit_ball(x, e/k) contained in scalar_ball(x, r).
// Any k above 1/r must work, so the result is checked against floor(1/r)+1.
int ball_cover_index(const ConeMetric& m, const ScalarizedMetric& s,
                     std::size_t x, double r);

struct BasisReport {
  int trials = 0;
  int intersection_points = 0;
  int unit_scale_checks = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// Samples pairs of unit balls and checks that every intersection point has a
// dyadic-radius ball inside the intersection, and that for sampled units u
// the ball of radius (r*/2)e with r* = max_scale_below(u) sits inside the
// ball of radius u.
BasisReport basis_check(const ConeMetric& m, int trials, std::uint64_t seed);

// sup{ r >= 0 : u - r*e in K } for u in K, by bracketing and bisection.
// Strictly positive exactly when u is an order unit; 0 on the boundary.
double max_scale_below(const OrderUnitSpace& space, const Vector& u);

}  // namespace conemetric
