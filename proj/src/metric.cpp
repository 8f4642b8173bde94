#include "conemetric/metric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace conemetric {
namespace {

void check_point_index(const ConeMetric& m, std::size_t i, const char* what) {
  if (i >= m.size()) {
    throw std::invalid_argument(std::string(what) + ": point index out of range");
  }
}

void check_unique_ids(const std::vector<Point>& points) {
  std::set<std::string> seen;
  for (const Point& p : points) {
    if (p.id.empty()) throw std::invalid_argument("point id must be nonempty");
    if (!seen.insert(p.id).second) {
      throw std::invalid_argument("duplicate point id: " + p.id);
    }
  }
}

void check_coords_present_and_distinct(const std::vector<Point>& points) {
  for (const Point& p : points) {
    if (!p.coords) {
      throw std::invalid_argument("point " + p.id + " needs coordinates for this metric family");
    }
    require_finite(*p.coords, "point coords");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i].coords->size() != points[j].coords->size()) {
        throw std::invalid_argument("point coordinate dimensions differ");
      }
      if (*points[i].coords == *points[j].coords) {
        throw std::invalid_argument("points " + points[i].id + " and " + points[j].id +
                                    " share coordinates; identity axiom would fail");
      }
    }
  }
}

}  // namespace

double ScalarMetric::operator()(const Vector& a, const Vector& b) const {
  switch (kind) {
    case ScalarMetricKind::Euclidean:
      return weight * (a - b).norm();
    case ScalarMetricKind::Manhattan:
      return weight * (a - b).lpNorm<1>();
    case ScalarMetricKind::Chebyshev:
      return weight * (a - b).lpNorm<Eigen::Infinity>();
    case ScalarMetricKind::Discrete:
      return a == b ? 0.0 : weight;
  }
  throw std::logic_error("ScalarMetric: unknown kind");
}

ConeMetric::ConeMetric(MetricFamily family, OrderUnitSpace space,
                       std::vector<Point> points)
    : family_(family), space_(std::move(space)), points_(std::move(points)) {
  if (points_.empty()) throw std::invalid_argument("metric domain must be nonempty");
  check_unique_ids(points_);
}

ConeMetric ConeMetric::Discrete(OrderUnitSpace space, std::vector<Point> points,
                                Vector c) {
  if (c.size() != space.cone().ambient_dim()) {
    throw std::invalid_argument("Discrete: c has wrong dimension");
  }
  if (!interior_contains(space.cone(), c, 0.0)) {
    throw std::invalid_argument("Discrete: c must lie in the cone interior");
  }
  ConeMetric m(MetricFamily::Discrete, std::move(space), std::move(points));
  m.direction_ = std::move(c);
  m.by_construction_ = true;
  return m;
}

ConeMetric ConeMetric::ScaledScalar(OrderUnitSpace space, std::vector<Point> points,
                                    Vector c, ScalarMetric rho) {
  if (c.size() != space.cone().ambient_dim()) {
    throw std::invalid_argument("ScaledScalar: c has wrong dimension");
  }
  if (c.isZero(0.0) || !contains(space.cone(), c, 0.0)) {
    throw std::invalid_argument("ScaledScalar: c must be a nonzero cone member");
  }
  if (!(rho.weight > 0.0)) throw std::invalid_argument("ScaledScalar: weight must be positive");
  check_coords_present_and_distinct(points);
  ConeMetric m(MetricFamily::ScaledScalar, std::move(space), std::move(points));
  m.direction_ = std::move(c);
  m.rho_ = rho;
  m.by_construction_ = true;
  return m;
}

ConeMetric ConeMetric::Componentwise(OrderUnitSpace space, std::vector<Point> points,
                                     std::vector<ScalarMetric> rhos) {
  if (static_cast<Index>(rhos.size()) != space.cone().ambient_dim()) {
    throw std::invalid_argument("Componentwise: need one scalar metric per ambient coordinate");
  }
  for (const ScalarMetric& r : rhos) {
    if (!(r.weight > 0.0)) throw std::invalid_argument("Componentwise: weights must be positive");
  }
  check_coords_present_and_distinct(points);
  const bool orthant = space.cone().family() == ConeFamily::Orthant;
  ConeMetric m(MetricFamily::Componentwise, std::move(space), std::move(points));
  m.rhos_ = std::move(rhos);
  // componentwise triangle inequalities only certify the cone order on the
  // orthant; other families go through verify_axioms
  m.by_construction_ = orthant;
  return m;
}

ConeMetric ConeMetric::Table(OrderUnitSpace space, std::vector<Point> points,
                             std::vector<Vector> values) {
  const std::size_t n = points.size();
  if (values.size() != n * n) {
    throw std::invalid_argument("Table: need size*size distance entries");
  }
  for (const Vector& v : values) {
    if (v.size() != space.cone().ambient_dim()) {
      throw std::invalid_argument("Table: entry has wrong dimension");
    }
    require_finite(v, "Table entry");
  }
  ConeMetric m(MetricFamily::Table, std::move(space), std::move(points));
  m.table_ = std::move(values);
  return m;
}

std::size_t ConeMetric::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].id == id) return i;
  }
  throw std::invalid_argument("unknown point id: " + id);
}

const Vector& ConeMetric::coords_of(std::size_t i) const {
  if (!points_[i].coords) {
    throw std::logic_error("point " + points_[i].id + " has no coordinates");
  }
  return *points_[i].coords;
}

Vector ConeMetric::dist(std::size_t i, std::size_t j) const {
  check_point_index(*this, i, "dist");
  check_point_index(*this, j, "dist");
  switch (family_) {
    case MetricFamily::Discrete:
      return i == j ? Vector(Vector::Zero(space_.cone().ambient_dim())) : direction_;
    case MetricFamily::ScaledScalar:
      return rho_(coords_of(i), coords_of(j)) * direction_;
    case MetricFamily::Componentwise: {
      Vector d(rhos_.size());
      for (std::size_t k = 0; k < rhos_.size(); ++k) {
        d[static_cast<Index>(k)] = rhos_[k](coords_of(i), coords_of(j));
      }
      return d;
    }
    case MetricFamily::Table:
      return table_[i * size() + j];
  }
  throw std::logic_error("dist: unknown family");
}

const Vector& ConeMetric::direction() const {
  if (family_ != MetricFamily::Discrete && family_ != MetricFamily::ScaledScalar) {
    throw std::logic_error("direction: wrong metric family");
  }
  return direction_;
}

const ScalarMetric& ConeMetric::rho() const {
  if (family_ != MetricFamily::ScaledScalar) throw std::logic_error("rho: wrong metric family");
  return rho_;
}

const std::vector<ScalarMetric>& ConeMetric::rhos() const {
  if (family_ != MetricFamily::Componentwise) throw std::logic_error("rhos: wrong metric family");
  return rhos_;
}

const std::vector<Vector>& ConeMetric::table() const {
  if (family_ != MetricFamily::Table) throw std::logic_error("table: wrong metric family");
  return table_;
}

AxiomReport verify_axioms(const ConeMetric& m, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("verify_axioms: tol must be nonnegative");
  const std::size_t n = m.size();
  const Cone& cone = m.space().cone();
  AxiomReport report;

  for (std::size_t i = 0; i < n; ++i) {
    if (m.dist(i, i).norm() > tol) {
      report.violations.push_back({"identity", {i, i}});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      report.pair_checks += 1;
      const Vector dij = m.dist(i, j);
      if (dij.norm() <= tol) report.violations.push_back({"identity", {i, j}});
      if (!contains(cone, dij, tol)) report.violations.push_back({"nonnegativity", {i, j}});
      if ((dij - m.dist(j, i)).lpNorm<Eigen::Infinity>() > tol) {
        report.violations.push_back({"symmetry", {i, j}});
      }
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const Vector dxy = m.dist(x, y);
      for (std::size_t z = 0; z < n; ++z) {
        report.triple_checks += 1;
        if (!contains(cone, Vector(m.dist(x, z) + m.dist(y, z) - dxy), tol)) {
          report.violations.push_back({"triangle", {x, y, z}});
        }
      }
    }
  }
  return report;
}

ScalarizedMetric::ScalarizedMetric(ConeMetric source, Matrix values)
    : source_(std::move(source)), values_(std::move(values)) {
  internal_check(values_.rows() == values_.cols() &&
                     values_.rows() == static_cast<Index>(source_.size()),
                 "ScalarizedMetric: value matrix shape mismatch");
}

ScalarizedMetric scalarize(const ConeMetric& m, double gauge_rel_tol) {
  if (!m.axioms_hold_by_construction()) {
    const AxiomReport report = verify_axioms(m, 1e-9);
    if (!report.pass()) {
      throw std::invalid_argument("scalarize: metric fails the cone-metric axioms (" +
                                  std::to_string(report.violations.size()) + " violations)");
    }
  }

  const std::size_t n = m.size();
  Matrix values(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    values(i, i) = gauge_norm(m.space(), m.dist(i, i), gauge_rel_tol);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = gauge_norm(m.space(), m.dist(i, j), gauge_rel_tol);
      values(i, j) = values(j, i) = v;
    }
  }

  // the induced values must form a scalar metric; the cone triangle plus
  // monotonicity and subadditivity of the gauge guarantee it
  constexpr double kTol = 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    internal_check(values(i, i) <= kTol, "scalarize: nonzero self-distance");
    for (std::size_t j = i + 1; j < n; ++j) {
      internal_check(values(i, j) > 0.0, "scalarize: distinct points at scalar distance 0");
      for (std::size_t k = 0; k < n; ++k) {
        internal_check(values(i, j) <= values(i, k) + values(j, k) + kTol,
                       "scalarize: scalar triangle inequality failed");
      }
    }
  }
  return ScalarizedMetric(m, std::move(values));
}

std::vector<std::size_t> unit_ball(const ConeMetric& m, std::size_t x, const Vector& u) {
  check_point_index(m, x, "unit_ball");
  const Cone& cone = m.space().cone();
  if (!is_order_unit(cone, u, m.space().tol())) {
    throw std::invalid_argument("unit_ball: radius u is not an order unit");
  }
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < m.size(); ++y) {
    if (is_order_unit(cone, Vector(u - m.dist(x, y)), m.space().tol())) {
      members.push_back(y);
    }
  }
  return members;
}

std::vector<std::size_t> scalar_ball(const ScalarizedMetric& s, std::size_t x, double r) {
  if (x >= s.size()) throw std::invalid_argument("scalar_ball: point index out of range");
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("scalar_ball: radius must be positive and finite");
  }
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < s.size(); ++y) {
    if (s.value(x, y) < r) members.push_back(y);
  }
  return members;
}

BallIdentityReport ball_identity_check(const ConeMetric& m, const ScalarizedMetric& s,
                                       std::size_t x, double mu, double band) {
  check_point_index(m, x, "ball_identity_check");
  if (!(mu > 0.0)) throw std::invalid_argument("ball_identity_check: mu must be positive");

  const Vector radius = mu * m.space().unit();
  const std::vector<std::size_t> in_unit = unit_ball(m, x, radius);
  const std::vector<std::size_t> in_scalar = scalar_ball(s, x, mu);

  BallIdentityReport report;
  report.mu = mu;
  for (std::size_t y = 0; y < m.size(); ++y) {
    if (std::abs(s.value(x, y) - mu) < band * mu) {
      report.boundary_excluded += 1;
      continue;
    }
    report.compared += 1;
    const bool a = std::binary_search(in_unit.begin(), in_unit.end(), y);
    const bool b = std::binary_search(in_scalar.begin(), in_scalar.end(), y);
    if (a != b) report.mismatches.push_back({y, a, b});
  }
  return report;
}

BallIdentityReport ball_identity_check(const ConeMetric& m, std::size_t x, double mu,
                                       double band) {
  return ball_identity_check(m, scalarize(m), x, mu, band);
}

int ball_cover_index(const ConeMetric& m, const ScalarizedMetric& s, std::size_t x,
                     double r) {
  check_point_index(m, x, "ball_cover_index");
  if (!(r > 0.0)) throw std::invalid_argument("ball_cover_index: r must be positive");

  const int bound = static_cast<int>(std::floor(1.0 / r)) + 1;
  const std::vector<std::size_t> target = scalar_ball(s, x, r);
  for (int k = 1;; ++k) {
    const Vector radius = m.space().unit() / static_cast<double>(k);
    const std::vector<std::size_t> small = unit_ball(m, x, radius);
    const bool included = std::includes(target.begin(), target.end(), small.begin(), small.end());
    if (included) {
      internal_check(k <= bound, "ball_cover_index: exceeded the floor(1/r)+1 bound");
      return k;
    }
    internal_check(k <= bound, "ball_cover_index: exceeded the floor(1/r)+1 bound");
  }
}

BasisReport basis_check(const ConeMetric& m, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("basis_check: trials must be >= 1");
  const OrderUnitSpace& space = m.space();
  const Cone& cone = space.cone();
  const Vector& e = space.unit();

  Rng rng(seed);
  BasisReport report;
  report.trials = trials;

  const auto random_unit = [&]() {
    const double a = rng.uniform(0.5, 2.0);
    Vector u = a * e + rng.uniform(0.0, 0.5) * sample_cone_point(cone, rng);
    internal_check(is_order_unit(cone, u, space.tol()), "basis_check: built a non-unit radius");
    return u;
  };

  for (int t = 0; t < trials; ++t) {
    const std::size_t x1 = rng.integer(m.size());
    const std::size_t x2 = rng.integer(m.size());
    const std::vector<std::size_t> b1 = unit_ball(m, x1, random_unit());
    const std::vector<std::size_t> b2 = unit_ball(m, x2, random_unit());
    std::vector<std::size_t> both;
    std::set_intersection(b1.begin(), b1.end(), b2.begin(), b2.end(), std::back_inserter(both));

    for (std::size_t y : both) {
      report.intersection_points += 1;
      bool found = false;
      for (int j = 0; j <= 46 && !found; ++j) {
        const std::vector<std::size_t> inner = unit_ball(m, y, Vector(std::ldexp(1.0, -j) * e));
        found = std::includes(b1.begin(), b1.end(), inner.begin(), inner.end()) &&
                std::includes(b2.begin(), b2.end(), inner.begin(), inner.end());
      }
      if (!found) {
        report.failures.push_back("no dyadic ball around point " + m.point(y).id +
                                  " fits inside the sampled intersection");
      }
    }

    // every unit u admits r > 0 with r*e below u, so the (r/2)e-ball nests
    report.unit_scale_checks += 1;
    const Vector u = random_unit();
    const double r_star = max_scale_below(space, u);
    if (!(r_star > 0.0)) {
      report.failures.push_back("max_scale_below returned 0 for a sampled order unit");
      continue;
    }
    const std::size_t x = rng.integer(m.size());
    const std::vector<std::size_t> inner = unit_ball(m, x, Vector(0.5 * r_star * e));
    const std::vector<std::size_t> outer = unit_ball(m, x, u);
    if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) {
      report.failures.push_back("scaled-unit ball escaped the sampled unit ball at center " +
                                m.point(x).id);
    }
  }
  return report;
}

double max_scale_below(const OrderUnitSpace& space, const Vector& u) {
  const Cone& cone = space.cone();
  if (u.size() != cone.ambient_dim()) {
    throw std::invalid_argument("max_scale_below: dimension mismatch");
  }
  require_finite(u, "max_scale_below");
  if (!contains(cone, u, space.tol())) {
    throw std::invalid_argument("max_scale_below: u must lie in the cone");
  }

  const Vector& e = space.unit();
  const auto feasible = [&](double r) { return contains(cone, Vector(u - r * e), 0.0); };
  if (!feasible(0.0)) return 0.0;  // u within membership tolerance of the boundary

  double lo = 0.0;
  double hi = 1.0;
  while (feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("max_scale_below: unbounded scale");
  }
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;  // feasible endpoint: u - lo*e is certified in the cone
}

}  // namespace conemetric
