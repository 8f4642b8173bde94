#include "conemetric/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace conemetric {
namespace {

// Smallest window start covering all violating pairs, given the latest
// violation index. Pairs (n, m) with n < m violate a window iff n >= k.
CauchyVerdict verdict_from_scan(std::optional<std::pair<std::size_t, std::size_t>> latest,
                                std::size_t latest_n, std::size_t window_limit) {
  CauchyVerdict v;
  if (!latest) {
    v.certified = true;
    v.k = 0;
    return v;
  }
  const std::size_t k = latest_n + 1;
  if (k <= window_limit) {
    v.certified = true;
    v.k = k;
  } else {
    v.certified = false;
    v.witness = latest;
  }
  return v;
}

}  // namespace

SequencePrefix::SequencePrefix(ConeMetric metric, std::vector<std::size_t> points)
    : metric_(std::make_shared<const ConeMetric>(std::move(metric))),
      points_(std::move(points)) {
  if (points_.size() < 2) {
    throw std::invalid_argument("SequencePrefix: need at least two entries");
  }
  for (std::size_t p : points_) {
    if (p >= metric_->size()) {
      throw std::invalid_argument("SequencePrefix: entry outside the metric domain");
    }
  }
}

CauchyVerdict is_unit_cauchy(const SequencePrefix& s, const Vector& u, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("is_unit_cauchy: eps must be positive");
  const ConeMetric& m = s.metric();
  const Cone& cone = m.space().cone();
  if (!is_order_unit(cone, u, m.space().tol())) {
    throw std::invalid_argument("is_unit_cauchy: u is not an order unit");
  }

  const std::size_t n = s.length();
  std::optional<std::pair<std::size_t, std::size_t>> latest;
  std::size_t latest_n = 0;
  const Vector radius = eps * u;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Vector d = m.dist(s.points()[a], s.points()[b]);
      if (!is_order_unit(cone, Vector(radius - d), m.space().tol())) {
        latest = std::make_pair(a, b);
        latest_n = a;
      }
    }
  }
  // a certificate must leave at least one pair in the window
  return verdict_from_scan(latest, latest_n, n - 2);
}

LadderReport unit_cauchy_ladder(const SequencePrefix& s,
                                const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw std::invalid_argument("unit_cauchy_ladder: empty eps list");
  const OrderUnitSpace& space = s.metric().space();
  const Vector& e = space.unit();

  // a secondary unit: e plus a cone element, so always another order unit
  const Vector secondary_unit = 1.5 * e + 0.5 * canonical_unit(space.cone());
  const double rho = max_scale_below(space, secondary_unit);  // rho*e <= u'
  internal_check(rho > 0.0, "unit_cauchy_ladder: secondary unit has no positive scale");
  OrderUnitSpace secondary_space(space.cone(), secondary_unit, space.tol());
  const double back = max_scale_below(secondary_space, e);  // back*u' <= e

  LadderReport report;
  for (double eps : eps_list) {
    LadderEntry entry;
    entry.eps = eps;
    entry.verdict = is_unit_cauchy(s, e, eps);
    entry.secondary_eps = eps / rho;
    entry.secondary = is_unit_cauchy(s, secondary_unit, entry.secondary_eps);
    // certificate transfer: d <<< eps*e implies d <<< (eps/rho)*u'
    if (entry.verdict.certified) {
      internal_check(entry.secondary.certified && entry.secondary.k <= entry.verdict.k,
                     "unit_cauchy_ladder: certificate did not transfer to the secondary unit");
    }
    // and back: d <<< (eps/rho)*u' implies d <<< (eps/(rho*back))*e
    if (entry.secondary.certified) {
      const CauchyVerdict round_trip = is_unit_cauchy(s, e, entry.secondary_eps / back);
      internal_check(round_trip.certified,
                     "unit_cauchy_ladder: secondary certificate did not transfer back");
    }
    report.all_certified = report.all_certified && entry.verdict.certified;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

CauchyVerdict unit_converges(const SequencePrefix& s, std::size_t x, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("unit_converges: eps must be positive");
  const ConeMetric& m = s.metric();
  if (x >= m.size()) throw std::invalid_argument("unit_converges: x outside the domain");
  const Cone& cone = m.space().cone();
  const Vector radius = eps * m.space().unit();

  const std::size_t n = s.length();
  std::optional<std::size_t> latest;
  for (std::size_t a = 0; a < n; ++a) {
    const Vector d = m.dist(s.points()[a], x);
    if (!is_order_unit(cone, Vector(radius - d), m.space().tol())) latest = a;
  }
  CauchyVerdict direct;
  if (!latest) {
    direct.certified = true;
    direct.k = 0;
  } else if (*latest + 1 <= n - 1) {
    direct.certified = true;
    direct.k = *latest + 1;
  } else {
    direct.certified = false;
    direct.witness = std::make_pair(*latest, *latest);
  }

  // ball formulation: x_n must eventually stay inside unit_ball(x, eps*e)
  const std::vector<std::size_t> ball = unit_ball(m, x, radius);
  std::optional<std::size_t> latest_ball;
  for (std::size_t a = 0; a < n; ++a) {
    if (!std::binary_search(ball.begin(), ball.end(), s.points()[a])) latest_ball = a;
  }
  const bool ball_certified = !latest_ball || *latest_ball + 1 <= n - 1;
  const std::size_t ball_k = latest_ball ? *latest_ball + 1 : 0;
  internal_check(ball_certified == direct.certified &&
                     (!direct.certified || ball_k == direct.k),
                 "unit_converges: dominance and ball formulations disagree");
  return direct;
}

CauchyVerdict scalar_cauchy(const SequencePrefix& s, const ScalarizedMetric& sm,
                            double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("scalar_cauchy: eps must be positive");
  if (sm.size() != s.metric().size()) {
    throw std::invalid_argument("scalar_cauchy: scalarization does not match the metric domain");
  }
  const std::size_t n = s.length();
  std::optional<std::pair<std::size_t, std::size_t>> latest;
  std::size_t latest_n = 0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!(sm.value(s.points()[a], s.points()[b]) < eps)) {
        latest = std::make_pair(a, b);
        latest_n = a;
      }
    }
  }
  return verdict_from_scan(latest, latest_n, n - 2);
}

CauchyVerdict scalar_cauchy(const SequencePrefix& s, double eps) {
  return scalar_cauchy(s, scalarize(s.metric()), eps);
}

CauchyEquivalenceReport cauchy_equivalence_check(const SequencePrefix& s, double eps,
                                                 double band) {
  if (!(eps > 0.0)) throw std::invalid_argument("cauchy_equivalence_check: eps must be positive");
  const ScalarizedMetric sm = scalarize(s.metric());

  CauchyEquivalenceReport report;
  report.eps = eps;
  report.unit_verdict = is_unit_cauchy(s, s.metric().space().unit(), eps);
  report.scalar_verdict = scalar_cauchy(s, sm, eps);

  const std::size_t n = s.length();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (std::abs(sm.value(s.points()[a], s.points()[b]) - eps) < band * eps) {
        report.boundary_pairs += 1;
      }
    }
  }
  report.equivalent =
      report.unit_verdict.certified == report.scalar_verdict.certified &&
      (!report.unit_verdict.certified || report.unit_verdict.k == report.scalar_verdict.k);

  // threshold arithmetic at mu = 2: eps' = (mu-1)/mu = 1/2 and
  // eps'^2 = ((mu-1)/mu) * eps' = 1/4
  const double mu = 2.0;
  const double eps_mu = (mu - 1.0) / mu;
  report.ratio_identity_ok = (eps_mu * eps_mu == ((mu - 1.0) / mu) * eps_mu) &&
                             (eps_mu * eps_mu == 0.25);
  return report;
}

namespace {

SequencePrefix coordinate_sequence(const OrderUnitSpace& space,
                                   const std::vector<double>& coords,
                                   std::vector<std::size_t> visits) {
  std::vector<Point> points;
  points.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    Vector c(1);
    c[0] = coords[i];
    points.push_back(Point{"p" + std::to_string(i), c});
  }
  // scaling direction e makes the scalar distance equal the coordinate gap
  ConeMetric metric = ConeMetric::ScaledScalar(space, std::move(points), space.unit(),
                                               ScalarMetric{ScalarMetricKind::Euclidean, 1.0});
  return SequencePrefix(std::move(metric), std::move(visits));
}

}  // namespace

SequencePrefix make_orbit_sequence(const OrderUnitSpace& space, double ratio,
                                   double x0, std::size_t n) {
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    throw std::invalid_argument("make_orbit_sequence: ratio must lie in (0, 1)");
  }
  if (x0 == 0.0) throw std::invalid_argument("make_orbit_sequence: x0 must be nonzero");
  if (n < 2) throw std::invalid_argument("make_orbit_sequence: need n >= 2");
  std::vector<double> coords(n);
  std::vector<std::size_t> visits(n);
  double x = x0;
  for (std::size_t i = 0; i < n; ++i) {
    coords[i] = x;
    visits[i] = i;
    x *= ratio;
  }
  return coordinate_sequence(space, coords, std::move(visits));
}

SequencePrefix make_alternating_sequence(const OrderUnitSpace& space, double gap,
                                         std::size_t n) {
  if (!(gap > 0.0)) throw std::invalid_argument("make_alternating_sequence: gap must be positive");
  if (n < 2) throw std::invalid_argument("make_alternating_sequence: need n >= 2");
  std::vector<std::size_t> visits(n);
  for (std::size_t i = 0; i < n; ++i) visits[i] = i % 2;
  return coordinate_sequence(space, {0.0, gap}, std::move(visits));
}

SequencePrefix make_noisy_orbit_sequence(const OrderUnitSpace& space, double ratio,
                                         double x0, double noise,
                                         std::uint64_t seed, std::size_t n) {
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    throw std::invalid_argument("make_noisy_orbit_sequence: ratio must lie in (0, 1)");
  }
  if (n < 2) throw std::invalid_argument("make_noisy_orbit_sequence: need n >= 2");
  Rng rng(seed);
  const double decay = 0.9 * ratio;
  std::vector<double> coords(n);
  std::vector<std::size_t> visits(n);
  double base = x0, wobble = noise;
  for (std::size_t i = 0; i < n; ++i) {
    coords[i] = base + wobble * rng.normal();
    visits[i] = i;
    base *= ratio;
    wobble *= decay;
  }
  return coordinate_sequence(space, coords, std::move(visits));
}

}  // namespace conemetric
