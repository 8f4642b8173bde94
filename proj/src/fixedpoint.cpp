#include "conemetric/fixedpoint.hpp"

#include <algorithm>
#include <cmath>

namespace conemetric {

ContractionProblem::ContractionProblem(ConeMetric metric, std::vector<std::size_t> map,
                                       std::optional<double> claimed_ratio)
    : metric_(std::move(metric)), map_(std::move(map)), claimed_ratio_(claimed_ratio) {
  if (map_.size() != metric_.size()) {
    throw std::invalid_argument("ContractionProblem: map size must match the domain");
  }
  for (std::size_t image : map_) {
    if (image >= metric_.size()) {
      throw std::invalid_argument("ContractionProblem: map leaves the domain");
    }
  }
  if (claimed_ratio_) {
    if (!(*claimed_ratio_ >= 0.0) || !(*claimed_ratio_ < 1.0)) {
      throw std::invalid_argument("ContractionProblem: claimed ratio must lie in [0, 1)");
    }
    const Cone& cone = metric_.space().cone();
    for (std::size_t i = 0; i < metric_.size(); ++i) {
      for (std::size_t j = i + 1; j < metric_.size(); ++j) {
        const Vector gap =
            *claimed_ratio_ * metric_.dist(i, j) - metric_.dist(map_[i], map_[j]);
        if (!contains(cone, gap, 1e-9)) {
          throw std::invalid_argument(
              "ContractionProblem: claimed ratio fails on pair (" +
              metric_.point(i).id + ", " + metric_.point(j).id + ")");
        }
      }
    }
  }
}

std::optional<double> min_dominating_scale(const OrderUnitSpace& space,
                                           const Vector& u, const Vector& v) {
  const Cone& cone = space.cone();
  if (!contains(cone, u, space.tol()) || !contains(cone, v, space.tol())) {
    throw std::invalid_argument("min_dominating_scale: u and v must lie in the cone");
  }
  if (v.isZero(0.0)) return 0.0;

  const auto feasible = [&](double k) { return contains(cone, Vector(k * u - v), 0.0); };
  if (feasible(0.0)) return 0.0;

  constexpr double kCap = 1152921504606846976.0;  // 2^60
  double hi = 1.0;
  int doublings = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (hi > kCap) return std::nullopt;
    ++doublings;
  }
  double lo = doublings == 0 ? 0.0 : hi / 2.0;
  while (hi - lo > 1e-12 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

std::optional<double> estimate_contraction(const ContractionProblem& p) {
  const ConeMetric& m = p.metric();
  if (m.size() < 2) {
    throw std::invalid_argument("estimate_contraction: need at least two points");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const std::optional<double> scale = min_dominating_scale(
          m.space(), m.dist(i, j), m.dist(p.apply(i), p.apply(j)));
      if (!scale) return std::nullopt;
      worst = std::max(worst, *scale);
    }
  }
  return worst;
}

BanachResult banach_iterate(const ContractionProblem& p, std::size_t start,
                            double tol, int max_iter) {
  const ConeMetric& m = p.metric();
  if (start >= m.size()) throw std::invalid_argument("banach_iterate: start outside domain");
  if (!(tol > 0.0)) throw std::invalid_argument("banach_iterate: tol must be positive");
  if (max_iter < 1) throw std::invalid_argument("banach_iterate: max_iter must be >= 1");

  const std::optional<double> estimated = estimate_contraction(p);
  const double k = p.claimed_ratio() ? *p.claimed_ratio() : estimated.value_or(1.0);
  if (!estimated || !(k < 1.0)) {
    throw std::runtime_error("banach_iterate: the map is not a cone-order contraction");
  }

  const ScalarizedMetric sm = scalarize(m);
  // a-posteriori rule: dbar(x_n, x*) <= k/(1-k) * dbar(x_n, x_{n+1})
  const double threshold = tol * (1.0 - k) / std::max(k, 1e-300);

  BanachResult result;
  result.contraction_ratio = k;
  result.iterates.push_back(start);

  std::size_t current = start;
  double first_step = 0.0;
  for (int n = 0; n < max_iter; ++n) {
    const std::size_t next = p.apply(current);
    if (next == current) {  // already a fixed point of the map
      if (n == 0) result.bound_trace.push_back(0.0);
      result.fixed_point = current;
      result.residual = 0.0;
      return result;
    }
    const double step = sm.value(current, next);
    if (n == 0) {
      first_step = step;
      result.bound_trace.push_back(first_step / (1.0 - k));
    }
    result.iterates.push_back(next);
    result.bound_trace.push_back(std::pow(k, n + 1) / (1.0 - k) * first_step);
    if (step < threshold) {
      result.fixed_point = next;
      result.residual = sm.value(next, p.apply(next));
      return result;
    }
    current = next;
  }
  throw IterationLimitError("banach_iterate: iteration limit reached", current,
                            sm.value(current, p.apply(current)));
}

double normality_constant(const Cone& cone, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("normality_constant: samples must be >= 1");
  Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Vector x = sample_cone_point(cone, rng);
    const Vector w = rng.uniform() < 0.05
                         ? Vector(Vector::Zero(cone.ambient_dim()))
                         : sample_cone_point(cone, rng);
    const Vector y = x + w;
    const double ynorm = y.norm();
    if (ynorm == 0.0) continue;  // x = w = 0 by pointedness
    worst = std::max(worst, x.norm() / ynorm);
  }
  return worst;
}

}  // namespace conemetric
