#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "conemetric/metric.hpp"

namespace conemetric {

// A self-map of a finite cone-metric domain, expected to shrink distances in
// the cone order. If a ratio is claimed it is validated on every pair at
// construction.
class ContractionProblem {
 public:
  ContractionProblem(ConeMetric metric, std::vector<std::size_t> map,
                     std::optional<double> claimed_ratio = std::nullopt);

  const ConeMetric& metric() const { return metric_; }
  const std::vector<std::size_t>& map() const { return map_; }
  std::optional<double> claimed_ratio() const { return claimed_ratio_; }
  std::size_t apply(std::size_t i) const { return map_.at(i); }

 private:
  ConeMetric metric_;
  std::vector<std::size_t> map_;
  std::optional<double> claimed_ratio_;
};

// inf{ k >= 0 : k*u - v in K } for u, v in K, by doubling and bisection.
// nullopt when no k up to 2^60 dominates, i.e. v escapes every multiple of u.
std::optional<double> min_dominating_scale(const OrderUnitSpace& space,
                                           const Vector& u, const Vector& v);

// Largest pairwise ratio min_dominating_scale(d(x,y), d(Tx,Ty)) over the
// domain; a value below 1 certifies the cone-order contraction property.
std::optional<double> estimate_contraction(const ContractionProblem& p);

struct BanachResult {
  std::size_t fixed_point = 0;
  std::vector<std::size_t> iterates;   // starting point included
  std::vector<double> bound_trace;     // k^n/(1-k) * dbar(x0, x1) per iterate
  double contraction_ratio = 0.0;
  double residual = 0.0;               // dbar(x, T(x)) at the returned point
};

class IterationLimitError : public std::runtime_error {
 public:
  IterationLimitError(std::string what, std::size_t best, double residual)
      : std::runtime_error(std::move(what)), best_point(best), residual(residual) {}

  std::size_t best_point;
  double residual;
};

// Iterates x <- T(x) through the scalarized metric until the a-posteriori
// bound k/(1-k) * dbar(x_n, x_{n+1}) drops below tol. The returned point is
// within tol of the map's fixed point in the scalar metric.
BanachResult banach_iterate(const ContractionProblem& p, std::size_t start,
                            double tol, int max_iter);

// Sampled lower bound on the normality constant: the largest ||x|| / ||y||
// over seeded pairs 0 <= x <= y. Never claims the supremum.
double normality_constant(const Cone& cone, int samples, std::uint64_t seed);

}  // namespace conemetric
