#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "conemetric/metric.hpp"

namespace conemetric {

// A finite prefix of a sequence in the metric's domain. The Cauchy and
// convergence predicates certify this prefix only: "for all n, m >= k" is
// bounded by the prefix length, and a certificate requires the window
// starting at k to contain at least one pair.
class SequencePrefix {
 public:
  SequencePrefix(ConeMetric metric, std::vector<std::size_t> points);

  const ConeMetric& metric() const { return *metric_; }
  const std::vector<std::size_t>& points() const { return points_; }
  std::size_t length() const { return points_.size(); }

 private:
  std::shared_ptr<const ConeMetric> metric_;
  std::vector<std::size_t> points_;
};

struct CauchyVerdict {
  bool certified = false;
  std::size_t k = 0;  // smallest certifying window start when certified
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // latest bad pair
};

// True iff some window [k, N) has eps*u - d(x_n, x_m) an order unit for all
// its pairs. u must be an order unit.
CauchyVerdict is_unit_cauchy(const SequencePrefix& s, const Vector& u, double eps);

struct LadderEntry {
  double eps = 0.0;
  CauchyVerdict verdict;
  // verdict transferred to a secondary unit at the rescaled threshold
  CauchyVerdict secondary;
  double secondary_eps = 0.0;
};

struct LadderReport {
  std::vector<LadderEntry> entries;
  bool all_certified = true;
};

// Evaluates is_unit_cauchy against the space unit for every eps in the list.
// Each verdict is cross-checked against a secondary unit u' != e: a
// certificate at eps transfers to u' at eps / max_scale_below(u'), and back
// within the sandwich bound. Uncertified entries mean "undecided at this
// horizon", not a refutation.
LadderReport unit_cauchy_ladder(const SequencePrefix& s,
                                const std::vector<double>& eps_list);

// True iff x_n eventually stays in the unit ball of radius eps*e around x.
// Evaluated both by direct unit dominance and through unit_ball membership;
// the two must return the same verdict and the same minimal k.
CauchyVerdict unit_converges(const SequencePrefix& s, std::size_t x, double eps);

// True iff some window [k, N) has all pairwise scalarized distances < eps.
CauchyVerdict scalar_cauchy(const SequencePrefix& s, double eps);
CauchyVerdict scalar_cauchy(const SequencePrefix& s, const ScalarizedMetric& sm,
                            double eps);

struct CauchyEquivalenceReport {
  double eps = 0.0;
  CauchyVerdict unit_verdict;
  CauchyVerdict scalar_verdict;
  int boundary_pairs = 0;  // pairs with scalar distance inside the eps band
  bool equivalent = false;
  bool ratio_identity_ok = false;  // the mu = 2 threshold arithmetic
};

// Outside the boundary band the unit-dominance Cauchy predicate and the
// scalar Cauchy predicate are the same test; this runs both and compares.
// Also checks the mu = 2 threshold identity eps^2 = ((mu-1)/mu) * eps at
// eps = 1/2.
CauchyEquivalenceReport cauchy_equivalence_check(const SequencePrefix& s,
                                                 double eps, double band = 1e-7);

// Test-sequence generators over 1-D coordinates with scaling direction e,
// so the scalar distance between entries equals the coordinate gap exactly
// and ground-truth labels can be computed from the coordinates alone.

// x_n = x0 * ratio^n: decidably Cauchy once the tail fits the horizon.
SequencePrefix make_orbit_sequence(const OrderUnitSpace& space, double ratio,
                                   double x0, std::size_t n);

// Two points at scalar distance gap, visited alternately: decidably not
// Cauchy below gap.
SequencePrefix make_alternating_sequence(const OrderUnitSpace& space, double gap,
                                         std::size_t n);

// Orbit with seeded additive noise of faster geometric decay.
SequencePrefix make_noisy_orbit_sequence(const OrderUnitSpace& space, double ratio,
                                         double x0, double noise,
                                         std::uint64_t seed, std::size_t n);

}  // namespace conemetric
