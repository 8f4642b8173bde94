#pragma once

#include <cstdint>
#include <vector>

#include "conemetric/cones.hpp"
#include "conemetric/types.hpp"

namespace conemetric {

// A cone together with a validated order unit e. Carries the gauge norm of
// the order interval [-e, e] and its dual-functional counterpart.
class OrderUnitSpace {
 public:
  OrderUnitSpace(Cone cone, Vector unit, double tol = 1e-9);

  const Cone& cone() const { return cone_; }
  const Vector& unit() const { return unit_; }
  double tol() const { return tol_; }

 private:
  Cone cone_;
  Vector unit_;
  double tol_;
};

// Minkowski gauge of [-e, e]: the least lambda >= 0 with lambda*e - x and
// lambda*e + x both in the cone, computed by doubling an upper bracket and
// bisecting. Returns exactly 0 for x = 0 and exactly 1 for x = e.
double gauge_norm(const OrderUnitSpace& space, const Vector& x,
                  double rel_tol = 1e-12);

// Supremum of |f(x)| over the states f (dual vectors with f(e) = 1),
// evaluated through the family-specific closed forms of dual_sup. Agrees
// with gauge_norm up to the bisection tolerance.
double dual_norm(const OrderUnitSpace& space, const Vector& x);

// <f, x>: the evaluation of x against the functional f.
double functional_value(const Vector& x, const Vector& f);

struct StateSample {
  std::vector<Vector> functionals;  // dual vectors with <f, e> = 1
  std::uint64_t seed = 0;
  int count = 0;
};

// Seeded finite sample of the state space: convex combinations of the
// normalized extreme functionals for Orthant/Polyhedral cones, normalized
// boundary and interior dual points for Lorentz/Psd. Deterministic in seed.
StateSample sample_states(const OrderUnitSpace& space, int count,
                          std::uint64_t seed);

// True iff x < r*e for some r < 1, equivalently iff e - x is an order unit.
// Both characterizations are evaluated and must agree.
bool strictly_dominated_by_unit(const OrderUnitSpace& space, const Vector& x);

}  // namespace conemetric
