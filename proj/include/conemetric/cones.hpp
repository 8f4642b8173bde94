#pragma once

#include <cstdint>
#include <vector>

#include "conemetric/rng.hpp"
#include "conemetric/types.hpp"

namespace conemetric {

enum class ConeFamily { Orthant, Lorentz, Psd, Polyhedral };

// A closed pointed convex cone in R^n, one of four concrete families:
//
//   Orthant(n)      x_i >= 0 for all i
//   Lorentz(n)      x_1 >= ||x_2..x_n||_2, n >= 2
//   Psd(k)          unpack(x) positive semidefinite; ambient dim k(k+1)/2
//   Polyhedral(F)   <f_i, x> >= 0 for every row f_i of F, F full column rank
//
// Symmetric matrices are stored as the packed upper triangle, row by row,
// with off-diagonal entries scaled by sqrt(2). The packed Euclidean inner
// product then equals the trace inner product, which makes the PSD cone
// self-dual in packed coordinates.
class Cone {
 public:
  static Cone Orthant(Index n);
  static Cone Lorentz(Index n);
  static Cone Psd(Index side);
  static Cone Polyhedral(Matrix dual_generators);

  ConeFamily family() const { return family_; }
  Index ambient_dim() const { return ambient_; }

  // Side length k of the matrices represented by Psd cones.
  Index psd_side() const;

  // Rows are the functionals f_i of the H-representation. Polyhedral only.
  const Matrix& dual_generators() const;
  const Vector& dual_generator_norms() const;

 private:
  Cone(ConeFamily family, Index ambient) : family_(family), ambient_(ambient) {}

  ConeFamily family_;
  Index ambient_;
  Matrix dual_gens_;       // Polyhedral only
  Vector dual_gen_norms_;  // row norms of dual_gens_
};

Index packed_dim(Index side);
Index side_for_packed_dim(Index packed);
Vector pack_symmetric(const Matrix& m);
Matrix unpack_symmetric(const Vector& v, Index side);

// Family-normalized slack of x relative to the cone: nonnegative on K,
// strictly positive on the interior. Orthant: min coordinate; Lorentz:
// x_1 - ||tail||; Psd: smallest eigenvalue; Polyhedral: min_i <f_i,x>/||f_i||.
double membership_margin(const Cone& cone, const Vector& x);

bool contains(const Cone& cone, const Vector& x, double tol);
bool interior_contains(const Cone& cone, const Vector& x, double tol);

// True iff e lies in the interior of the cone, which for these closed
// finite-dimensional cones is the same as e dominating every vector up to a
// positive multiple. For Polyhedral cones the equivalent dual-side test
// min_i <f_i,e> > tol*||f_i|| is evaluated as well and both must agree.
bool is_order_unit(const Cone& cone, const Vector& e, double tol);

// sup{ f(x) : f in the dual cone, f(e) = 1 } for an order unit e.
double dual_sup(const Cone& cone, const Vector& e, const Vector& x);

// A validated order unit with O(1) interior margin. For Polyhedral cones an
// interior direction is computed from the generators; throws if the cone has
// empty interior (and hence no order units).
Vector canonical_unit(const Cone& cone);

// Seeded sample of a cone member, mixing interior and boundary points.
Vector sample_cone_point(const Cone& cone, Rng& rng);

struct ArchimedeanViolation {
  Vector y;
  Vector x;
  double positive_margin;  // how far y sits outside -K
};

struct ArchimedeanReport {
  int samples = 0;
  // pairs (y, x) with y not <= 0 whose domination n*y <= x survived the
  // requested horizon n_max
  int dominated_prefixes = 0;
  // pairs still dominated after extending the horizon to ~2^41; empty for
  // every closed cone
  std::vector<ArchimedeanViolation> violations;
};

// Samples pairs (y, x) with x in K and looks for order-unbounded domination
// n*y <= x with y not below zero, the pattern a closed cone cannot admit.
ArchimedeanReport archimedean_spot_check(const Cone& cone, int sample_count,
                                         int n_max, std::uint64_t seed);

}  // namespace conemetric
