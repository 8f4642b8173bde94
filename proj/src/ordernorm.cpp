#include "conemetric/ordernorm.hpp"

#include <algorithm>
#include <cmath>

namespace conemetric {
namespace {

void check_dims(const OrderUnitSpace& space, const Vector& x, const char* what) {
  if (x.size() != space.cone().ambient_dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
  require_finite(x, what);
}

}  // namespace

OrderUnitSpace::OrderUnitSpace(Cone cone, Vector unit, double tol)
    : cone_(std::move(cone)), unit_(std::move(unit)), tol_(tol) {
  if (!(tol_ >= 0.0)) throw std::invalid_argument("OrderUnitSpace: tol must be nonnegative");
  if (!is_order_unit(cone_, unit_, tol_)) {
    throw std::invalid_argument("OrderUnitSpace: e is not an order unit of the cone");
  }
}

double gauge_norm(const OrderUnitSpace& space, const Vector& x, double rel_tol) {
  check_dims(space, x, "gauge_norm");
  if (!(rel_tol > 0.0)) throw std::invalid_argument("gauge_norm: rel_tol must be positive");
  if (x.isZero(0.0)) return 0.0;

  const Cone& cone = space.cone();
  const Vector& e = space.unit();
  const auto feasible = [&](double lambda) {
    return contains(cone, lambda * e - x, 0.0) && contains(cone, lambda * e + x, 0.0);
  };

  double hi = 1.0;
  int doublings = 0;
  while (!feasible(hi)) {
    hi *= 2.0;
    if (++doublings > 200) {
      throw std::runtime_error(
          "gauge_norm: no bracket after 200 doublings; e does not dominate x");
    }
  }
  double lo = doublings == 0 ? 0.0 : hi / 2.0;  // last infeasible value

  // relative stopping width, so small-norm inputs stay as accurate as
  // large ones; the midpoint guard ends the loop at float resolution
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;  // feasible endpoint, so p(e) = 1 lands exactly
}

double dual_norm(const OrderUnitSpace& space, const Vector& x) {
  check_dims(space, x, "dual_norm");
  const Cone& cone = space.cone();
  const Vector& e = space.unit();
  return std::max(dual_sup(cone, e, x), dual_sup(cone, e, Vector(-x)));
}

double functional_value(const Vector& x, const Vector& f) {
  if (x.size() != f.size()) {
    throw std::invalid_argument("functional_value: dimension mismatch");
  }
  return f.dot(x);
}

StateSample sample_states(const OrderUnitSpace& space, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_states: count must be >= 1");
  const Cone& cone = space.cone();
  const Vector& e = space.unit();
  const Index n = cone.ambient_dim();

  Rng rng(seed);
  StateSample sample;
  sample.seed = seed;
  sample.count = count;
  sample.functionals.reserve(count);

  for (int i = 0; i < count; ++i) {
    Vector f;
    switch (cone.family()) {
      case ConeFamily::Orthant: {
        // convex combination of the coordinate states u_j / e_j
        const Vector w = rng.simplex(n);
        f = (w.array() / e.array()).matrix();
        break;
      }
      case ConeFamily::Polyhedral: {
        const Matrix& gens = cone.dual_generators();
        const Vector w = rng.simplex(gens.rows());
        f = Vector::Zero(n);
        for (Index j = 0; j < gens.rows(); ++j) {
          f += w[j] * gens.row(j).transpose() / gens.row(j).dot(e);
        }
        break;
      }
      case ConeFamily::Lorentz: {
        const double r = rng.uniform() < 0.5 ? 1.0 : rng.uniform();
        f = Vector(n);
        f[0] = 1.0;
        f.tail(n - 1) = r * rng.on_sphere(n - 1);
        break;
      }
      case ConeFamily::Psd: {
        const Index k = cone.psd_side();
        if (rng.uniform() < 0.5) {
          const Vector v = rng.on_sphere(k);
          f = pack_symmetric(v * v.transpose());
        } else {
          Matrix a(k, k);
          for (Index r = 0; r < k; ++r) a.row(r) = rng.gaussian(k).transpose();
          f = pack_symmetric(Matrix(a.transpose() * a));
        }
        break;
      }
    }
    f /= f.dot(e);
    sample.functionals.push_back(std::move(f));
  }

  // Invariants: normalization against e, and nonnegativity against a fresh
  // witness sample of cone members.
  Rng witness_rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Vector> witnesses;
  for (int i = 0; i < 32; ++i) witnesses.push_back(sample_cone_point(cone, witness_rng));
  for (const Vector& f : sample.functionals) {
    internal_check(std::abs(f.dot(e) - 1.0) <= 1e-12,
                   "sample_states: state not normalized against e");
    for (const Vector& w : witnesses) {
      internal_check(f.dot(w) >= -1e-9, "sample_states: state negative on a cone member");
    }
  }
  return sample;
}

bool strictly_dominated_by_unit(const OrderUnitSpace& space, const Vector& x) {
  check_dims(space, x, "strictly_dominated_by_unit");
  const Cone& cone = space.cone();
  const Vector& e = space.unit();

  const bool via_unit = is_order_unit(cone, Vector(e - x), space.tol());

  bool via_gauge = false;
  for (int j = 1; j <= 60 && !via_gauge; ++j) {
    const double r = 1.0 - std::ldexp(1.0, -j);
    via_gauge = interior_contains(cone, Vector(r * e - x), space.tol());
  }
  internal_check(via_unit == via_gauge,
                 "strictly_dominated_by_unit: unit and gauge characterizations disagree");
  return via_unit;
}

}  // namespace conemetric
