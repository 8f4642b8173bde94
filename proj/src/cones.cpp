#include "conemetric/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace conemetric {
namespace {

void check_vector(const Cone& cone, const Vector& x, const char* what) {
  if (x.size() != cone.ambient_dim()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (got " +
                                std::to_string(x.size()) + ", cone ambient dim " +
                                std::to_string(cone.ambient_dim()) + ")");
  }
  require_finite(x, what);
}

void check_tol(double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
}

double lambda_min_packed(const Vector& x, Index side) {
  Matrix m = unpack_symmetric(x, side);
  m = 0.5 * (m + m.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double lambda_max_packed(const Vector& x, Index side) {
  Matrix m = unpack_symmetric(x, side);
  m = 0.5 * (m + m.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Extreme states of the Lorentz cone with unit e = (t0, v0) are
// f(u) = (1, u) / (t0 + <u, v0>) with ||u|| = 1, so the supremum of f(x)
// reduces to maximizing
//     g(u) = (x1 + <u, xt>) / (t0 + <u, v0>)
// over the unit sphere. Both inner products only see the span of {xt, v0},
// which has dimension at most two; on that circle g has a single local
// maximum, so a coarse scan plus golden-section refinement converges to the
// global value.
double lorentz_dual_sup(const Vector& e, const Vector& x) {
  const Index n = e.size();
  const double t0 = e[0];
  const double x1 = x[0];
  const Vector vt = e.tail(n - 1);
  const Vector xt = x.tail(n - 1);

  std::vector<Vector> basis;
  for (const Vector* w : {&xt, &vt}) {
    Vector r = *w;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& b : basis) r -= b.dot(r) * b;
    }
    if (r.norm() > 1e-15 * std::max(1.0, w->norm())) basis.push_back(r.normalized());
  }

  if (basis.empty()) return x1 / t0;

  const auto value = [&](const Vector& u) {
    return (x1 + u.dot(xt)) / (t0 + u.dot(vt));
  };

  if (basis.size() == 1) {
    return std::max(value(basis[0]), value(-basis[0]));
  }

  const double p1 = basis[0].dot(xt), p2 = basis[1].dot(xt);
  const double q1 = basis[0].dot(vt), q2 = basis[1].dot(vt);
  const auto g = [&](double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return (x1 + p1 * c + p2 * s) / (t0 + q1 * c + q2 * s);
  };

  constexpr int kScan = 512;
  const double two_pi = 2.0 * std::numbers::pi;
  double best_theta = 0.0, best = g(0.0);
  for (int i = 1; i < kScan; ++i) {
    const double theta = two_pi * i / kScan;
    const double v = g(theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }

  // golden-section refinement on the bracketing interval
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_theta - two_pi / kScan;
  double b = best_theta + two_pi / kScan;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = g(c), fd = g(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = g(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = g(d);
    }
    best = std::max({best, fc, fd});
  }
  return best;
}

// Interior direction of {x : Fx >= 0}: least squares towards equal unit
// margins, then a subgradient polish if that is not already interior.
Vector polyhedral_interior_direction(const Matrix& gens, const Vector& norms) {
  const Index m = gens.rows();
  Matrix fn = gens;
  for (Index i = 0; i < m; ++i) fn.row(i) /= norms[i];

  const auto margin = [&](const Vector& x) { return (fn * x).minCoeff(); };

  Vector x = fn.colPivHouseholderQr().solve(Vector::Ones(m));
  if (x.norm() > 0 && margin(x) > 1e-12 * x.norm()) return x;

  x = fn.colwise().sum().transpose() / static_cast<double>(m);
  if (x.norm() > 0) x.normalize();
  for (int iter = 0; iter < 5000; ++iter) {
    Index worst = 0;
    (fn * x).minCoeff(&worst);
    if (margin(x) > 1e-10) return x;
    x += (1.0 / (8.0 + iter / 8.0)) * fn.row(worst).transpose();
    const double s = x.norm();
    if (s > 0) x /= s;
  }
  if (margin(x) > 0) return x;
  throw std::runtime_error(
      "polyhedral cone has empty interior: no order units exist");
}

}  // namespace

Cone Cone::Orthant(Index n) {
  if (n < 1) throw std::invalid_argument("Orthant: dimension must be positive");
  return Cone(ConeFamily::Orthant, n);
}

Cone Cone::Lorentz(Index n) {
  if (n < 2) throw std::invalid_argument("Lorentz: dimension must be at least 2");
  return Cone(ConeFamily::Lorentz, n);
}

Cone Cone::Psd(Index side) {
  if (side < 1) throw std::invalid_argument("Psd: side must be positive");
  Cone cone(ConeFamily::Psd, packed_dim(side));
  return cone;
}

Cone Cone::Polyhedral(Matrix dual_generators) {
  if (dual_generators.rows() < 1) {
    throw std::invalid_argument("Polyhedral: need at least one dual generator");
  }
  if (!dual_generators.allFinite()) {
    throw std::invalid_argument("Polyhedral: non-finite generator entry");
  }
  const Index n = dual_generators.cols();
  Eigen::ColPivHouseholderQR<Matrix> qr(dual_generators);
  if (qr.rank() < n) {
    throw std::invalid_argument(
        "Polyhedral: dual generators must have full column rank (pointedness)");
  }
  Cone cone(ConeFamily::Polyhedral, n);
  cone.dual_gen_norms_ = dual_generators.rowwise().norm();
  for (Index i = 0; i < dual_generators.rows(); ++i) {
    if (cone.dual_gen_norms_[i] <= 0.0) {
      throw std::invalid_argument("Polyhedral: zero dual generator");
    }
  }
  cone.dual_gens_ = std::move(dual_generators);
  return cone;
}

Index Cone::psd_side() const {
  if (family_ != ConeFamily::Psd) {
    throw std::logic_error("psd_side: not a Psd cone");
  }
  return side_for_packed_dim(ambient_);
}

const Matrix& Cone::dual_generators() const {
  if (family_ != ConeFamily::Polyhedral) {
    throw std::logic_error("dual_generators: not a Polyhedral cone");
  }
  return dual_gens_;
}

const Vector& Cone::dual_generator_norms() const {
  if (family_ != ConeFamily::Polyhedral) {
    throw std::logic_error("dual_generator_norms: not a Polyhedral cone");
  }
  return dual_gen_norms_;
}

Index packed_dim(Index side) { return side * (side + 1) / 2; }

Index side_for_packed_dim(Index packed) {
  const Index side = static_cast<Index>((std::sqrt(8.0 * packed + 1.0) - 1.0) / 2.0 + 0.5);
  if (packed_dim(side) != packed) {
    throw std::invalid_argument("packed dimension is not triangular: " +
                                std::to_string(packed));
  }
  return side;
}

Vector pack_symmetric(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("pack_symmetric: not square");
  const Index k = m.rows();
  Vector v(packed_dim(k));
  Index idx = 0;
  for (Index i = 0; i < k; ++i) {
    for (Index j = i; j < k; ++j) {
      v[idx++] = (i == j) ? m(i, i) : std::numbers::sqrt2 * 0.5 * (m(i, j) + m(j, i));
    }
  }
  return v;
}

Matrix unpack_symmetric(const Vector& v, Index side) {
  if (v.size() != packed_dim(side)) {
    throw std::invalid_argument("unpack_symmetric: packed size does not match side");
  }
  Matrix m(side, side);
  Index idx = 0;
  for (Index i = 0; i < side; ++i) {
    for (Index j = i; j < side; ++j) {
      const double value = v[idx++];
      if (i == j) {
        m(i, i) = value;
      } else {
        m(i, j) = m(j, i) = value / std::numbers::sqrt2;
      }
    }
  }
  return m;
}

double membership_margin(const Cone& cone, const Vector& x) {
  check_vector(cone, x, "membership_margin");
  switch (cone.family()) {
    case ConeFamily::Orthant:
      return x.minCoeff();
    case ConeFamily::Lorentz:
      return x[0] - x.tail(x.size() - 1).norm();
    case ConeFamily::Psd:
      return lambda_min_packed(x, cone.psd_side());
    case ConeFamily::Polyhedral: {
      const Matrix& gens = cone.dual_generators();
      const Vector& norms = cone.dual_generator_norms();
      double margin = std::numeric_limits<double>::infinity();
      for (Index i = 0; i < gens.rows(); ++i) {
        margin = std::min(margin, gens.row(i).dot(x) / norms[i]);
      }
      return margin;
    }
  }
  throw std::logic_error("membership_margin: unknown family");
}

bool contains(const Cone& cone, const Vector& x, double tol) {
  check_tol(tol);
  return membership_margin(cone, x) >= -tol;
}

bool interior_contains(const Cone& cone, const Vector& x, double tol) {
  check_tol(tol);
  return membership_margin(cone, x) > tol;
}

bool is_order_unit(const Cone& cone, const Vector& e, double tol) {
  check_vector(cone, e, "is_order_unit");
  check_tol(tol);
  if (e.isZero(0.0)) return false;  // units are strictly positive
  const bool primal = interior_contains(cone, e, tol);
  if (cone.family() == ConeFamily::Polyhedral) {
    const Matrix& gens = cone.dual_generators();
    const Vector& norms = cone.dual_generator_norms();
    bool dual_side = true;
    for (Index i = 0; i < gens.rows() && dual_side; ++i) {
      dual_side = gens.row(i).dot(e) > tol * norms[i];
    }
    internal_check(primal == dual_side,
                   "is_order_unit: polyhedral primal and dual paths disagree");
  }
  return primal;
}

double dual_sup(const Cone& cone, const Vector& e, const Vector& x) {
  check_vector(cone, e, "dual_sup");
  check_vector(cone, x, "dual_sup");
  if (!is_order_unit(cone, e, 0.0)) {
    throw std::invalid_argument("dual_sup: e is not an order unit, state space is invalid");
  }
  if (x == e) return 1.0;  // every state f has f(e) = 1
  switch (cone.family()) {
    case ConeFamily::Orthant:
      return (x.array() / e.array()).maxCoeff();
    case ConeFamily::Lorentz:
      return lorentz_dual_sup(e, x);
    case ConeFamily::Psd: {
      const Index k = cone.psd_side();
      if (e == pack_symmetric(Matrix::Identity(k, k))) {
        return lambda_max_packed(x, k);
      }
      Matrix em = unpack_symmetric(e, k);
      em = 0.5 * (em + em.transpose().eval());
      Eigen::SelfAdjointEigenSolver<Matrix> es(em);
      const Matrix w = es.operatorInverseSqrt();
      Matrix m = w * unpack_symmetric(x, k) * w;
      m = 0.5 * (m + m.transpose().eval());
      Eigen::SelfAdjointEigenSolver<Matrix> ms(m, Eigen::EigenvaluesOnly);
      return ms.eigenvalues().maxCoeff();
    }
    case ConeFamily::Polyhedral: {
      const Matrix& gens = cone.dual_generators();
      double best = -std::numeric_limits<double>::infinity();
      for (Index i = 0; i < gens.rows(); ++i) {
        best = std::max(best, gens.row(i).dot(x) / gens.row(i).dot(e));
      }
      return best;
    }
  }
  throw std::logic_error("dual_sup: unknown family");
}

Vector canonical_unit(const Cone& cone) {
  switch (cone.family()) {
    case ConeFamily::Orthant:
      return Vector::Ones(cone.ambient_dim());
    case ConeFamily::Lorentz: {
      Vector e = Vector::Zero(cone.ambient_dim());
      e[0] = 1.0;
      return e;
    }
    case ConeFamily::Psd: {
      const Index k = cone.psd_side();
      return pack_symmetric(Matrix::Identity(k, k));
    }
    case ConeFamily::Polyhedral: {
      Vector dir = polyhedral_interior_direction(cone.dual_generators(),
                                                 cone.dual_generator_norms());
      return dir / membership_margin(cone, dir);  // margin scales to one
    }
  }
  throw std::logic_error("canonical_unit: unknown family");
}

Vector sample_cone_point(const Cone& cone, Rng& rng) {
  const double scale = std::exp(rng.uniform(-1.0, 2.0));
  switch (cone.family()) {
    case ConeFamily::Orthant: {
      Vector x = rng.gaussian(cone.ambient_dim()).cwiseAbs() * scale;
      if (rng.uniform() < 0.3) x[rng.integer(x.size())] = 0.0;  // facet point
      return x;
    }
    case ConeFamily::Lorentz: {
      const Index n = cone.ambient_dim();
      Vector x(n);
      x.tail(n - 1) = rng.gaussian(n - 1) * scale;
      const double slack = rng.uniform() < 0.3 ? 0.0 : std::abs(rng.normal()) * scale;
      x[0] = x.tail(n - 1).norm() + slack;
      return x;
    }
    case ConeFamily::Psd: {
      const Index k = cone.psd_side();
      if (rng.uniform() < 0.3) {
        const Vector v = rng.gaussian(k) * scale;
        return pack_symmetric(v * v.transpose());  // rank-one boundary point
      }
      Matrix a(k, k);
      for (Index i = 0; i < k; ++i) a.row(i) = rng.gaussian(k).transpose();
      return pack_symmetric(Matrix(scale * (a.transpose() * a)));
    }
    case ConeFamily::Polyhedral: {
      const Vector dir = canonical_unit(cone);
      const Vector z = rng.gaussian(cone.ambient_dim()) * scale;
      const Matrix& gens = cone.dual_generators();
      double shift = 0.0;
      for (Index i = 0; i < gens.rows(); ++i) {
        shift = std::max(shift, -gens.row(i).dot(z) / gens.row(i).dot(dir));
      }
      const double jitter = rng.uniform() < 0.3 ? 0.0 : std::abs(rng.normal()) * scale;
      return z + (shift + jitter) * dir;
    }
  }
  throw std::logic_error("sample_cone_point: unknown family");
}

ArchimedeanReport archimedean_spot_check(const Cone& cone, int sample_count,
                                         int n_max, std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("archimedean_spot_check: sample_count >= 1");
  if (n_max < 1) throw std::invalid_argument("archimedean_spot_check: n_max >= 1");
  constexpr double kTol = 1e-9;
  constexpr double kCap = 2.2e12;  // ~2^41, past any x/margin ratio at desk scale

  Rng rng(seed);
  ArchimedeanReport report;
  report.samples = sample_count;
  for (int s = 0; s < sample_count; ++s) {
    const Vector x = sample_cone_point(cone, rng);
    Vector y;
    switch (rng.integer(3)) {
      case 0:
        y = rng.gaussian(cone.ambient_dim()) * 0.5;
        break;
      case 1:
        y = -sample_cone_point(cone, rng);  // y <= 0, never a candidate
        break;
      default:
        y = sample_cone_point(cone, rng) * 1e-6;  // barely positive stress case
        break;
    }

    const double m = membership_margin(cone, -y);
    if (m >= -kTol) continue;  // y <= 0 within tolerance

    bool dominated = true;
    for (int n = 1; n <= n_max && dominated; ++n) {
      dominated = contains(cone, x - static_cast<double>(n) * y, 0.0);
    }
    if (!dominated) continue;
    report.dominated_prefixes += 1;

    // A positive part of y forces x - n*y out of the cone once n passes
    // f(x)/f(y) for a separating functional f, so extending the horizon
    // settles the candidate.
    bool confirmed = true;
    for (double n = 2.0 * n_max; n <= kCap && confirmed; n *= 2.0) {
      confirmed = contains(cone, x - n * y, 0.0);
    }
    if (confirmed) report.violations.push_back(ArchimedeanViolation{y, x, -m});
  }
  return report;
}

}  // namespace conemetric
