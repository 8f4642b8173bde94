#include <cmath>
#include <limits>

#include "doctest.h"

#include "conemetric/cones.hpp"

using namespace conemetric;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

std::vector<Cone> all_families() {
  Matrix f(4, 3);
  f << 1, 0, 1, 0, 1, 1, -1, 0, 1, 0, -1, 1;
  return {Cone::Orthant(3), Cone::Lorentz(3), Cone::Psd(2), Cone::Polyhedral(f)};
}

}  // namespace

TEST_CASE("membership per family") {
  CHECK(contains(Cone::Orthant(2), vec({0, 0}), 0.0));
  CHECK(contains(Cone::Lorentz(3), vec({1, 0.6, 0.8}), 0.0));  // 0.6^2 + 0.8^2 = 1
  CHECK_FALSE(contains(Cone::Orthant(2), vec({1, -0.1}), 0.0));

  CHECK(interior_contains(Cone::Orthant(3), vec({1, 1, 1}), 1e-9));
  CHECK_FALSE(interior_contains(Cone::Lorentz(3), vec({1, 1, 0}), 1e-9));
  CHECK(interior_contains(Cone::Psd(2), pack_symmetric(vec({2, 3}).asDiagonal()), 1e-9));
}

TEST_CASE("membership input validation") {
  CHECK_THROWS_AS(contains(Cone::Orthant(2), vec({1, 2, 3}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(contains(Cone::Orthant(2), vec({1, 2}), -1.0), std::invalid_argument);
  Vector bad = vec({1, 2});
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(contains(Cone::Orthant(2), bad, 0.0), std::invalid_argument);
}

TEST_CASE("packing matches the trace inner product") {
  CHECK(pack_symmetric(vec({2, -3}).asDiagonal()) == vec({2, 0, -3}));
  CHECK(packed_dim(3) == 6);
  CHECK(side_for_packed_dim(6) == 3);
  CHECK_THROWS_AS(side_for_packed_dim(5), std::invalid_argument);

  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Index k = 2 + static_cast<Index>(rng.integer(3));
    Matrix a(k, k), b(k, k);
    for (Index i = 0; i < k; ++i) {
      a.row(i) = rng.gaussian(k).transpose();
      b.row(i) = rng.gaussian(k).transpose();
    }
    a = (0.5 * (a + a.transpose().eval())).eval();
    b = (0.5 * (b + b.transpose().eval())).eval();
    const double packed = pack_symmetric(a).dot(pack_symmetric(b));
    const double trace = (a * b).trace();
    CHECK(packed == doctest::Approx(trace).epsilon(1e-12));
    CHECK(unpack_symmetric(pack_symmetric(a), k).isApprox(a, 1e-14));
  }
}

TEST_CASE("order units per family") {
  CHECK(is_order_unit(Cone::Orthant(2), vec({1, 1}), 1e-9));
  CHECK_FALSE(is_order_unit(Cone::Orthant(2), vec({1, 0}), 1e-9));
  CHECK(is_order_unit(Cone::Lorentz(3), vec({1, 0.999, 0}), 1e-9));
  CHECK_FALSE(is_order_unit(Cone::Orthant(2), vec({0, 0}), 1e-9));

  for (const Cone& cone : all_families()) {
    CAPTURE(static_cast<int>(cone.family()));
    CHECK(is_order_unit(cone, canonical_unit(cone), 1e-9));
  }
}

TEST_CASE("polyhedral construction validates the generators") {
  Matrix rank_deficient(2, 3);
  rank_deficient << 1, 0, 0, 2, 0, 0;
  CHECK_THROWS_AS(Cone::Polyhedral(rank_deficient), std::invalid_argument);
  CHECK_THROWS_AS(Cone::Polyhedral(Matrix(0, 3)), std::invalid_argument);
}

TEST_CASE("dual_sup closed forms") {
  SUBCASE("orthant coordinate functionals") {
    CHECK(dual_sup(Cone::Orthant(3), vec({1, 1, 1}), vec({3, -1, 2})) == 3.0);
  }
  SUBCASE("normalization at the unit") {
    for (const Cone& cone : all_families()) {
      const Vector e = canonical_unit(cone);
      CHECK(dual_sup(cone, e, e) == 1.0);
    }
  }
  SUBCASE("psd eigenvalue form") {
    const Vector e = pack_symmetric(Matrix::Identity(2, 2));
    CHECK(dual_sup(Cone::Psd(2), e, pack_symmetric(vec({2, -3}).asDiagonal())) == 2.0);
    // general unit: whitened eigenvalues
    const Vector e2 = pack_symmetric(vec({1, 2}).asDiagonal());
    const Vector x = pack_symmetric(vec({3, 1}).asDiagonal());
    CHECK(dual_sup(Cone::Psd(2), e2, x) == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("lorentz closed form at the canonical unit") {
    Rng rng(5);
    const Cone cone = Cone::Lorentz(4);
    const Vector e = canonical_unit(cone);
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.gaussian(4) * 3.0;
      const double expected = x[0] + x.tail(3).norm();
      CHECK(dual_sup(cone, e, x) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("lorentz general unit, hand-solved values") {
    const Cone cone = Cone::Lorentz(3);
    const Vector e = vec({2, 1, 0});
    // maximize (1 + u1) / (2 + u1) over the unit circle: best at u1 = 1
    CHECK(dual_sup(cone, e, vec({1, 1, 0})) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    // maximize u2 / (2 + u1): stationary at cos(theta) = -1/2
    CHECK(dual_sup(cone, e, vec({0, 0, 1})) ==
          doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-10));
  }
  SUBCASE("planar lorentz cone: two extreme dual rays") {
    const Cone cone = Cone::Lorentz(2);
    Rng rng(61);
    for (int i = 0; i < 50; ++i) {
      const Vector x = rng.gaussian(2) * 2.0;
      CHECK(dual_sup(cone, vec({1, 0}), x) ==
            doctest::Approx(x[0] + std::abs(x[1])).epsilon(1e-12));
    }
  }
  SUBCASE("polyhedral generator maximum") {
    Matrix f(4, 3);
    f << 1, 0, 1, 0, 1, 1, -1, 0, 1, 0, -1, 1;
    const Cone cone = Cone::Polyhedral(f);
    // for e = (0, 0, 1) the states are the generators themselves
    CHECK(dual_sup(cone, vec({0, 0, 1}), vec({1, -2, 0.5})) == 2.5);
  }
  SUBCASE("rejects a non-unit state-space base") {
    CHECK_THROWS_AS(dual_sup(Cone::Orthant(2), vec({1, 0}), vec({1, 1})),
                    std::invalid_argument);
  }
}

TEST_CASE("dual_sup is positively homogeneous and subadditive in x") {
  Rng rng(17);
  for (const Cone& cone : all_families()) {
    Rng unit_rng(99);
    const Vector e = canonical_unit(cone) + 0.25 * sample_cone_point(cone, unit_rng);
    for (int i = 0; i < 100; ++i) {
      const Vector x = rng.gaussian(cone.ambient_dim());
      const Vector y = rng.gaussian(cone.ambient_dim());
      const double alpha = std::exp(rng.uniform(-1.0, 1.0));
      const double sx = dual_sup(cone, e, x);
      CHECK(dual_sup(cone, e, Vector(alpha * x)) ==
            doctest::Approx(alpha * sx).epsilon(1e-9));
      CHECK(dual_sup(cone, e, Vector(x + y)) <=
            sx + dual_sup(cone, e, y) + 1e-9 * (1.0 + std::abs(sx)));
    }
  }
}

TEST_CASE("membership is homogeneous along rays") {
  Rng rng(23);
  for (const Cone& cone : all_families()) {
    for (int i = 0; i < 200; ++i) {
      const Vector x = rng.gaussian(cone.ambient_dim());
      const double margin = membership_margin(cone, x);
      if (std::abs(margin) <= 1e-9 * (1.0 + x.norm())) continue;  // undecidable at 0
      const bool member = contains(cone, x, 0.0);
      for (double lambda : {0.5, 2.0, 10.0}) {
        CHECK(contains(cone, Vector(lambda * x), 0.0) == member);
      }
    }
  }
}

TEST_CASE("pointedness on random samples") {
  Rng rng(31);
  for (const Cone& cone : all_families()) {
    for (int i = 0; i < 1000; ++i) {
      Vector x = rng.uniform() < 0.5 ? Vector(rng.gaussian(cone.ambient_dim()))
                                     : sample_cone_point(cone, rng);
      if (x.isZero(0.0)) continue;
      const bool both = contains(cone, x, 1e-12) && contains(cone, Vector(-x), 1e-12);
      CHECK_FALSE(both);
    }
  }
}

TEST_CASE("interior membership and the order-unit predicate coincide") {
  Rng rng(41);
  for (const Cone& cone : all_families()) {
    for (int i = 0; i < 1000; ++i) {
      const Vector e = i % 2 == 0 ? Vector(rng.gaussian(cone.ambient_dim()))
                                  : sample_cone_point(cone, rng);
      CHECK(interior_contains(cone, e, 1e-9) == is_order_unit(cone, e, 1e-9));
    }
  }
}

TEST_CASE("sampled cone points are members") {
  Rng rng(53);
  for (const Cone& cone : all_families()) {
    for (int i = 0; i < 500; ++i) {
      const Vector x = sample_cone_point(cone, rng);
      CHECK(contains(cone, x, 1e-9 * (1.0 + x.norm())));
    }
  }
}

TEST_CASE("archimedean spot check finds no violations on closed cones") {
  for (const Cone& cone : all_families()) {
    const ArchimedeanReport report = archimedean_spot_check(cone, 500, 32, 7);
    CHECK(report.samples == 500);
    CHECK(report.violations.empty());
  }
  CHECK_THROWS_AS(archimedean_spot_check(Cone::Orthant(2), 0, 32, 7),
                  std::invalid_argument);
}
