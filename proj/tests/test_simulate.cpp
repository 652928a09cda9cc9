#include "doctest.h"

#include <cmath>

#include "spiso/simulate.hpp"
#include "spiso/variogram.hpp"
#include "test_util.hpp"

using namespace spiso;

TEST_CASE("covariance model closed forms") {
  CovarianceModel m;
  m.nugget = 0.5;
  CHECK(covariance_at(m, 0, 0) == doctest::Approx(1.5));  // sill + nugget
  m.nugget = 0.0;
  CHECK(covariance_at(m, 1, 0) == doctest::Approx(std::exp(-1.0)));

  CovarianceModel aniso = m;
  aniso.aniso_ratio = 3.0;
  // stretch acts on the second coordinate: C((0,1)) = isotropic C at distance 3
  CHECK(covariance_at(aniso, 0, 1) == doctest::Approx(covariance_at(m, 3, 0)));
  CHECK(covariance_at(aniso, 1, 0) == doctest::Approx(covariance_at(m, 1, 0)));
}

TEST_CASE("covariance is an even function of the lag") {
  CovarianceModel m;
  m.family = CovFamily::gaussian;
  m.range = 2.0;
  m.aniso_angle_deg = 30.0;
  m.aniso_ratio = 2.0;
  RandomStream rng(13, 0);
  for (int i = 0; i < 100; ++i) {
    const double h1 = 4.0 * rng.uniform01() - 2.0;
    const double h2 = 4.0 * rng.uniform01() - 2.0;
    CHECK(covariance_at(m, h1, h2) == doctest::Approx(covariance_at(m, -h1, -h2)));
  }
}

TEST_CASE("isotropic model depends on the lag only through its length") {
  CovarianceModel m;
  m.range = 1.7;
  RandomStream rng(19, 0);
  for (int i = 0; i < 100; ++i) {
    const double r = 3.0 * rng.uniform01();
    const double t1 = 2.0 * M_PI * rng.uniform01();
    const double t2 = 2.0 * M_PI * rng.uniform01();
    const double c1 = covariance_at(m, r * std::cos(t1), r * std::sin(t1));
    const double c2 = covariance_at(m, r * std::cos(t2), r * std::sin(t2));
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-12));
  }
}

TEST_CASE("simulation is deterministic for a fixed stream") {
  const auto locs = grid_locations(5, 5, 1, 1);
  CovarianceModel m;
  RandomStream r1(7, 0), r2(7, 0);
  const auto a = simulate_grf(locs, m, r1);
  const auto b = simulate_grf(locs, m, r2);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values()[i] == b.values()[i]);
}

TEST_CASE("pure-nugget field has flat semivariogram at the nugget") {
  CovarianceModel m;
  m.sill = 1e-12;
  m.nugget = 1.0;
  const auto locs = grid_locations(8, 8, 1, 1);
  const auto lags = spiso_test::standard_lags();
  double pooled[4] = {0, 0, 0, 0};
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rng(101, rep);
    const auto field = simulate_grf(locs, m, rng);
    const auto est = classical_semivariogram(field, lags);
    for (int i = 0; i < 4; ++i) pooled[i] += est.gammas[i];
  }
  for (int i = 0; i < 4; ++i) CHECK(pooled[i] / reps == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("empirical semivariogram matches gamma(h) = C(0) - C(h)") {
  CovarianceModel m;
  m.range = 2.0;
  const auto locs = grid_locations(16, 16, 1, 1);
  const auto lags = LagSet::create({{1, 0}, {0, 1}});
  double pooled[2] = {0, 0};
  const int reps = 200;
  for (int rep = 0; rep < reps; ++rep) {
    RandomStream rng(103, rep);
    const auto field = simulate_grf(locs, m, rng);
    const auto est = classical_semivariogram(field, lags);
    pooled[0] += est.gammas[0];
    pooled[1] += est.gammas[1];
  }
  const double expected = 1.0 - std::exp(-0.5);  // ~0.3935
  CHECK(pooled[0] / reps == doctest::Approx(expected).epsilon(0.15));
  CHECK(pooled[1] / reps == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("uniform locations stay in bounds with the right mean") {
  RandomStream rng(107, 0);
  const auto pts = uniform_locations(100000, 2, 6, -1, 3, rng);
  double mx = 0.0;
  for (const auto& p : pts) {
    CHECK(p.x >= 2.0);
    CHECK(p.x < 6.0);
    CHECK(p.y >= -1.0);
    CHECK(p.y < 3.0);
    mx += p.x;
  }
  CHECK(mx / pts.size() == doctest::Approx(4.0).epsilon(0.01));

  RandomStream r2(107, 0);
  const auto again = uniform_locations(10, 2, 6, -1, 3, r2);
  RandomStream r3(107, 0);
  const auto again2 = uniform_locations(10, 2, 6, -1, 3, r3);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(again[i].x == again2[i].x);
    CHECK(again[i].y == again2[i].y);
  }
}
