#include "doctest.h"

#include <cmath>

#include "spiso/errors.hpp"
#include "spiso/numstats.hpp"
#include "spiso/variogram.hpp"
#include "test_util.hpp"

using namespace spiso;
using spiso_test::make_grid_dataset;
using spiso_test::standard_lags;

TEST_CASE("classical estimator is zero on a constant field") {
  const auto d = make_grid_dataset(5, 5, [](double, double) { return 3.0; });
  const auto est = classical_semivariogram(d, standard_lags());
  for (double g : est.gammas) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("classical estimator on a hand-enumerated 2x2 grid") {
  // bottom row 0, 2; top row 1, 3
  const auto d = make_grid_dataset(2, 2, [](double x, double y) { return 2.0 * x + y; });
  const auto lags = LagSet::create({{1, 0}, {0, 1}});
  const auto est = classical_semivariogram(d, lags);
  CHECK(est.gammas[0] == doctest::Approx(2.0));  // (2^2 + 2^2) / (2*2)
  CHECK(est.support[0] == doctest::Approx(2.0));
}

TEST_CASE("classical estimator is even in the lag") {
  const auto d = make_grid_dataset(2, 2, [](double x, double y) { return 2.0 * x + y; });
  const auto pos = classical_semivariogram(d, LagSet::create({{1, 0}, {0, 1}}));
  const auto neg = classical_semivariogram(d, LagSet::create({{-1, 0}, {0, -1}}));
  CHECK(pos.gammas[0] == neg.gammas[0]);
  CHECK(pos.support[0] == neg.support[0]);
}

TEST_CASE("classical estimator rejects non-lattice lags and empty pair sets") {
  const auto d = make_grid_dataset(3, 3, [](double x, double y) { return x + y; });
  CHECK_THROWS_AS(classical_semivariogram(d, LagSet::create({{0.5, 0}, {0, 1}})),
                  ValidationError);
  CHECK_THROWS_AS(classical_semivariogram(d, LagSet::create({{5, 0}, {0, 1}})),
                  ValidationError);
}

TEST_CASE("kernel estimator recovers the single-pair difference") {
  const auto d = SpatialDataset::create({{0, 0}, {1, 0}, {0, 9}, {9, 9}}, {0, 2, 0, 0});
  const auto lags = LagSet::create({{1, 0}, {0, 9}});
  KernelSpec k{KernelFamily::gaussian, 0.3, 1.5};
  const auto est = kernel_semivariogram(d, lags, k);
  // only the (0,0)-(1,0) pair reaches lag (1,0); weights cancel in the ratio
  CHECK(est.gammas[0] == doctest::Approx(2.0));
  CHECK(est.gammas[1] == doctest::Approx(0.0));
}

TEST_CASE("kernel estimator is zero on a constant field") {
  RandomStream rng(3, 0);
  const auto locs = uniform_locations(40, 0, 10, 0, 10, rng);
  const auto d = SpatialDataset::create(locs, std::vector<double>(40, 1.5));
  const auto est = kernel_semivariogram(d, standard_lags(), KernelSpec{});
  for (double g : est.gammas) CHECK(g == doctest::Approx(0.0));
}

TEST_CASE("kernel estimator at tiny bandwidth matches the classical estimator") {
  RandomStream rng(17, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const auto d = make_grid_dataset(
        6, 6, [&](double, double) { return rng.normal(); });
    const auto lags = standard_lags();
    const auto classical = classical_semivariogram(d, lags);
    const auto kernel =
        kernel_semivariogram(d, lags, KernelSpec{KernelFamily::gaussian, 0.05, 1.5});
    for (std::size_t i = 0; i < lags.size(); ++i)
      CHECK(kernel.gammas[i] == doctest::Approx(classical.gammas[i]).epsilon(1e-8));
  }
}

TEST_CASE("kernel estimator reports zero-weight lags with the nearest distance") {
  const auto d = SpatialDataset::create({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {1, 2, 3, 4});
  CHECK_THROWS_AS(
      kernel_semivariogram(d, LagSet::create({{10, 0}, {0, 1}}),
                           KernelSpec{KernelFamily::gaussian, 0.1, 1.5}),
      ValidationError);
}

TEST_CASE("shift invariance and scale equivariance") {
  RandomStream rng(23, 0);
  const auto d = make_grid_dataset(5, 5, [&](double, double) { return rng.normal(); });
  std::vector<double> shifted = d.values(), scaled = d.values();
  for (auto& v : shifted) v += 17.5;
  for (auto& v : scaled) v *= 3.0;
  const auto lags = standard_lags();
  const auto base = classical_semivariogram(d, lags);
  const auto shift = classical_semivariogram(d.with_values(shifted), lags);
  const auto scale = classical_semivariogram(d.with_values(scaled), lags);
  for (std::size_t i = 0; i < lags.size(); ++i) {
    CHECK(shift.gammas[i] == doctest::Approx(base.gammas[i]));
    CHECK(scale.gammas[i] == doctest::Approx(9.0 * base.gammas[i]));
  }
  const auto kbase = kernel_semivariogram(d, lags, KernelSpec{});
  const auto kshift = kernel_semivariogram(d.with_values(shifted), lags, KernelSpec{});
  const auto kscale = kernel_semivariogram(d.with_values(scaled), lags, KernelSpec{});
  for (std::size_t i = 0; i < lags.size(); ++i) {
    CHECK(kshift.gammas[i] == doctest::Approx(kbase.gammas[i]));
    CHECK(kscale.gammas[i] == doctest::Approx(9.0 * kbase.gammas[i]));
  }
}

TEST_CASE("axis swap maps gamma(a,b) to gamma(b,a) exactly") {
  RandomStream rng(29, 0);
  const auto locs = uniform_locations(60, 0, 8, 0, 12, rng);
  std::vector<double> vals(60);
  for (auto& v : vals) v = rng.normal();
  const auto d = SpatialDataset::create(locs, vals);
  std::vector<Point> swapped;
  for (const auto& p : locs) swapped.push_back({p.y, p.x});
  const auto ds = SpatialDataset::create(swapped, vals);

  const auto lags = LagSet::create({{1, 0}, {0.5, 1}});
  const auto lags_swapped = LagSet::create({{0, 1}, {1, 0.5}});
  const auto a = kernel_semivariogram(d, lags, KernelSpec{});
  const auto b = kernel_semivariogram(ds, lags_swapped, KernelSpec{});
  for (std::size_t i = 0; i < lags.size(); ++i) {
    CHECK(a.gammas[i] == b.gammas[i]);
    CHECK(a.support[i] == b.support[i]);
  }
}

TEST_CASE("directional estimator on deterministic fields") {
  SUBCASE("constant field gives all zeros") {
    const auto d = make_grid_dataset(5, 5, [](double, double) { return 2.0; });
    DirectionalBinSpec bins;
    for (const auto& cell : directional_semivariogram(d, bins))
      CHECK(cell.gamma == doctest::Approx(0.0));
  }
  SUBCASE("values equal to x vanish in the 90 degree direction") {
    const auto d = make_grid_dataset(5, 5, [](double x, double) { return x; });
    DirectionalBinSpec bins;
    bins.angles = {90.0};
    bins.angle_tolerance = 10.0;
    for (const auto& cell : directional_semivariogram(d, bins))
      CHECK(cell.gamma == doctest::Approx(0.0));
  }
  SUBCASE("hand-enumerated horizontal pairs on a 3x3 grid") {
    const auto d = make_grid_dataset(3, 3, [](double x, double y) { return x + 2 * y; });
    DirectionalBinSpec bins;
    bins.angles = {0.0};
    bins.distance_bins = {0.5, 1.5};
    const auto table = directional_semivariogram(d, bins);
    REQUIRE(table.size() == 1);
    CHECK(table[0].gamma == doctest::Approx(0.5));
    CHECK(table[0].npairs == 6);
  }
}

TEST_CASE("directional estimator rejects an all-empty table") {
  const auto d = make_grid_dataset(2, 2, [](double x, double y) { return x + y; });
  DirectionalBinSpec bins;
  bins.distance_bins = {100.0, 200.0};
  CHECK_THROWS_AS(directional_semivariogram(d, bins), ValidationError);
}
