#include "spiso/isotest.hpp"

#include <cmath>
#include <string>

#include "spiso/errors.hpp"
#include "spiso/numstats.hpp"

namespace spiso {

namespace {

nlohmann::json lags_json(const LagSet& lagset) {
  nlohmann::json j = nlohmann::json::array();
  for (const Lag& l : lagset.lags()) j.push_back({l.h1, l.h2});
  return j;
}

nlohmann::json contrasts_json(const ContrastMatrix& a) {
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t i = 0; i < a.row_count(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < a.col_count(); ++c) row.push_back(a.entries()(i, c));
    j.push_back(row);
  }
  return j;
}

const char* kernel_name(KernelFamily f) {
  switch (f) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::epanechnikov: return "epanechnikov";
    case KernelFamily::uniform_box: return "uniform";
  }
  return "?";
}

nlohmann::json kernel_json(const KernelSpec& k) {
  return {{"family", kernel_name(k.family)},
          {"bandwidth", k.bandwidth},
          {"truncation", k.truncation}};
}

}  // namespace

double test_statistic(const SemivariogramEstimate& ghat, const CovarianceEstimate& sigma,
                      const ContrastMatrix& a, std::size_t n) {
  validate_hypothesis(ghat.lagset, a);
  const std::size_t r = a.row_count();
  if (sigma.matrix.rows() != a.col_count() || sigma.matrix.cols() != a.col_count())
    throw ValidationError("test statistic: sigma shape does not match the lag set");

  const Matrix contrast_cov =
      matmul(matmul(a.entries(), sigma.matrix), a.entries().transposed());
  const std::vector<double> ev = sym_eigenvalues(contrast_cov);
  const double lmin = ev.front();
  const double lmax = ev.back();
  if (!(lmin > 0.0) || lmax / lmin > 1e12)
    throw NumericalError(
        "test statistic: contrast covariance is singular or ill-conditioned "
        "(eigenvalue range [" +
        std::to_string(lmin) + ", " + std::to_string(lmax) + "])");

  const std::vector<double> c = matvec(a.entries(), ghat.gammas);
  const std::vector<double> w = solve_spd(contrast_cov, c);
  double quad = 0.0;
  for (std::size_t i = 0; i < r; ++i) quad += c[i] * w[i];
  return static_cast<double>(n) * quad;
}

TestResult guan_test_grid(const SpatialDataset& data, double delta, const LagSet& lagset,
                          const ContrastMatrix& a, std::pair<int, int> window_dims,
                          bool finite_adjust) {
  if (data.design() != Design::grid)
    throw ValidationError("guan grid test requires a gridded design");
  const auto [k, r] = validate_hypothesis(lagset, a);
  (void)k;

  TestResult res;
  res.test_name = "guan-grid";
  const SpatialDataset scaled = data.rescaled(delta);
  const GridInfo g = *scaled.grid();

  res.estimates = classical_semivariogram(scaled, lagset);

  // one lattice cell per sampling location; C equals the number of columns
  RegionGrid grid;
  grid.xmin = scaled.bounds().xmin;
  grid.xmax = scaled.bounds().xmax + g.dx;
  grid.ymin = scaled.bounds().ymin;
  grid.ymax = scaled.bounds().ymax + g.dy;
  grid.gx = g.dx;
  grid.gy = g.dy;

  WindowConfig cfg;
  cfg.wx = window_dims.first;
  cfg.wy = window_dims.second;
  res.sigma = sigma_from_subblocks(scaled, grid, cfg, lagset, std::nullopt, &res.warnings);
  res.n_subblocks = std::get<SubblockSource>(res.sigma.source).count;

  res.statistic = test_statistic(res.estimates, res.sigma, a, data.size());
  res.df = static_cast<int>(r);
  res.p_value = chisq_survival(res.statistic, res.df);
  if (finite_adjust)
    res.p_value_finite =
        finite_sample_pvalue(res.sigma.block_estimates, res.sigma, a, res.statistic);

  res.config_echo = {{"test", "guan-grid"},
                     {"n", data.size()},
                     {"delta", delta},
                     {"lags", lags_json(lagset)},
                     {"contrasts", contrasts_json(a)},
                     {"window_dims", {window_dims.first, window_dims.second}},
                     {"finite_adjust", finite_adjust}};
  return res;
}

TestResult guan_test_unif(const SpatialDataset& data, const LagSet& lagset,
                          const ContrastMatrix& a, const KernelSpec& kernel,
                          const RegionGrid& grid, std::pair<int, int> window_dims,
                          const KernelSpec& subblock_kernel) {
  if (data.design() != Design::general)
    throw ValidationError("guan uniform test requires a general (non-gridded) design");
  const auto [k, r] = validate_hypothesis(lagset, a);
  (void)k;

  TestResult res;
  res.test_name = "guan-unif";
  res.estimates = kernel_semivariogram(data, lagset, kernel);

  WindowConfig cfg;
  cfg.wx = window_dims.first;
  cfg.wy = window_dims.second;
  const double region_area = (grid.xmax - grid.xmin) * (grid.ymax - grid.ymin);
  const double window_area = cfg.wx * grid.gx * cfg.wy * grid.gy;
  const double expected = static_cast<double>(data.size()) * window_area / region_area;
  cfg.min_points = static_cast<int>(std::ceil(0.5 * std::sqrt(expected)));

  res.sigma =
      sigma_from_subblocks(data, grid, cfg, lagset, subblock_kernel, &res.warnings);
  res.n_subblocks = std::get<SubblockSource>(res.sigma.source).count;

  res.statistic = test_statistic(res.estimates, res.sigma, a, data.size());
  res.df = static_cast<int>(r);
  res.p_value = chisq_survival(res.statistic, res.df);

  res.config_echo = {{"test", "guan-unif"},
                     {"n", data.size()},
                     {"lags", lags_json(lagset)},
                     {"contrasts", contrasts_json(a)},
                     {"kernel", kernel_json(kernel)},
                     {"subblock_kernel", kernel_json(subblock_kernel)},
                     {"xlims", {grid.xmin, grid.xmax}},
                     {"ylims", {grid.ymin, grid.ymax}},
                     {"grid_spacing", {grid.gx, grid.gy}},
                     {"window_dims", {window_dims.first, window_dims.second}},
                     {"min_points", cfg.min_points}};
  return res;
}

TestResult maity_test(const SpatialDataset& data, const LagSet& lagset,
                      const ContrastMatrix& a, const KernelSpec& kernel,
                      const RegionGrid& grid, std::pair<int, int> block_dims, int n_boot,
                      std::uint64_t seed) {
  const auto [k, r] = validate_hypothesis(lagset, a);
  (void)k;

  TestResult res;
  res.test_name = "maity";
  res.estimates = kernel_semivariogram(data, lagset, kernel);

  WindowConfig cfg;
  cfg.wx = block_dims.first;
  cfg.wy = block_dims.second;
  cfg.sx = block_dims.first;
  cfg.sy = block_dims.second;
  res.sigma = sigma_from_bootstrap(data, grid, cfg, lagset, kernel, n_boot, seed,
                                   &res.warnings);
  res.n_boot = n_boot;
  res.seed = seed;

  res.statistic = test_statistic(res.estimates, res.sigma, a, data.size());
  res.df = static_cast<int>(r);
  res.p_value = chisq_survival(res.statistic, res.df);

  res.config_echo = {{"test", "maity"},
                     {"n", data.size()},
                     {"lags", lags_json(lagset)},
                     {"contrasts", contrasts_json(a)},
                     {"kernel", kernel_json(kernel)},
                     {"xlims", {grid.xmin, grid.xmax}},
                     {"ylims", {grid.ymin, grid.ymax}},
                     {"grid_spacing", {grid.gx, grid.gy}},
                     {"block_dims", {block_dims.first, block_dims.second}},
                     {"n_boot", n_boot},
                     {"seed", seed}};
  return res;
}

}  // namespace spiso
