#include "spiso/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spiso/errors.hpp"

namespace spiso {

namespace {

Matrix scaled_scatter(const std::vector<std::vector<double>>& estimates, double scale) {
  const std::size_t m = estimates.size();
  const std::size_t k = estimates.front().size();
  std::vector<double> mean(k, 0.0);
  for (const auto& g : estimates)
    for (std::size_t i = 0; i < k; ++i) mean[i] += g[i];
  for (auto& v : mean) v /= static_cast<double>(m);

  Matrix sigma(k, k);
  for (const auto& g : estimates) {
    for (std::size_t i = 0; i < k; ++i) {
      const double di = g[i] - mean[i];
      for (std::size_t j = 0; j < k; ++j) sigma(i, j) += di * (g[j] - mean[j]);
    }
  }
  const double f = scale / static_cast<double>(m);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sigma(i, j) *= f;
  return sigma;
}

}  // namespace

CovarianceEstimate sigma_from_subblocks(const SpatialDataset& data, const RegionGrid& grid,
                                        const WindowConfig& cfg, const LagSet& lagset,
                                        const std::optional<KernelSpec>& estimator_kernel,
                                        std::vector<std::string>* warnings) {
  grid.validate(data.bounds());
  const std::vector<WindowRect> windows = enumerate_windows(grid, cfg, warnings);

  std::vector<std::vector<double>> block_estimates;
  double point_total = 0.0;
  int discarded_small = 0;
  int discarded_support = 0;
  for (const WindowRect& w : windows) {
    const SpatialDataset sub = extract_subblock(data, w);
    if (sub.size() < static_cast<std::size_t>(std::max(cfg.min_points, 2))) {
      ++discarded_small;
      continue;
    }
    try {
      const SemivariogramEstimate est =
          estimator_kernel ? kernel_semivariogram(sub, lagset, *estimator_kernel)
                           : classical_semivariogram(sub, lagset);
      block_estimates.push_back(est.gammas);
      point_total += static_cast<double>(sub.size());
    } catch (const ValidationError&) {
      ++discarded_support;
    }
  }
  if (warnings && discarded_small > 0)
    warnings->push_back(std::to_string(discarded_small) +
                        " subblock(s) discarded: too few sampling locations");
  if (warnings && discarded_support > 0)
    warnings->push_back(std::to_string(discarded_support) +
                        " subblock(s) discarded: some lag unsupported");
  if (block_estimates.size() < 2)
    throw ValidationError("subblock covariance: only " +
                          std::to_string(block_estimates.size()) +
                          " usable subblock(s); at least 2 required");

  const double n_b = point_total / static_cast<double>(block_estimates.size());
  CovarianceEstimate out;
  out.matrix = scaled_scatter(block_estimates, n_b);
  out.source = SubblockSource{static_cast<int>(block_estimates.size()), cfg.wx, cfg.wy};
  out.block_estimates = std::move(block_estimates);
  out.n_block = n_b;
  return out;
}

CovarianceEstimate sigma_from_bootstrap(const SpatialDataset& data, const RegionGrid& grid,
                                        const WindowConfig& cfg, const LagSet& lagset,
                                        const KernelSpec& kernel, int n_boot,
                                        std::uint64_t seed,
                                        std::vector<std::string>* warnings) {
  grid.validate(data.bounds());
  if (n_boot < 2) throw ValidationError("bootstrap covariance: n_boot must be >= 2");
  if (warnings && n_boot < 50)
    warnings->push_back("n_boot = " + std::to_string(n_boot) +
                        " is below the recommended minimum of 50");

  std::vector<std::vector<double>> replicate_estimates;
  replicate_estimates.reserve(n_boot);
  for (int b = 0; b < n_boot; ++b) {
    RandomStream rng(seed, static_cast<std::uint64_t>(b) + 1);
    bool done = false;
    for (int attempt = 0; attempt < 10 && !done; ++attempt) {
      const SpatialDataset resampled = resample_blocks(data, grid, cfg, rng);
      try {
        replicate_estimates.push_back(
            kernel_semivariogram(resampled, lagset, kernel).gammas);
        done = true;
      } catch (const ValidationError&) {
        // redraw
      }
    }
    if (!done)
      throw NumericalError("bootstrap covariance: replicate " + std::to_string(b + 1) +
                           " failed lag support after 10 redraws");
  }

  CovarianceEstimate out;
  out.matrix = scaled_scatter(replicate_estimates, static_cast<double>(data.size()));
  out.source = BootstrapSource{n_boot, cfg.wx, cfg.wy, seed};
  out.n_block = static_cast<double>(data.size());
  return out;
}

double finite_sample_pvalue(const std::vector<std::vector<double>>& block_estimates,
                            const CovarianceEstimate& sigma, const ContrastMatrix& a,
                            double ts_full) {
  const std::size_t m = block_estimates.size();
  if (m < 2)
    throw ValidationError("finite-sample p-value: at least 2 block estimates required");
  const std::size_t k = a.col_count();
  const std::size_t r = a.row_count();

  std::vector<double> mean(k, 0.0);
  for (const auto& g : block_estimates)
    for (std::size_t i = 0; i < k; ++i) mean[i] += g[i];
  for (auto& v : mean) v /= static_cast<double>(m);

  const Matrix contrast_cov =
      matmul(matmul(a.entries(), sigma.matrix), a.entries().transposed());
  Matrix chol;
  try {
    chol = cholesky_lower(contrast_cov);
  } catch (const NumericalError&) {
    throw NumericalError(
        "finite-sample p-value: singular contrast covariance (collinear contrasts or too "
        "few blocks)");
  }

  // quad = c^T (L L^T)^{-1} c = || L^{-1} c ||^2
  const auto quad_form = [&](const std::vector<double>& c) {
    std::vector<double> y(r);
    for (std::size_t i = 0; i < r; ++i) {
      double s = c[i];
      for (std::size_t l = 0; l < i; ++l) s -= chol(i, l) * y[l];
      y[i] = s / chol(i, i);
    }
    double q = 0.0;
    for (std::size_t i = 0; i < r; ++i) q += y[i] * y[i];
    return q;
  };

  long exceed = 0;
  for (const auto& g : block_estimates) {
    std::vector<double> centered(k);
    for (std::size_t i = 0; i < k; ++i) centered[i] = g[i] - mean[i];
    const double t_m = sigma.n_block * quad_form(matvec(a.entries(), centered));
    if (t_m >= ts_full) ++exceed;
  }
  return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(m) + 1.0);
}

}  // namespace spiso
