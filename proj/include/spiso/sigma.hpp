#ifndef SPISO_SIGMA_HPP
#define SPISO_SIGMA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spiso/hypothesis.hpp"
#include "spiso/subsample.hpp"
#include "spiso/variogram.hpp"

namespace spiso {

struct SubblockSource {
  int count = 0;
  int wx = 0, wy = 0;
};

struct BootstrapSource {
  int replicates = 0;
  int bx = 0, by = 0;
  std::uint64_t seed = 0;
};

// Estimate of the asymptotic variance-covariance matrix of the lag-estimate
// vector, on the scale Cov(G_hat) ~ matrix / n.
struct CovarianceEstimate {
  Matrix matrix;  // k x k, symmetric PSD
  std::variant<SubblockSource, BootstrapSource> source;
  std::vector<std::vector<double>> block_estimates;  // per-subblock G_hat, subsampling only
  double n_block = 0.0;                              // locations per subblock (n_b)
};

// Moving-window subsampling estimate: Sigma = n_b * (1/M) sum (G_m - Gbar)(G_m - Gbar)^T
// over the M usable subblocks. Subblocks that cannot support every lag, or
// that hold fewer than cfg.min_points locations, are discarded with a warning.
// estimator_kernel empty selects the classical grid estimator on each window.
CovarianceEstimate sigma_from_subblocks(const SpatialDataset& data, const RegionGrid& grid,
                                        const WindowConfig& cfg, const LagSet& lagset,
                                        const std::optional<KernelSpec>& estimator_kernel,
                                        std::vector<std::string>* warnings = nullptr);

// Grid-based block bootstrap estimate: Sigma = n * sample covariance (divisor
// n_boot) of the kernel lag estimates over n_boot resampled datasets.
CovarianceEstimate sigma_from_bootstrap(const SpatialDataset& data, const RegionGrid& grid,
                                        const WindowConfig& cfg, const LagSet& lagset,
                                        const KernelSpec& kernel, int n_boot,
                                        std::uint64_t seed,
                                        std::vector<std::string>* warnings = nullptr);

// Finite-sample adjusted p-value: empirical add-one tail of the per-subblock
// quadratic forms T_m = n_b (A(G_m - Gbar))^T (A Sigma A^T)^{-1} (A(G_m - Gbar))
// against the full-data statistic. Lies in [1/(M+1), 1].
double finite_sample_pvalue(const std::vector<std::vector<double>>& block_estimates,
                            const CovarianceEstimate& sigma, const ContrastMatrix& a,
                            double ts_full);

}  // namespace spiso

#endif
