#ifndef SPISO_ISOTEST_HPP
#define SPISO_ISOTEST_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spiso/dataset.hpp"
#include "spiso/hypothesis.hpp"
#include "spiso/sigma.hpp"
#include "spiso/subsample.hpp"
#include "spiso/variogram.hpp"

#include "json.hpp"

namespace spiso {

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  int df = 0;
  double p_value = 1.0;
  std::optional<double> p_value_finite;
  SemivariogramEstimate estimates;
  CovarianceEstimate sigma;
  int n_subblocks = 0;
  int n_boot = 0;
  std::optional<std::uint64_t> seed;
  nlohmann::json config_echo;
  std::vector<std::string> warnings;
};

// TS = n (A Ghat)^T (A Sigma A^T)^{-1} (A Ghat). Zero iff A Ghat = 0.
// Fails loudly when the contrast covariance has condition number above 1e12.
double test_statistic(const SemivariogramEstimate& ghat, const CovarianceEstimate& sigma,
                      const ContrastMatrix& a, std::size_t n);

// Gridded-design test: classical semivariogram on delta-rescaled coordinates,
// Sigma from stride-1 moving windows, chi-square p-value at df = row rank of A,
// optional finite-sample adjusted p-value.
TestResult guan_test_grid(const SpatialDataset& data, double delta, const LagSet& lagset,
                          const ContrastMatrix& a, std::pair<int, int> window_dims,
                          bool finite_adjust);

// Uniform-design test: product-kernel semivariogram on the full domain, Sigma
// from moving-window subblocks estimated with subblock_kernel.
TestResult guan_test_unif(const SpatialDataset& data, const LagSet& lagset,
                          const ContrastMatrix& a, const KernelSpec& kernel,
                          const RegionGrid& grid, std::pair<int, int> window_dims,
                          const KernelSpec& subblock_kernel);

// General-design test: kernel semivariogram on the full data, Sigma from the
// grid-based block bootstrap. The bootstrap feeds only Sigma; the p-value is
// still the asymptotic chi-square tail.
TestResult maity_test(const SpatialDataset& data, const LagSet& lagset,
                      const ContrastMatrix& a, const KernelSpec& kernel,
                      const RegionGrid& grid, std::pair<int, int> block_dims, int n_boot,
                      std::uint64_t seed);

}  // namespace spiso

#endif
