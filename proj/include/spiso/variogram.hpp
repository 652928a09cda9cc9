#ifndef SPISO_VARIOGRAM_HPP
#define SPISO_VARIOGRAM_HPP

#include <vector>

#include "spiso/dataset.hpp"
#include "spiso/hypothesis.hpp"

namespace spiso {

enum class KernelFamily { gaussian, epanechnikov, uniform_box };

struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double bandwidth = 0.7;   // in lag-coordinate units
  double truncation = 1.5;  // support radius in bandwidth units, gaussian only
};

// One-dimensional kernel value K(u); unnormalized (constants cancel in the
// weighted-mean ratio).
double kernel_weight(const KernelSpec& kernel, double u);

struct SemivariogramEstimate {
  LagSet lagset;
  std::vector<double> gammas;   // one per lag, >= 0
  std::vector<double> support;  // pair count (grid) or kernel weight sum (general)
};

// Classical moment estimator on a gridded design: half the mean squared
// difference over all pairs separated exactly by each lag. Lags must be
// integer multiples of the lattice spacings.
SemivariogramEstimate classical_semivariogram(const SpatialDataset& data,
                                              const LagSet& lagset);

// Product-kernel estimator for general designs, smoothing over both lag
// components. Each unordered pair contributes at both d and -d, so the
// estimate is exactly even in h.
SemivariogramEstimate kernel_semivariogram(const SpatialDataset& data, const LagSet& lagset,
                                           const KernelSpec& kernel);

struct DirectionalBinSpec {
  std::vector<double> angles = {0.0, 45.0, 90.0, 135.0};  // degrees, mod 180
  double angle_tolerance = 22.5;                          // degrees
  std::vector<double> distance_bins;                      // strictly increasing edges
};

// 13 equal-width bins up to half the domain diameter.
std::vector<double> default_distance_bins(const SpatialDataset& data);

struct DirectionalCell {
  double angle = 0.0;
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double gamma = 0.0;
  long npairs = 0;
};

// Binned directional estimates for diagnostics; cells with no pairs are
// omitted. Throws if no pair matched any cell.
std::vector<DirectionalCell> directional_semivariogram(const SpatialDataset& data,
                                                       const DirectionalBinSpec& bins);

}  // namespace spiso

#endif
