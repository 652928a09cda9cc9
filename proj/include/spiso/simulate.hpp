#ifndef SPISO_SIMULATE_HPP
#define SPISO_SIMULATE_HPP

#include <cstddef>
#include <vector>

#include "spiso/dataset.hpp"
#include "spiso/numstats.hpp"

namespace spiso {

enum class CovFamily { exponential, gaussian };

// Stationary covariance model with optional geometric anisotropy, realized
// as a rotate-then-stretch of the lag before taking Euclidean distance.
struct CovarianceModel {
  CovFamily family = CovFamily::exponential;
  double sill = 1.0;     // sigma^2
  double range = 1.0;    // phi
  double nugget = 0.0;   // tau^2, added at lag zero only
  double aniso_angle_deg = 0.0;
  double aniso_ratio = 1.0;  // >= 1; ratio 1 is isotropic

  void validate() const;
};

// C(h): rotate h by -angle, stretch the second coordinate by ratio, apply the
// isotropic family to the resulting distance.
double covariance_at(const CovarianceModel& model, double h1, double h2);

// gamma(h) = C(0) - C(h)
double model_semivariogram(const CovarianceModel& model, double h1, double h2);

// Mean-zero Gaussian random field draw at the given locations by dense
// Cholesky factorization (n <= 4096). Diagonal jitter starts at 1e-10*sill
// and escalates to 1e-6*sill before giving up.
SpatialDataset simulate_grf(const std::vector<Point>& locations,
                            const CovarianceModel& model, RandomStream& rng);

// n i.i.d. uniform points on the rectangle.
std::vector<Point> uniform_locations(std::size_t n, double xmin, double xmax, double ymin,
                                     double ymax, RandomStream& rng);

// nx x ny rectangular lattice with given spacings, origin at (0, 0).
std::vector<Point> grid_locations(std::size_t nx, std::size_t ny, double dx, double dy);

}  // namespace spiso

#endif
