#include "spiso/simulate.hpp"

#include <cmath>
#include <string>

#include "spiso/errors.hpp"

namespace spiso {

void CovarianceModel::validate() const {
  if (!(sill > 0.0)) throw ValidationError("covariance model: sill must be positive");
  if (!(range > 0.0)) throw ValidationError("covariance model: range must be positive");
  if (nugget < 0.0) throw ValidationError("covariance model: nugget must be nonnegative");
  if (!(aniso_ratio >= 1.0))
    throw ValidationError("covariance model: anisotropy ratio must be >= 1");
}

double covariance_at(const CovarianceModel& model, double h1, double h2) {
  const double theta = model.aniso_angle_deg * M_PI / 180.0;
  const double c = std::cos(-theta), s = std::sin(-theta);
  const double u = c * h1 - s * h2;
  const double v = (s * h1 + c * h2) * model.aniso_ratio;
  const double d = std::hypot(u, v);
  double cov = 0.0;
  switch (model.family) {
    case CovFamily::exponential:
      cov = model.sill * std::exp(-d / model.range);
      break;
    case CovFamily::gaussian:
      cov = model.sill * std::exp(-(d / model.range) * (d / model.range));
      break;
  }
  if (h1 == 0.0 && h2 == 0.0) cov += model.nugget;
  return cov;
}

double model_semivariogram(const CovarianceModel& model, double h1, double h2) {
  return covariance_at(model, 0.0, 0.0) - covariance_at(model, h1, h2);
}

SpatialDataset simulate_grf(const std::vector<Point>& locations,
                            const CovarianceModel& model, RandomStream& rng) {
  model.validate();
  const std::size_t n = locations.size();
  if (n > 4096)
    throw ValidationError("simulate_grf: dense factorization budget is n <= 4096, got " +
                          std::to_string(n));

  Matrix cov(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = covariance_at(model, locations[i].x - locations[j].x,
                                     locations[i].y - locations[j].y);
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }

  Matrix chol;
  bool ok = false;
  for (double jitter = 1e-10 * model.sill; jitter <= 1e-6 * model.sill; jitter *= 10.0) {
    Matrix jittered = cov;
    for (std::size_t i = 0; i < n; ++i) jittered(i, i) += jitter;
    try {
      chol = cholesky_lower(jittered);
      ok = true;
      break;
    } catch (const NumericalError&) {
      // escalate jitter
    }
  }
  if (!ok)
    throw NumericalError("simulate_grf: covariance factorization failed after jitter "
                         "escalation to 1e-6 * sill");

  std::vector<double> z(n);
  for (auto& v : z) v = rng.normal();
  std::vector<double> values(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += chol(i, j) * z[j];
    values[i] = s;
  }
  return SpatialDataset::create(locations, std::move(values));
}

std::vector<Point> uniform_locations(std::size_t n, double xmin, double xmax, double ymin,
                                     double ymax, RandomStream& rng) {
  if (n < 1) throw ValidationError("uniform_locations: n must be >= 1");
  if (!(xmax > xmin) || !(ymax > ymin))
    throw ValidationError("uniform_locations: degenerate rectangle");
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = xmin + (xmax - xmin) * rng.uniform01();
    p.y = ymin + (ymax - ymin) * rng.uniform01();
  }
  return pts;
}

std::vector<Point> grid_locations(std::size_t nx, std::size_t ny, double dx, double dy) {
  if (nx < 1 || ny < 1) throw ValidationError("grid_locations: empty grid");
  std::vector<Point> pts;
  pts.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      pts.push_back({static_cast<double>(i) * dx, static_cast<double>(j) * dy});
  return pts;
}

}  // namespace spiso
