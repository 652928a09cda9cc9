#include "spiso/detrend.hpp"

#include <cmath>
#include <string>

#include "spiso/errors.hpp"
#include "spiso/numstats.hpp"

namespace spiso {

std::vector<double> polynomial_detrend(const SpatialDataset& data, int degree) {
  if (degree < 1 || degree > 3)
    throw ValidationError("detrend: degree must be 1, 2, or 3");
  std::vector<std::pair<int, int>> terms;
  for (int total = 0; total <= degree; ++total)
    for (int i = 0; i <= total; ++i) terms.push_back({total - i, i});
  const std::size_t p = terms.size();
  const std::size_t n = data.size();
  if (n <= p)
    throw ValidationError("detrend: need more than " + std::to_string(p) +
                          " observations for degree " + std::to_string(degree));

  // coordinates centered and scaled to [-1, 1] before building monomials
  const Bounds& b = data.bounds();
  const double cx = 0.5 * (b.xmin + b.xmax), sx = std::max(0.5 * (b.xmax - b.xmin), 1e-300);
  const double cy = 0.5 * (b.ymin + b.ymax), sy = std::max(0.5 * (b.ymax - b.ymin), 1e-300);

  Matrix design(n, p);
  for (std::size_t row = 0; row < n; ++row) {
    const double u = (data.locations()[row].x - cx) / sx;
    const double v = (data.locations()[row].y - cy) / sy;
    for (std::size_t c = 0; c < p; ++c)
      design(row, c) = std::pow(u, terms[c].first) * std::pow(v, terms[c].second);
  }

  // normal equations
  Matrix xtx(p, p);
  std::vector<double> xty(p, 0.0);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) xtx(i, j) += design(row, i) * design(row, j);
      xty[i] += design(row, i) * data.values()[row];
    }
  }
  std::vector<double> beta;
  try {
    beta = solve_spd(xtx, xty);
  } catch (const NumericalError&) {
    throw ValidationError("detrend: rank-deficient design matrix (collinear coordinates)");
  }

  std::vector<double> residuals(n);
  for (std::size_t row = 0; row < n; ++row) {
    double fit = 0.0;
    for (std::size_t c = 0; c < p; ++c) fit += design(row, c) * beta[c];
    residuals[row] = data.values()[row] - fit;
  }
  return residuals;
}

}  // namespace spiso
