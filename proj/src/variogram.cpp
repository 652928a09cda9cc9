#include "spiso/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>

#include "spiso/errors.hpp"

namespace spiso {

double kernel_weight(const KernelSpec& kernel, double u) {
  switch (kernel.family) {
    case KernelFamily::gaussian:
      if (std::fabs(u) > kernel.truncation) return 0.0;
      return std::exp(-0.5 * u * u);
    case KernelFamily::epanechnikov:
      if (std::fabs(u) > 1.0) return 0.0;
      return 0.75 * (1.0 - u * u);
    case KernelFamily::uniform_box:
      return std::fabs(u) <= 1.0 ? 0.5 : 0.0;
  }
  return 0.0;
}

namespace {

std::int64_t lattice_key(std::int32_t ix, std::int32_t iy) {
  return (static_cast<std::int64_t>(static_cast<std::uint32_t>(ix)) << 32) |
         static_cast<std::uint32_t>(iy);
}

// Nearest integer multiple; throws if the value is not a multiple of step.
int lattice_steps(double value, double step, const std::string& what) {
  const double t = value / step;
  const double r = std::round(t);
  if (std::fabs(value - r * step) > 1e-9 * std::max(std::fabs(value), step))
    throw ValidationError(what + ": " + std::to_string(value) +
                          " is not an integer multiple of the lattice spacing " +
                          std::to_string(step));
  return static_cast<int>(r);
}

}  // namespace

SemivariogramEstimate classical_semivariogram(const SpatialDataset& data,
                                              const LagSet& lagset) {
  if (data.design() != Design::grid || !data.grid())
    throw ValidationError("classical semivariogram requires a gridded design");
  const GridInfo g = *data.grid();
  const auto& locs = data.locations();
  const auto& vals = data.values();

  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  for (const auto& p : locs) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
  }

  std::unordered_map<std::int64_t, std::size_t> node_of;
  node_of.reserve(locs.size() * 2);
  std::vector<std::int32_t> ix(locs.size()), iy(locs.size());
  for (std::size_t i = 0; i < locs.size(); ++i) {
    ix[i] = static_cast<std::int32_t>(std::llround((locs[i].x - x0) / g.dx));
    iy[i] = static_cast<std::int32_t>(std::llround((locs[i].y - y0) / g.dy));
    node_of[lattice_key(ix[i], iy[i])] = i;
  }

  SemivariogramEstimate est{lagset, {}, {}};
  est.gammas.reserve(lagset.size());
  est.support.reserve(lagset.size());
  for (const Lag& lag : lagset.lags()) {
    const int a = lattice_steps(lag.h1, g.dx, "lag h1");
    const int b = lattice_steps(lag.h2, g.dy, "lag h2");
    double sum = 0.0;
    long count = 0;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      const auto it = node_of.find(lattice_key(ix[i] + a, iy[i] + b));
      if (it == node_of.end()) continue;
      const double diff = vals[i] - vals[it->second];
      sum += diff * diff;
      ++count;
    }
    if (count == 0)
      throw ValidationError("classical semivariogram: no pair at lag (" +
                            std::to_string(lag.h1) + ", " + std::to_string(lag.h2) + ")");
    est.gammas.push_back(sum / (2.0 * static_cast<double>(count)));
    est.support.push_back(static_cast<double>(count));
  }
  return est;
}

SemivariogramEstimate kernel_semivariogram(const SpatialDataset& data, const LagSet& lagset,
                                           const KernelSpec& kernel) {
  if (!(kernel.bandwidth > 0.0))
    throw ValidationError("kernel semivariogram: bandwidth must be positive");
  if (!(kernel.truncation > 0.0))
    throw ValidationError("kernel semivariogram: truncation must be positive");
  const auto& locs = data.locations();
  const auto& vals = data.values();
  const std::size_t n = locs.size();
  const std::size_t k = lagset.size();
  const double bw = kernel.bandwidth;

  std::vector<double> wsum(k, 0.0), wssq(k, 0.0);
  std::vector<double> nearest(k, std::numeric_limits<double>::infinity());
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double d1 = locs[q].x - locs[p].x;
      const double d2 = locs[q].y - locs[p].y;
      const double diff = vals[p] - vals[q];
      const double sq = diff * diff;
      for (std::size_t i = 0; i < k; ++i) {
        const Lag& h = lagset[i];
        // the pair at both orientations, so the estimate is even in h
        const double w = kernel_weight(kernel, (h.h1 - d1) / bw) *
                             kernel_weight(kernel, (h.h2 - d2) / bw) +
                         kernel_weight(kernel, (h.h1 + d1) / bw) *
                             kernel_weight(kernel, (h.h2 + d2) / bw);
        if (w > 0.0) {
          wsum[i] += w;
          wssq[i] += w * sq;
        } else {
          const double da = std::hypot(h.h1 - d1, h.h2 - d2);
          const double db = std::hypot(h.h1 + d1, h.h2 + d2);
          nearest[i] = std::min(nearest[i], std::min(da, db));
        }
      }
    }
  }

  SemivariogramEstimate est{lagset, {}, {}};
  est.gammas.reserve(k);
  est.support.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!(wsum[i] > 0.0))
      throw ValidationError(
          "kernel semivariogram: zero total weight at lag (" +
          std::to_string(lagset[i].h1) + ", " + std::to_string(lagset[i].h2) +
          "); nearest pair separation is " + std::to_string(nearest[i]) +
          " away in lag space");
    est.gammas.push_back(wssq[i] / (2.0 * wsum[i]));
    est.support.push_back(wsum[i]);
  }
  return est;
}

std::vector<double> default_distance_bins(const SpatialDataset& data) {
  const Bounds& b = data.bounds();
  const double diameter = std::hypot(b.xmax - b.xmin, b.ymax - b.ymin);
  const double upper = 0.5 * diameter;
  std::vector<double> edges;
  const int nbins = 13;
  for (int i = 0; i <= nbins; ++i)
    edges.push_back(upper * static_cast<double>(i) / nbins);
  return edges;
}

std::vector<DirectionalCell> directional_semivariogram(const SpatialDataset& data,
                                                       const DirectionalBinSpec& bins) {
  if (!(bins.angle_tolerance > 0.0))
    throw ValidationError("directional semivariogram: angle tolerance must be positive");
  if (bins.angles.empty())
    throw ValidationError("directional semivariogram: no angles given");
  const std::vector<double> edges =
      bins.distance_bins.empty() ? default_distance_bins(data) : bins.distance_bins;
  if (edges.size() < 2)
    throw ValidationError("directional semivariogram: need at least 2 bin edges");
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw ValidationError("directional semivariogram: bin edges must be strictly increasing");

  const std::size_t na = bins.angles.size();
  const std::size_t nb = edges.size() - 1;
  std::vector<double> sum(na * nb, 0.0);
  std::vector<long> count(na * nb, 0);

  const auto& locs = data.locations();
  const auto& vals = data.values();
  for (std::size_t p = 0; p < locs.size(); ++p) {
    for (std::size_t q = p + 1; q < locs.size(); ++q) {
      const double d1 = locs[q].x - locs[p].x;
      const double d2 = locs[q].y - locs[p].y;
      const double dist = std::hypot(d1, d2);
      if (dist == 0.0) continue;
      const double dir = std::atan2(d2, d1) * 180.0 / M_PI;  // any representative mod 180
      const auto bin_it = std::upper_bound(edges.begin(), edges.end(), dist);
      if (bin_it == edges.begin() || bin_it == edges.end()) continue;
      const std::size_t bin = static_cast<std::size_t>(bin_it - edges.begin()) - 1;
      const double diff = vals[p] - vals[q];
      for (std::size_t ai = 0; ai < na; ++ai) {
        double delta = std::fmod(dir - bins.angles[ai], 180.0);
        if (delta > 90.0) delta -= 180.0;
        if (delta <= -90.0) delta += 180.0;
        if (std::fabs(delta) <= bins.angle_tolerance) {
          sum[ai * nb + bin] += diff * diff;
          count[ai * nb + bin] += 1;
        }
      }
    }
  }

  std::vector<DirectionalCell> table;
  for (std::size_t ai = 0; ai < na; ++ai) {
    for (std::size_t bi = 0; bi < nb; ++bi) {
      const long c = count[ai * nb + bi];
      if (c == 0) continue;
      table.push_back({bins.angles[ai], edges[bi], edges[bi + 1],
                       sum[ai * nb + bi] / (2.0 * static_cast<double>(c)), c});
    }
  }
  if (table.empty())
    throw ValidationError("directional semivariogram: no pair matched any cell");
  return table;
}

}  // namespace spiso
