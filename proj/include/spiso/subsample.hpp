#ifndef SPISO_SUBSAMPLE_HPP
#define SPISO_SUBSAMPLE_HPP

#include <string>
#include <vector>

#include "spiso/dataset.hpp"
#include "spiso/numstats.hpp"

namespace spiso {

// Grid laid over the sampling region; cells have width gx and height gy.
struct RegionGrid {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  double gx = 1.0, gy = 1.0;

  int cols() const;
  int rows() const;
  void validate(const Bounds& data_bounds) const;
};

struct WindowConfig {
  int wx = 2, wy = 2;  // window size in grid cells
  int sx = 1, sy = 1;  // stride in grid cells (wx, wy for tiling blocks)
  int min_points = 0;  // minimum locations per window, general designs
};

// Axis-aligned subregion; membership is [lo, hi) per axis except where the
// window touches the region's global upper boundary, which is closed so that
// tilings partition the data.
struct WindowRect {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  bool x_closed_hi = false;
  bool y_closed_hi = false;

  bool contains(const Point& p) const {
    const bool x_ok = p.x >= xlo && (p.x < xhi || (x_closed_hi && p.x == xhi));
    const bool y_ok = p.y >= ylo && (p.y < yhi || (y_closed_hi && p.y == yhi));
    return x_ok && y_ok;
  }
};

// All windows of size (wx*gx, wy*gy) at stride offsets fully inside the
// region, row-major. Appends a warning (not an error) when the stride does
// not evenly cover the region.
std::vector<WindowRect> enumerate_windows(const RegionGrid& grid, const WindowConfig& cfg,
                                          std::vector<std::string>* warnings = nullptr);

// Dataset restricted to the window, coordinates translated so the window's
// lower-left corner is the origin. May be empty; the caller filters.
SpatialDataset extract_subblock(const SpatialDataset& data, const WindowRect& window);

// Grid-based block bootstrap: for each tile of the tiling defined by cfg
// (stride = dims), draw one source tile uniformly with replacement from the
// non-empty tiles and translate its points into place.
SpatialDataset resample_blocks(const SpatialDataset& data, const RegionGrid& grid,
                               const WindowConfig& cfg, RandomStream& rng);

}  // namespace spiso

#endif
