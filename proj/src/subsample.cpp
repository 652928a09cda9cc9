#include "spiso/subsample.hpp"

#include <cmath>
#include <string>

#include "spiso/errors.hpp"

namespace spiso {

int RegionGrid::cols() const {
  return static_cast<int>(std::lround((xmax - xmin) / gx));
}

int RegionGrid::rows() const {
  return static_cast<int>(std::lround((ymax - ymin) / gy));
}

void RegionGrid::validate(const Bounds& data_bounds) const {
  if (!(gx > 0.0) || !(gy > 0.0))
    throw ValidationError("region grid: spacings must be positive");
  if (cols() < 1 || rows() < 1)
    throw ValidationError("region grid: region smaller than one cell");
  if (data_bounds.xmin < xmin || data_bounds.xmax > xmax || data_bounds.ymin < ymin ||
      data_bounds.ymax > ymax)
    throw ValidationError("region grid: region does not contain the data bounds");
}

std::vector<WindowRect> enumerate_windows(const RegionGrid& grid, const WindowConfig& cfg,
                                          std::vector<std::string>* warnings) {
  const int c = grid.cols();
  const int r = grid.rows();
  if (cfg.wx < 1 || cfg.wy < 1 || cfg.sx < 1 || cfg.sy < 1)
    throw ValidationError("window config: dims and stride must be >= 1");
  if (cfg.wx > c || cfg.wy > r)
    throw ValidationError("window config: window " + std::to_string(cfg.wx) + "x" +
                          std::to_string(cfg.wy) + " larger than the " + std::to_string(c) +
                          "x" + std::to_string(r) + " region grid");
  if (warnings && ((c - cfg.wx) % cfg.sx != 0 || (r - cfg.wy) % cfg.sy != 0))
    warnings->push_back("window dims " + std::to_string(cfg.wx) + "x" +
                        std::to_string(cfg.wy) + " with stride " + std::to_string(cfg.sx) +
                        "x" + std::to_string(cfg.sy) +
                        " do not evenly cover the region grid (" + std::to_string(c) + "x" +
                        std::to_string(r) + " cells); partial blocks are skipped");

  std::vector<WindowRect> windows;
  for (int j = 0; j * cfg.sy + cfg.wy <= r; ++j) {
    for (int i = 0; i * cfg.sx + cfg.wx <= c; ++i) {
      WindowRect w;
      w.xlo = grid.xmin + i * cfg.sx * grid.gx;
      w.xhi = w.xlo + cfg.wx * grid.gx;
      w.ylo = grid.ymin + j * cfg.sy * grid.gy;
      w.yhi = w.ylo + cfg.wy * grid.gy;
      w.x_closed_hi = (i * cfg.sx + cfg.wx == c);
      w.y_closed_hi = (j * cfg.sy + cfg.wy == r);
      windows.push_back(w);
    }
  }
  return windows;
}

SpatialDataset extract_subblock(const SpatialDataset& data, const WindowRect& window) {
  std::vector<Point> locs;
  std::vector<double> vals;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const Point& p = data.locations()[i];
    if (!window.contains(p)) continue;
    locs.push_back({p.x - window.xlo, p.y - window.ylo});
    vals.push_back(data.values()[i]);
  }
  const Bounds b{0.0, window.xhi - window.xlo, 0.0, window.yhi - window.ylo};
  return SpatialDataset::create_subblock(std::move(locs), std::move(vals), data.design(),
                                         data.grid(), b);
}

SpatialDataset resample_blocks(const SpatialDataset& data, const RegionGrid& grid,
                               const WindowConfig& cfg, RandomStream& rng) {
  WindowConfig tiling = cfg;
  tiling.sx = cfg.wx;
  tiling.sy = cfg.wy;
  const std::vector<WindowRect> tiles = enumerate_windows(grid, tiling);

  // membership lists per tile, in original point order
  std::vector<std::vector<std::size_t>> members(tiles.size());
  for (std::size_t t = 0; t < tiles.size(); ++t)
    for (std::size_t i = 0; i < data.size(); ++i)
      if (tiles[t].contains(data.locations()[i])) members[t].push_back(i);

  std::vector<std::size_t> nonempty;
  for (std::size_t t = 0; t < tiles.size(); ++t)
    if (!members[t].empty()) nonempty.push_back(t);
  if (nonempty.empty()) throw ValidationError("block resample: all tiles are empty");

  std::vector<Point> locs;
  std::vector<double> vals;
  locs.reserve(data.size());
  vals.reserve(data.size());
  for (const WindowRect& target : tiles) {
    const std::size_t src = nonempty[rng.uniform_int(nonempty.size())];
    const WindowRect& source = tiles[src];
    for (std::size_t i : members[src]) {
      const Point& p = data.locations()[i];
      locs.push_back({p.x - source.xlo + target.xlo, p.y - source.ylo + target.ylo});
      vals.push_back(data.values()[i]);
    }
  }
  // resampled points may repeat coordinates across tiles; design reverts to
  // general since lattice alignment is not guaranteed after translation
  const Bounds b{grid.xmin, grid.xmax, grid.ymin, grid.ymax};
  return SpatialDataset::create_subblock(std::move(locs), std::move(vals), Design::general,
                                         std::nullopt, b);
}

}  // namespace spiso
