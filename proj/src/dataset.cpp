#include "spiso/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "spiso/errors.hpp"

namespace spiso {

namespace {

bool near_lattice(double coord, double origin, double step, double tol_scale) {
  const double t = (coord - origin) / step;
  const double snapped = origin + std::round(t) * step;
  return std::fabs(coord - snapped) <= tol_scale;
}

// Fits lattice spacings as the minimal positive differences of the sorted
// unique coordinates; accepts iff every coordinate snaps to a node within
// relative tolerance 1e-9.
std::optional<GridInfo> detect_grid(const std::vector<Point>& locs) {
  std::vector<double> xs, ys;
  xs.reserve(locs.size());
  ys.reserve(locs.size());
  for (const auto& p : locs) {
    xs.push_back(p.x);
    ys.push_back(p.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  if (xs.size() < 2 || ys.size() < 2) return std::nullopt;

  double dx = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) dx = std::min(dx, xs[i] - xs[i - 1]);
  double dy = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < ys.size(); ++i) dy = std::min(dy, ys[i] - ys[i - 1]);

  for (const auto& p : locs) {
    if (!near_lattice(p.x, xs.front(), dx, 1e-9 * std::max(std::fabs(p.x), dx)))
      return std::nullopt;
    if (!near_lattice(p.y, ys.front(), dy, 1e-9 * std::max(std::fabs(p.y), dy)))
      return std::nullopt;
  }
  return GridInfo{dx, dy};
}

Bounds data_bounds(const std::vector<Point>& locs) {
  Bounds b;
  b.xmin = b.ymin = std::numeric_limits<double>::infinity();
  b.xmax = b.ymax = -std::numeric_limits<double>::infinity();
  for (const auto& p : locs) {
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

}  // namespace

SpatialDataset SpatialDataset::create(std::vector<Point> locations,
                                      std::vector<double> values,
                                      std::optional<Bounds> bounds) {
  if (locations.size() != values.size())
    throw ValidationError("dataset: locations and values differ in length");
  if (locations.size() < 4)
    throw ValidationError("dataset: at least 4 locations required, got " +
                          std::to_string(locations.size()));

  // duplicate check on exact coordinate pairs, independent of row order
  std::vector<std::size_t> order(locations.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (locations[a].x != locations[b].x) return locations[a].x < locations[b].x;
    return locations[a].y < locations[b].y;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Point& a = locations[order[i - 1]];
    const Point& b = locations[order[i]];
    if (a.x == b.x && a.y == b.y)
      throw ValidationError("dataset: duplicate location (" + std::to_string(a.x) + ", " +
                            std::to_string(a.y) + ")");
  }

  SpatialDataset d;
  d.bounds_ = bounds ? *bounds : data_bounds(locations);
  for (const auto& p : locations) {
    if (p.x < d.bounds_.xmin || p.x > d.bounds_.xmax || p.y < d.bounds_.ymin ||
        p.y > d.bounds_.ymax)
      throw ValidationError("dataset: location outside declared bounds");
  }
  d.grid_ = detect_grid(locations);
  d.design_ = d.grid_ ? Design::grid : Design::general;
  d.locations_ = std::move(locations);
  d.values_ = std::move(values);
  return d;
}

SpatialDataset SpatialDataset::create_subblock(std::vector<Point> locations,
                                               std::vector<double> values, Design design,
                                               std::optional<GridInfo> grid,
                                               const Bounds& bounds) {
  if (locations.size() != values.size())
    throw ValidationError("dataset: locations and values differ in length");
  SpatialDataset d;
  d.locations_ = std::move(locations);
  d.values_ = std::move(values);
  d.design_ = design;
  d.grid_ = grid;
  d.bounds_ = bounds;
  return d;
}

SpatialDataset SpatialDataset::with_values(std::vector<double> values) const {
  if (values.size() != locations_.size())
    throw ValidationError("dataset: replacement values differ in length");
  SpatialDataset d = *this;
  d.values_ = std::move(values);
  return d;
}

SpatialDataset SpatialDataset::rescaled(double delta) const {
  if (!(delta > 0.0)) throw ValidationError("dataset: rescale delta must be positive");
  SpatialDataset d = *this;
  for (auto& p : d.locations_) {
    p.x /= delta;
    p.y /= delta;
  }
  d.bounds_ = {bounds_.xmin / delta, bounds_.xmax / delta, bounds_.ymin / delta,
               bounds_.ymax / delta};
  if (d.grid_) d.grid_ = GridInfo{grid_->dx / delta, grid_->dy / delta};
  return d;
}

SpatialDataset load_dataset(const std::string& path, bool drop_nonfinite, int* dropped) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw ValidationError(path + ": empty file");
  // tolerate UTF-8 BOM and whitespace in the header
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::string header = line;
  header.erase(std::remove_if(header.begin(), header.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               header.end());
  if (header != "x,y,value")
    throw ValidationError(path + ": expected header 'x,y,value', got '" + line + "'");

  std::vector<Point> locs;
  std::vector<double> vals;
  int n_dropped = 0;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    // strtod accepts "nan"/"inf" spellings that stream extraction would reject
    double f[3];
    const char* p = line.c_str();
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      char* end = nullptr;
      f[i] = std::strtod(p, &end);
      if (end == p) ok = false;
      p = end;
      while (ok && *p != '\0' && std::isspace(static_cast<unsigned char>(*p))) ++p;
      if (i < 2) {
        if (ok && *p == ',')
          ++p;
        else
          ok = false;
      }
    }
    while (ok && *p != '\0' && std::isspace(static_cast<unsigned char>(*p))) ++p;
    if (!ok || *p != '\0')
      throw ValidationError(path + ": parse failure at row " + std::to_string(row));
    if (!std::isfinite(f[0]) || !std::isfinite(f[1]))
      throw ValidationError(path + ": non-finite coordinate at row " + std::to_string(row));
    if (!std::isfinite(f[2])) {
      if (drop_nonfinite) {
        ++n_dropped;
        continue;
      }
      throw ValidationError(path + ": non-finite response at row " + std::to_string(row) +
                            " (pass --drop-missing to skip such rows)");
    }
    locs.push_back({f[0], f[1]});
    vals.push_back(f[2]);
  }
  if (dropped) *dropped = n_dropped;
  return SpatialDataset::create(std::move(locs), std::move(vals));
}

void write_dataset(std::ostream& os, const SpatialDataset& data) {
  os << "x,y,value\n";
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    ss.str("");
    ss << data.locations()[i].x << ',' << data.locations()[i].y << ','
       << data.values()[i] << '\n';
    os << ss.str();
  }
}

}  // namespace spiso
