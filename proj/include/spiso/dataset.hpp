#ifndef SPISO_DATASET_HPP
#define SPISO_DATASET_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spiso {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct Bounds {
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
};

// Lattice spacings of a gridded design.
struct GridInfo {
  double dx = 0.0;
  double dy = 0.0;
};

enum class Design { grid, general };

// Immutable set of n planar sampling locations with one scalar response each.
// Construction validates: distinct locations, n >= 4, bounds containment,
// and (for grids) coincidence with a rectangular lattice.
class SpatialDataset {
 public:
  // Validates invariants and auto-detects the design.
  static SpatialDataset create(std::vector<Point> locations, std::vector<double> values,
                               std::optional<Bounds> bounds = std::nullopt);

  // Skips the n >= 4 check; used for subblocks, which may be small or empty.
  static SpatialDataset create_subblock(std::vector<Point> locations,
                                        std::vector<double> values, Design design,
                                        std::optional<GridInfo> grid,
                                        const Bounds& bounds);

  std::size_t size() const { return locations_.size(); }
  const std::vector<Point>& locations() const { return locations_; }
  const std::vector<double>& values() const { return values_; }
  Design design() const { return design_; }
  const std::optional<GridInfo>& grid() const { return grid_; }
  const Bounds& bounds() const { return bounds_; }

  // Same locations and design, responses replaced.
  SpatialDataset with_values(std::vector<double> values) const;

  // Coordinates divided by delta (grid tests rescale so lattice steps are
  // integers); the grid spacing rescales along.
  SpatialDataset rescaled(double delta) const;

 private:
  SpatialDataset() = default;
  std::vector<Point> locations_;
  std::vector<double> values_;
  Design design_ = Design::general;
  std::optional<GridInfo> grid_;
  Bounds bounds_;
};

// Reads the CSV format `x,y,value` (header required). Rows with non-finite
// response are an error unless drop_nonfinite is set, in which case they are
// skipped and counted in *dropped.
SpatialDataset load_dataset(const std::string& path, bool drop_nonfinite = false,
                            int* dropped = nullptr);

// Writes the same CSV format at full round-trip precision.
void write_dataset(std::ostream& os, const SpatialDataset& data);

}  // namespace spiso

#endif
