// spiso: nonparametric isotropy tests for spatial data.
//
// Subcommands: test (guan-grid | guan-unif | maity), variogram, simulate,
// detrend. CSV in, JSON or text out. Exit codes: 0 success, 2 validation
// error, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spiso/detrend.hpp"
#include "spiso/errors.hpp"
#include "spiso/isotest.hpp"
#include "spiso/report.hpp"
#include "spiso/simulate.hpp"

namespace {

using namespace spiso;

std::vector<double> parse_reals(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

LagSet parse_lags(const std::string& text) {
  std::vector<Lag> lags;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';')) {
    const std::vector<double> v = parse_reals(row, "--lags");
    if (v.size() != 2)
      throw ValidationError("--lags: each lag needs exactly 2 components, got '" + row +
                            "'");
    lags.push_back({v[0], v[1]});
  }
  return LagSet::create(std::move(lags));
}

ContrastMatrix parse_contrasts(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::stringstream ss(text);
  std::string row;
  while (std::getline(ss, row, ';'))
    rows.push_back(parse_reals(row, "--contrasts"));
  if (rows.empty()) throw ValidationError("--contrasts: empty");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size())
      throw ValidationError("--contrasts: ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return ContrastMatrix::create(std::move(m));
}

std::pair<int, int> parse_int_pair(const std::string& text, const std::string& what) {
  const std::vector<double> v = parse_reals(text, what);
  if (v.size() != 2) throw ValidationError(what + ": expected two values");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

std::pair<double, double> parse_real_pair(const std::string& text, const std::string& what) {
  const std::vector<double> v = parse_reals(text, what);
  if (v.size() != 2) throw ValidationError(what + ": expected two values");
  return {v[0], v[1]};
}

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "gaussian" || name == "norm") return KernelFamily::gaussian;
  if (name == "epanechnikov") return KernelFamily::epanechnikov;
  if (name == "uniform") return KernelFamily::uniform_box;
  throw ValidationError("--kernel: unknown family '" + name +
                        "' (expected gaussian, epanechnikov, or uniform)");
}

void emit_result(const TestResult& res, const std::string& format) {
  for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
  if (format == "json")
    std::cout << result_to_json(res).dump(2) << "\n";
  else
    std::cout << result_to_text(res);
}

struct TestOptions {
  std::string input;
  std::string lags, contrasts, format = "json";
  bool drop_missing = false;
};

RegionGrid make_region(const std::string& xlims, const std::string& ylims,
                       const std::string& spacing) {
  RegionGrid grid;
  const auto [xlo, xhi] = parse_real_pair(xlims, "--xlims");
  const auto [ylo, yhi] = parse_real_pair(ylims, "--ylims");
  const auto [gx, gy] = parse_real_pair(spacing, "--grid-spacing");
  grid.xmin = xlo;
  grid.xmax = xhi;
  grid.ymin = ylo;
  grid.ymax = yhi;
  grid.gx = gx;
  grid.gy = gy;
  return grid;
}

int run(int argc, char** argv) {
  CLI::App app{"Nonparametric hypothesis tests of isotropy for spatial random fields"};
  app.require_subcommand(1);

  // ---- test ----
  auto* test = app.add_subcommand("test", "Run an isotropy hypothesis test");
  test->require_subcommand(1);

  TestOptions opt;
  double delta = 1.0;
  std::string window_dims = "2,2", block_dims, xlims, ylims, grid_spacing;
  bool finite_adjust = false;
  double bandwidth = 0.7, sb_bandwidth = 0.7, truncation = 1.5;
  std::string kernel_name = "gaussian";
  int n_boot = 100;
  std::uint64_t seed = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "Input CSV (header x,y,value)")->required();
    cmd->add_option("--lags", opt.lags,
                    "Lag set, semicolon-separated pairs, e.g. \"1,0;0,1;1,1;-1,1\"")
        ->required();
    cmd->add_option("--contrasts", opt.contrasts,
                    "Contrast matrix rows, e.g. \"1,-1,0,0;0,0,1,-1\"")
        ->required();
    cmd->add_option("--format", opt.format, "Output format: json (default) or text")
        ->check(CLI::IsMember({"json", "text"}));
    cmd->add_flag("--drop-missing", opt.drop_missing,
                  "Drop rows with non-finite response instead of failing");
  };

  auto* grid_cmd = test->add_subcommand("guan-grid", "Gridded-design isotropy test");
  add_common(grid_cmd);
  grid_cmd->add_option("--delta", delta, "Grid spacing scale (coordinates are divided by it)")
      ->required();
  grid_cmd->add_option("--window-dims", window_dims, "Moving window size in grid cells");
  grid_cmd->add_flag("--finite-adjust", finite_adjust,
                     "Also report the finite-sample adjusted p-value");

  auto* unif_cmd = test->add_subcommand("guan-unif", "Uniform-design isotropy test");
  add_common(unif_cmd);
  unif_cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth in lag units");
  unif_cmd->add_option("--subblock-bandwidth", sb_bandwidth, "Bandwidth on subblocks");
  unif_cmd->add_option("--kernel", kernel_name, "Kernel family: gaussian|epanechnikov|uniform");
  unif_cmd->add_option("--truncation", truncation, "Gaussian kernel truncation radius");
  unif_cmd->add_option("--xlims", xlims, "Region x-limits, e.g. \"0,20\"")->required();
  unif_cmd->add_option("--ylims", ylims, "Region y-limits")->required();
  unif_cmd->add_option("--grid-spacing", grid_spacing, "Overlay cell size, e.g. \"1.25,1.67\"")
      ->required();
  unif_cmd->add_option("--window-dims", window_dims, "Moving window size in grid cells");

  auto* maity_cmd = test->add_subcommand("maity", "Block-bootstrap isotropy test");
  add_common(maity_cmd);
  maity_cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth in lag units");
  maity_cmd->add_option("--kernel", kernel_name, "Kernel family");
  maity_cmd->add_option("--truncation", truncation, "Gaussian kernel truncation radius");
  maity_cmd->add_option("--xlims", xlims, "Region x-limits")->required();
  maity_cmd->add_option("--ylims", ylims, "Region y-limits")->required();
  maity_cmd->add_option("--grid-spacing", grid_spacing, "Overlay cell size")->required();
  maity_cmd->add_option("--block-dims", block_dims, "Bootstrap block size in grid cells")
      ->required();
  maity_cmd->add_option("--nboot", n_boot, "Number of bootstrap resamples");
  maity_cmd->add_option("--seed", seed, "Random seed")->required();

  // ---- variogram ----
  auto* vario = app.add_subcommand("variogram", "Directional semivariogram table (CSV)");
  std::string vario_input, angles = "0,45,90,135", bins;
  double tolerance = 22.5;
  bool vario_drop = false;
  vario->add_option("--input", vario_input, "Input CSV")->required();
  vario->add_option("--angles", angles, "Center directions in degrees");
  vario->add_option("--tolerance", tolerance, "Directional tolerance in degrees");
  vario->add_option("--bins", bins, "Distance bin edges (default: 13 bins to half diameter)");
  vario->add_flag("--drop-missing", vario_drop, "Drop rows with non-finite response");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Simulate a Gaussian random field (CSV)");
  std::string design, model_name = "exp", anisotropy = "0,1";
  double sill = 1.0, range = 1.0, nugget = 0.0;
  std::uint64_t sim_seed = 0;
  sim->add_option("--design", design,
                  "grid:NXxNY:DELTA (e.g. grid:16x16:1) or uniform:N:xlo,xhi,ylo,yhi")
      ->required();
  sim->add_option("--model", model_name, "Covariance family: exp or gauss");
  sim->add_option("--sill", sill, "Sill (sigma^2)");
  sim->add_option("--range", range, "Range (phi)");
  sim->add_option("--nugget", nugget, "Nugget (tau^2)");
  sim->add_option("--anisotropy", anisotropy, "Angle in degrees, ratio >= 1 (e.g. \"0,3\")");
  sim->add_option("--seed", sim_seed, "Random seed")->required();

  // ---- detrend ----
  auto* det = app.add_subcommand("detrend", "Remove a polynomial trend surface (CSV out)");
  std::string det_input;
  int degree = 2;
  bool det_drop = false;
  det->add_option("--input", det_input, "Input CSV")->required();
  det->add_option("--degree", degree, "Polynomial degree (1, 2, or 3)");
  det->add_flag("--drop-missing", det_drop, "Drop rows with non-finite response");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message / help text
    return code == 0 ? 0 : 2;
  }

  if (grid_cmd->parsed() || unif_cmd->parsed() || maity_cmd->parsed()) {
    int dropped = 0;
    const SpatialDataset data = load_dataset(opt.input, opt.drop_missing, &dropped);
    if (dropped > 0)
      std::cerr << "warning: dropped " << dropped << " row(s) with non-finite response\n";
    const LagSet lagset = parse_lags(opt.lags);
    const ContrastMatrix a = parse_contrasts(opt.contrasts);

    TestResult res;
    if (grid_cmd->parsed()) {
      res = guan_test_grid(data, delta, lagset, a, parse_int_pair(window_dims, "--window-dims"),
                           finite_adjust);
    } else {
      const RegionGrid region = make_region(xlims, ylims, grid_spacing);
      KernelSpec kernel{parse_kernel_family(kernel_name), bandwidth, truncation};
      if (unif_cmd->parsed()) {
        KernelSpec sb_kernel{parse_kernel_family(kernel_name), sb_bandwidth, truncation};
        res = guan_test_unif(data, lagset, a, kernel, region,
                             parse_int_pair(window_dims, "--window-dims"), sb_kernel);
      } else {
        res = maity_test(data, lagset, a, kernel, region,
                         parse_int_pair(block_dims, "--block-dims"), n_boot, seed);
      }
    }
    emit_result(res, opt.format);
    return 0;
  }

  if (vario->parsed()) {
    const SpatialDataset data = load_dataset(vario_input, vario_drop);
    DirectionalBinSpec spec;
    spec.angles = parse_reals(angles, "--angles");
    spec.angle_tolerance = tolerance;
    if (!bins.empty()) spec.distance_bins = parse_reals(bins, "--bins");
    const auto table = directional_semivariogram(data, spec);
    std::ostringstream os;
    os.precision(17);
    os << "angle,bin_lo,bin_hi,gamma,npairs\n";
    for (const auto& cell : table)
      os << cell.angle << ',' << cell.bin_lo << ',' << cell.bin_hi << ',' << cell.gamma
         << ',' << cell.npairs << '\n';
    std::cout << os.str();
    return 0;
  }

  if (sim->parsed()) {
    CovarianceModel model;
    if (model_name == "exp")
      model.family = CovFamily::exponential;
    else if (model_name == "gauss")
      model.family = CovFamily::gaussian;
    else
      throw ValidationError("--model: expected exp or gauss, got '" + model_name + "'");
    model.sill = sill;
    model.range = range;
    model.nugget = nugget;
    const auto [angle, ratio] = parse_real_pair(anisotropy, "--anisotropy");
    model.aniso_angle_deg = angle;
    model.aniso_ratio = ratio;

    std::vector<Point> locs;
    if (design.rfind("grid:", 0) == 0) {
      unsigned nx = 0, ny = 0;
      double d = 0.0;
      char x = 0;
      std::istringstream ss(design.substr(5));
      std::string dims, step;
      if (!std::getline(ss, dims, ':') || !std::getline(ss, step))
        throw ValidationError("--design: expected grid:NXxNY:DELTA, got '" + design + "'");
      std::istringstream ds(dims);
      if (!(ds >> nx >> x >> ny) || x != 'x' || nx == 0 || ny == 0)
        throw ValidationError("--design: bad grid dimensions '" + dims + "'");
      d = std::stod(step);
      locs = grid_locations(nx, ny, d, d);
    } else if (design.rfind("uniform:", 0) == 0) {
      std::istringstream ss(design.substr(8));
      std::string count, rect;
      if (!std::getline(ss, count, ':') || !std::getline(ss, rect))
        throw ValidationError("--design: expected uniform:N:xlo,xhi,ylo,yhi");
      const std::vector<double> r = parse_reals(rect, "--design rectangle");
      if (r.size() != 4) throw ValidationError("--design: rectangle needs 4 numbers");
      RandomStream loc_rng(sim_seed, 1);
      locs = uniform_locations(std::stoul(count), r[0], r[1], r[2], r[3], loc_rng);
    } else {
      throw ValidationError("--design: expected grid:... or uniform:..., got '" + design +
                            "'");
    }

    RandomStream rng(sim_seed, 0);
    const SpatialDataset field = simulate_grf(locs, model, rng);
    write_dataset(std::cout, field);
    return 0;
  }

  if (det->parsed()) {
    const SpatialDataset data = load_dataset(det_input, det_drop);
    const std::vector<double> residuals = polynomial_detrend(data, degree);
    write_dataset(std::cout, data.with_values(residuals));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const spiso::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const spiso::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
