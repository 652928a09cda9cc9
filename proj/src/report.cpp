#include "spiso/report.hpp"

#include <iomanip>
#include <sstream>

namespace spiso {

nlohmann::json result_to_json(const TestResult& res) {
  nlohmann::json estimates = nlohmann::json::array();
  for (std::size_t i = 0; i < res.estimates.lagset.size(); ++i) {
    estimates.push_back({{"lag", {res.estimates.lagset[i].h1, res.estimates.lagset[i].h2}},
                         {"gamma", res.estimates.gammas[i]},
                         {"support", res.estimates.support[i]}});
  }

  nlohmann::json sigma = nlohmann::json::array();
  for (std::size_t i = 0; i < res.sigma.matrix.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < res.sigma.matrix.cols(); ++j)
      row.push_back(res.sigma.matrix(i, j));
    sigma.push_back(row);
  }

  nlohmann::json j{{"test", res.test_name},
                   {"statistic", res.statistic},
                   {"df", res.df},
                   {"p_value", res.p_value},
                   {"estimates", estimates},
                   {"sigma", sigma},
                   {"config", res.config_echo}};
  if (res.p_value_finite) j["p_value_finite"] = *res.p_value_finite;
  if (res.n_boot > 0)
    j["n_boot"] = res.n_boot;
  else
    j["n_subblocks"] = res.n_subblocks;
  if (res.seed) j["seed"] = *res.seed;
  if (!res.warnings.empty()) j["warnings"] = res.warnings;
  return j;
}

std::string result_to_text(const TestResult& res) {
  std::ostringstream os;
  os << "Test of isotropy (" << res.test_name << ")\n\n";
  os << "Chi-sq = " << std::setprecision(5) << res.statistic << ", df = " << res.df
     << ", p-value = " << std::setprecision(4) << std::scientific << res.p_value
     << std::defaultfloat << "\n";
  if (res.p_value_finite)
    os << "p-value (finite adj.) = " << std::setprecision(7) << *res.p_value_finite << "\n";
  if (res.n_boot > 0)
    os << "number of bootstrap samples: " << res.n_boot << "\n";
  else
    os << "number of subblocks: " << res.n_subblocks << "\n";

  os << "\nsample estimates: (lag value)\n";
  std::ostringstream lags, gammas;
  for (std::size_t i = 0; i < res.estimates.lagset.size(); ++i) {
    std::ostringstream lag;
    lag << "(" << res.estimates.lagset[i].h1 << "," << res.estimates.lagset[i].h2 << ")";
    std::ostringstream val;
    val << std::setprecision(8) << res.estimates.gammas[i];
    const std::size_t w = std::max(lag.str().size(), val.str().size()) + 2;
    lags << std::setw(static_cast<int>(w)) << lag.str();
    gammas << std::setw(static_cast<int>(w)) << val.str();
  }
  os << lags.str() << "\n" << gammas.str() << "\n";

  os << "\nestimated asymp. variance-covariance matrix:\n";
  for (std::size_t i = 0; i < res.sigma.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < res.sigma.matrix.cols(); ++j)
      os << std::setw(14) << std::setprecision(6) << res.sigma.matrix(i, j);
    os << "\n";
  }
  for (const auto& w : res.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace spiso
