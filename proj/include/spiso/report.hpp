#ifndef SPISO_REPORT_HPP
#define SPISO_REPORT_HPP

#include <string>

#include "spiso/isotest.hpp"

#include "json.hpp"

namespace spiso {

// Stable JSON schema: keys {test, statistic, df, p_value, p_value_finite?,
// estimates, sigma, n_subblocks | n_boot, seed?, config}.
nlohmann::json result_to_json(const TestResult& res);

// Aligned text report echoing the lag estimates in lag order.
std::string result_to_text(const TestResult& res);

}  // namespace spiso

#endif
