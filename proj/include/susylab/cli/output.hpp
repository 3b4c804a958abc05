#pragma once

#include "susylab/common.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace susylab::cli {

using Json = nlohmann::ordered_json;

/// %.17g with '.' decimal separator regardless of locale.
std::string format_real(double v);

/// Header comment carrying the config hash, then a header row and data rows.
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows,
                      const std::string& config_hash);

/// Write to a sibling temporary and rename over the target.
void atomic_write(const std::filesystem::path& path, const std::string& content);

Json complex_json(Complex z);
Json vec_json(const Vec& v);

/// UTC wall clock, ISO 8601; only ever written to metadata files.
std::string utc_timestamp();

}  // namespace susylab::cli
