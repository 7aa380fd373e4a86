// report.hpp: CSV and JSON emission of pipeline results

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "fcc/pipeline.hpp"

namespace fcc::report {

// Fixed leading columns; mode-specific extras follow in the order the rows carry them.
const std::vector<std::string>& csv_columns();

// Locale-independent, fixed 12 significant digits ("nan", "inf" for non-finite values).
std::string format_number(double v);

void write_csv(std::ostream& out, const std::vector<pipeline::PointResult>& rows);

nlohmann::json point_json(const pipeline::PointResult& r);
nlohmann::json results_json(const config::RunConfig& cfg, const std::string& mode,
                            const std::vector<pipeline::PointResult>& rows);

// Writes to path ("-" = stdout). Throws std::runtime_error on I/O failure.
void write_text(const std::string& path, const std::string& text);

} // namespace fcc::report
