#ifndef MOVINGSLAB_CLI_REPORT_HPP
#define MOVINGSLAB_CLI_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "movingslab/mc_oracle.hpp"
#include "movingslab/spectrum.hpp"

namespace movingslab::cli {

/// 17 significant digits, '.' decimal separator; NaN is written as "nan".
std::string format_double(double value);

/// group_index,e_lo_keV,e_hi_keV,value
void write_spectrum_csv(std::ostream& out, const GroupSpectrum& spectrum);
/// Same columns; value is the percent error, "nan" for undefined groups.
void write_error_csv(std::ostream& out, const ErrorTable& table);

nlohmann::json to_json(const GroupSpectrum& spectrum);
nlohmann::json to_json(const ErrorTable& table);
nlohmann::json to_json(const QuadratureSettings& settings);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace movingslab::cli

#endif  // MOVINGSLAB_CLI_REPORT_HPP
