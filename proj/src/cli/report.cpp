#include "movingslab/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace movingslab::cli {

std::string format_double(double value)
{
   if (std::isnan(value))
      return "nan";
   char buf[40];
   std::snprintf(buf, sizeof buf, "%.17g", value);
   return buf;
}

void write_spectrum_csv(std::ostream& out, const GroupSpectrum& spectrum)
{
   out << "group_index,e_lo_keV,e_hi_keV,value\n";
   for (Eigen::Index g = 0; g < spectrum.group_count(); ++g)
   {
      out << g << ',' << format_double(spectrum.structure.lower(g)) << ','
          << format_double(spectrum.structure.upper(g)) << ',' << format_double(spectrum.values[g])
          << '\n';
   }
}

void write_error_csv(std::ostream& out, const ErrorTable& table)
{
   out << "group_index,e_lo_keV,e_hi_keV,value\n";
   for (Eigen::Index g = 0; g < table.percent.size(); ++g)
   {
      out << g << ',' << format_double(table.structure.lower(g)) << ','
          << format_double(table.structure.upper(g)) << ',' << format_double(table.percent[g])
          << '\n';
   }
}

nlohmann::json to_json(const GroupSpectrum& spectrum)
{
   nlohmann::json groups = nlohmann::json::array();
   for (Eigen::Index g = 0; g < spectrum.group_count(); ++g)
   {
      const auto& diag = spectrum.diagnostics[static_cast<std::size_t>(g)];
      groups.push_back({{"group_index", g},
                        {"e_lo_keV", spectrum.structure.lower(g)},
                        {"e_hi_keV", spectrum.structure.upper(g)},
                        {"value", spectrum.values[g]},
                        {"density_per_keV", spectrum.densities[g]},
                        {"converged", diag.converged},
                        {"error_estimate", diag.error_estimate}});
   }
   return {{"kind", "spectrum"},
           {"mode", std::string(to_string(spectrum.mode))},
           {"structure", std::string(to_string(spectrum.structure.label()))},
           {"converged", spectrum.converged()},
           {"groups", std::move(groups)}};
}

nlohmann::json to_json(const ErrorTable& table)
{
   nlohmann::json groups = nlohmann::json::array();
   for (Eigen::Index g = 0; g < table.percent.size(); ++g)
   {
      const bool undefined = table.undefined[static_cast<std::size_t>(g)];
      nlohmann::json row = {{"group_index", g},
                            {"e_lo_keV", table.structure.lower(g)},
                            {"e_hi_keV", table.structure.upper(g)},
                            {"undefined", undefined}};
      row["percent_abs_error"] = undefined ? nlohmann::json(nullptr) : nlohmann::json(table.percent[g]);
      groups.push_back(std::move(row));
   }
   auto summary = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
   return {{"kind", "error_table"},
           {"candidate", std::string(to_string(table.candidate))},
           {"reference", std::string(to_string(table.reference))},
           {"structure", std::string(to_string(table.structure.label()))},
           {"max_percent", summary(table.max)},
           {"mean_percent", summary(table.mean)},
           {"argmax_group", table.argmax},
           {"groups", std::move(groups)}};
}

nlohmann::json to_json(const QuadratureSettings& settings)
{
   return {{"mu_nodes_per_piece", settings.mu_nodes},
           {"freq_rtol", settings.freq_rtol},
           {"max_depth", settings.max_depth},
           {"energy_rule", "gauss_kronrod_15_adaptive"},
           {"direction_rule", "gauss_legendre_piecewise"}};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
   auto tmp = path;
   tmp += ".tmp";
   {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
         throw std::runtime_error("cannot write '" + tmp.string() + "'");
      out << contents;
      out.flush();
      if (!out)
         throw std::runtime_error("error writing '" + tmp.string() + "'");
   }
   std::error_code ec;
   std::filesystem::rename(tmp, path, ec);
   if (ec)
      throw std::runtime_error("cannot move '" + tmp.string() + "' to '" + path.string() +
                               "': " + ec.message());
}

}  // namespace movingslab::cli
