#include "movingslab/opacity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace movingslab {

namespace {

std::string format_energy(double e)
{
   char buf[32];
   std::snprintf(buf, sizeof buf, "%.17g", e);
   return buf;
}

std::string_view trim(std::string_view s)
{
   const auto first = s.find_first_not_of(" \t\r");
   if (first == std::string_view::npos)
      return {};
   const auto last = s.find_last_not_of(" \t\r");
   return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& value)
{
   text = trim(text);
   if (text.empty())
      return false;
   if (text.front() == '+')
      text.remove_prefix(1);
   const auto* end = text.data() + text.size();
   const auto [ptr, ec] = std::from_chars(text.data(), end, value);
   return ec == std::errc{} && ptr == end;
}

}  // namespace

OpacityParseError::OpacityParseError(std::size_t line, const std::string& what)
    : std::runtime_error("opacity table line " + std::to_string(line) + ": " + what), line_(line)
{
}

OpacityRangeError::OpacityRangeError(double energy, double e_min, double e_max)
    : std::out_of_range("energy " + format_energy(energy) + " keV outside opacity table range [" +
                        format_energy(e_min) + ", " + format_energy(e_max) + "] keV"),
      energy_(energy)
{
}

OpacityTable::OpacityTable(std::vector<double> energies, std::vector<double> kappas,
                           std::string label, Extrapolation extrapolation)
    : energies_(std::move(energies)),
      kappas_(std::move(kappas)),
      label_(std::move(label)),
      extrapolation_(extrapolation)
{
   if (energies_.size() != kappas_.size())
      throw OpacityValidationError("energy and kappa columns differ in length");
   if (energies_.size() < 2)
      throw OpacityValidationError("opacity table needs at least 2 points");
   for (std::size_t i = 0; i < energies_.size(); ++i)
   {
      if (!(energies_[i] > 0.0) || !std::isfinite(energies_[i]))
         throw OpacityValidationError("energies must be positive and finite (row " +
                                      std::to_string(i + 1) + ")");
      if (!(kappas_[i] > 0.0) || !std::isfinite(kappas_[i]))
         throw OpacityValidationError("kappa must be positive and finite (row " +
                                      std::to_string(i + 1) + ")");
      if (i > 0 && !(energies_[i] > energies_[i - 1]))
         throw OpacityValidationError("energies must be strictly increasing (row " +
                                      std::to_string(i + 1) + ")");
   }
   const auto n = static_cast<Eigen::Index>(energies_.size());
   log_energies_ = Eigen::Map<const Eigen::VectorXd>(energies_.data(), n).array().log();
   log_kappas_ = Eigen::Map<const Eigen::VectorXd>(kappas_.data(), n).array().log();
}

double OpacityTable::operator()(double energy) const
{
   if (!(energy >= energies_.front()) || !(energy <= energies_.back()))
   {
      if (extrapolation_ == Extrapolation::Error || std::isnan(energy))
         throw OpacityRangeError(energy, energies_.front(), energies_.back());
      return energy < energies_.front() ? kappas_.front() : kappas_.back();
   }
   // First node >= energy.
   const auto it = std::lower_bound(energies_.begin(), energies_.end(), energy);
   const auto hi = static_cast<Eigen::Index>(it - energies_.begin());
   if (*it == energy)
      return kappas_[static_cast<std::size_t>(hi)];
   const auto lo = hi - 1;
   const double t = (std::log(energy) - log_energies_[lo]) / (log_energies_[hi] - log_energies_[lo]);
   return std::exp(log_kappas_[lo] + t * (log_kappas_[hi] - log_kappas_[lo]));
}

OpacityTable OpacityTable::with_extrapolation(Extrapolation mode) const
{
   OpacityTable copy = *this;
   copy.extrapolation_ = mode;
   return copy;
}

double kappa(const OpacityTable& table, double energy)
{
   return table(energy);
}

Material::Material(double rho, Opacity opacity) : rho_(rho), opacity_(std::move(opacity))
{
   if (!(rho_ > 0.0) || !std::isfinite(rho_))
      throw std::domain_error("material density must be positive");
   if (const auto* constant = std::get_if<ConstantOpacity>(&opacity_))
   {
      if (!(constant->kappa >= 0.0) || !std::isfinite(constant->kappa))
         throw std::domain_error("constant opacity must be finite and non-negative");
   }
}

double Material::kappa(double energy) const
{
   if (const auto* table = std::get_if<OpacityTable>(&opacity_))
      return (*table)(energy);
   return std::get<ConstantOpacity>(opacity_).kappa;
}

std::span<const double> Material::breakpoints() const noexcept
{
   if (const auto* table = std::get_if<OpacityTable>(&opacity_))
      return table->energies();
   return {};
}

double sigma_a(const Material& material, double energy)
{
   return material.kappa(energy) * material.density();
}

void SyntheticOpacitySpec::validate() const
{
   if (!(base_amplitude > 0.0) || !std::isfinite(base_amplitude))
      throw std::domain_error("synthetic opacity base amplitude must be positive");
   if (!std::isfinite(power_exponent))
      throw std::domain_error("synthetic opacity exponent must be finite");
   for (const auto& line : lines)
   {
      if (!(line.amplitude > 0.0) || !(line.width > 0.0) || !(line.center > 0.0))
         throw std::domain_error("synthetic lines need positive center, width and amplitude");
   }
}

double SyntheticOpacitySpec::operator()(double energy) const
{
   double k = base_amplitude * std::pow(energy, power_exponent);
   for (const auto& line : lines)
   {
      const double d = (energy - line.center) / line.width;
      k += line.amplitude * std::exp(-0.5 * d * d);
   }
   return k;
}

OpacityTable synthesize_table(const SyntheticOpacitySpec& spec, std::size_t n_points, double e_min,
                              double e_max)
{
   spec.validate();
   if (n_points < 2)
      throw std::domain_error("synthesize_table needs at least 2 points");
   if (!(e_min > 0.0) || !(e_max > e_min))
      throw std::domain_error("synthesize_table needs 0 < e_min < e_max");

   std::vector<double> energies(n_points);
   std::vector<double> kappas(n_points);
   const double ratio = e_max / e_min;
   const double last = static_cast<double>(n_points - 1);
   for (std::size_t i = 0; i < n_points; ++i)
   {
      energies[i] = e_min * std::pow(ratio, static_cast<double>(i) / last);
      kappas[i] = spec(energies[i]);
   }
   energies.front() = e_min;
   energies.back() = e_max;
   kappas.front() = spec(e_min);
   kappas.back() = spec(e_max);

   std::ostringstream label;
   label << "synthetic: " << spec.base_amplitude << "*e^" << spec.power_exponent << " + "
         << spec.lines.size() << " line(s)";
   return OpacityTable(std::move(energies), std::move(kappas), label.str());
}

OpacityTable load_table(std::istream& in, std::string label)
{
   std::vector<double> energies;
   std::vector<double> kappas;
   std::string raw;
   std::size_t line_no = 0;
   while (std::getline(in, raw))
   {
      ++line_no;
      const auto line = trim(raw);
      if (line.empty() || line.front() == '#')
         continue;
      const auto comma = line.find(',');
      if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
         throw OpacityParseError(line_no, "expected exactly two comma-separated columns");
      double e = 0.0;
      double k = 0.0;
      if (!parse_double(line.substr(0, comma), e))
         throw OpacityParseError(line_no, "cannot parse energy");
      if (!parse_double(line.substr(comma + 1), k))
         throw OpacityParseError(line_no, "cannot parse kappa");
      energies.push_back(e);
      kappas.push_back(k);
   }
   if (in.bad())
      throw std::runtime_error("I/O error while reading opacity table");
   return OpacityTable(std::move(energies), std::move(kappas), std::move(label));
}

OpacityTable load_table_file(const std::string& path)
{
   std::ifstream in(path);
   if (!in)
      throw std::runtime_error("cannot open opacity file '" + path + "'");
   return load_table(in, path);
}

void save_table(std::ostream& out, const OpacityTable& table)
{
   if (!table.label().empty())
      out << "# " << table.label() << '\n';
   out << "# energy_keV,kappa_cm2_per_g\n";
   char buf[64];
   for (std::size_t i = 0; i < table.size(); ++i)
   {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", table.energies()[i], table.kappas()[i]);
      out << buf;
   }
}

}  // namespace movingslab
