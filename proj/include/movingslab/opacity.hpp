#ifndef MOVINGSLAB_OPACITY_HPP
#define MOVINGSLAB_OPACITY_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace movingslab {

class OpacityParseError : public std::runtime_error
{
  public:
   OpacityParseError(std::size_t line, const std::string& what);
   std::size_t line() const noexcept { return line_; }

  private:
   std::size_t line_;
};

class OpacityValidationError : public std::invalid_argument
{
  public:
   using std::invalid_argument::invalid_argument;
};

/// Thrown when an energy falls outside a table that does not extrapolate.
class OpacityRangeError : public std::out_of_range
{
  public:
   OpacityRangeError(double energy, double e_min, double e_max);
   double energy() const noexcept { return energy_; }

  private:
   double energy_;
};

enum class Extrapolation
{
   Error,
   ClampToEndpoint,
};

/// Tabulated mass opacity kappa(e), cm^2/g, with log-log piecewise linear
/// interpolation. Energies are strictly increasing and every kappa is positive.
class OpacityTable
{
  public:
   OpacityTable(std::vector<double> energies, std::vector<double> kappas, std::string label = {},
                Extrapolation extrapolation = Extrapolation::Error);

   double operator()(double energy) const;

   std::size_t size() const noexcept { return energies_.size(); }
   double min_energy() const noexcept { return energies_.front(); }
   double max_energy() const noexcept { return energies_.back(); }
   std::span<const double> energies() const noexcept { return energies_; }
   std::span<const double> kappas() const noexcept { return kappas_; }
   const std::string& label() const noexcept { return label_; }
   Extrapolation extrapolation() const noexcept { return extrapolation_; }

   OpacityTable with_extrapolation(Extrapolation mode) const;

  private:
   std::vector<double> energies_;
   std::vector<double> kappas_;
   Eigen::VectorXd log_energies_;
   Eigen::VectorXd log_kappas_;
   std::string label_;
   Extrapolation extrapolation_;
};

double kappa(const OpacityTable& table, double energy);

/// Energy-independent opacity. Zero is allowed, which gives a transparent slab.
struct ConstantOpacity
{
   double kappa = 0.0;
};

/// A density bound to an opacity model; sigma_a = kappa * rho.
class Material
{
  public:
   using Opacity = std::variant<OpacityTable, ConstantOpacity>;

   Material(double rho, Opacity opacity);

   double density() const noexcept { return rho_; }
   const Opacity& opacity() const noexcept { return opacity_; }

   double kappa(double energy) const;

   /// Energies at which kappa has a kink (table nodes); empty for constant opacity.
   std::span<const double> breakpoints() const noexcept;

  private:
   double rho_;
   Opacity opacity_;
};

/// Absorption coefficient in 1/cm.
double sigma_a(const Material& material, double energy);

struct GaussianLine
{
   double center;     // keV
   double width;      // keV, standard deviation
   double amplitude;  // cm^2/g at the line center
};

/// kappa(e) = base_amplitude * e^power_exponent + sum of Gaussian lines.
struct SyntheticOpacitySpec
{
   double base_amplitude = 1.0;
   double power_exponent = -3.0;
   std::vector<GaussianLine> lines;

   void validate() const;
   double operator()(double energy) const;
};

OpacityTable synthesize_table(const SyntheticOpacitySpec& spec, std::size_t n_points, double e_min,
                              double e_max);

/// Reads "energy_keV,kappa_cm2_per_g" rows; '#' starts a comment line.
OpacityTable load_table(std::istream& in, std::string label = {});
OpacityTable load_table_file(const std::string& path);

/// Writes the table in the format read by load_table, 17 significant digits.
void save_table(std::ostream& out, const OpacityTable& table);

}  // namespace movingslab

#endif  // MOVINGSLAB_OPACITY_HPP
