#include "movingslab/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "movingslab/detail/compensated_sum.hpp"
#include "movingslab/intensity.hpp"

namespace movingslab {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct PanelResult
{
   double value = 0.0;
   double error = 0.0;
   double l1 = 0.0;
   bool converged = true;
};

// G7/K15 pair on [a, b] with |K - G| as the error estimate. The Kronrod
// abscissae start at 0; even indices are shared with the 7-point Gauss rule.
template <typename F>
PanelResult kronrod_panel(F& f, double a, double b)
{
   const double mid = 0.5 * (a + b);
   const double half = 0.5 * (b - a);
   const auto& x = Kronrod::abscissa();
   const auto& wk = Kronrod::weights();
   const auto& wg = Gauss::weights();

   const double f0 = f(mid);
   double kronrod = f0 * wk[0];
   double gauss = f0 * wg[0];
   double l1 = std::abs(f0) * wk[0];
   for (std::size_t i = 1; i < x.size(); ++i)
   {
      const double fp = f(mid + half * x[i]);
      const double fm = f(mid - half * x[i]);
      kronrod += (fp + fm) * wk[i];
      l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
      if (i % 2 == 0)
         gauss += (fp + fm) * wg[i / 2];
   }
   return {half * kronrod, half * std::abs(kronrod - gauss), half * l1, true};
}

template <typename F>
PanelResult adaptive_panel(F& f, double a, double b, double rtol, unsigned depth)
{
   auto panel = kronrod_panel(f, a, b);
   if (panel.error <= rtol * panel.l1 || panel.error <= std::numeric_limits<double>::min())
      return panel;
   if (depth == 0)
   {
      panel.converged = false;
      return panel;
   }
   const double mid = 0.5 * (a + b);
   const auto left = adaptive_panel(f, a, mid, rtol, depth - 1);
   const auto right = adaptive_panel(f, mid, b, rtol, depth - 1);
   return {left.value + right.value, left.error + right.error, left.l1 + right.l1,
           left.converged && right.converged};
}

// int_{e_lo}^{e_hi} I(mu, e) de. Panels break at the lab energies that map
// onto opacity-table nodes, where the integrand has kinks.
PanelResult energy_integral(const SlabScenario& scenario, double mu, double e_lo, double e_hi,
                            VariantMode mode, const QuadratureSettings& settings)
{
   PanelResult result;
   if (!(ray_geometry(mu, scenario, mode).path_length > 0.0))
      return result;

   const double scale = frequency_scale(mu, scenario, mode);
   const auto nodes = scenario.material().breakpoints();
   const auto first = std::upper_bound(nodes.begin(), nodes.end(), e_lo * scale);
   const auto last = std::lower_bound(nodes.begin(), nodes.end(), e_hi * scale);

   auto integrand = [&](double e) { return intensity(mu, e, scenario, mode).value; };

   detail::CompensatedSum value;
   detail::CompensatedSum error;
   detail::CompensatedSum l1;
   double a = e_lo;
   auto panel = [&](double b) {
      if (!(b > a))
         return;
      const auto part = adaptive_panel(integrand, a, b, settings.freq_rtol, settings.max_depth);
      value.add(part.value);
      error.add(part.error);
      l1.add(part.l1);
      result.converged = result.converged && part.converged;
      a = b;
   };
   for (auto it = first; it != last; ++it)
      panel(*it / scale);
   panel(e_hi);

   result.value = value.value();
   result.error = error.value();
   result.l1 = l1.value();
   return result;
}

GroupDiagnostic integrate_band(const SlabScenario& scenario, const AngularQuadrature& directions,
                               double e_lo, double e_hi, VariantMode mode,
                               const QuadratureSettings& settings, double& value)
{
   detail::CompensatedSum sum;
   detail::CompensatedSum error;
   bool converged = true;
   for (Eigen::Index i = 0; i < directions.size(); ++i)
   {
      const auto panel = energy_integral(scenario, directions.nodes[i], e_lo, e_hi, mode, settings);
      const double w = directions.weights[i];
      sum.add(w * panel.value);
      error.add(w * panel.error);
      converged = converged && panel.converged;
   }
   const double norm = 2.0 * constants::pi / scenario.c();
   value = norm * sum.value();

   GroupDiagnostic diag;
   diag.error_estimate = norm * error.value();
   diag.converged = converged;
   return diag;
}

void check_settings(const QuadratureSettings& settings)
{
   if (settings.mu_nodes < 1)
      throw std::domain_error("quadrature needs at least one direction node per piece");
   if (!(settings.freq_rtol > 0.0) || !(settings.freq_rtol < 1.0))
      throw std::domain_error("frequency tolerance must lie in (0, 1)");
}

}  // namespace

bool GroupSpectrum::converged() const
{
   return std::all_of(diagnostics.begin(), diagnostics.end(),
                      [](const GroupDiagnostic& d) { return d.converged; });
}

AngularQuadrature direction_quadrature(const SlabScenario& scenario, VariantMode mode,
                                       Eigen::Index nodes_per_piece)
{
   const double lo = mu_min(scenario, mode);
   const auto breaks = window_breakpoints(scenario);
   const double cuts[] = {std::max(lo, breaks.front_opens), std::max(lo, breaks.back_opens), 1.0};

   std::vector<AngularQuadrature> pieces;
   Eigen::Index total = 0;
   for (int k = 0; k + 1 < 3; ++k)
   {
      if (cuts[k + 1] > cuts[k])
      {
         pieces.push_back(gauss_legendre(cuts[k], cuts[k + 1], nodes_per_piece));
         total += pieces.back().size();
      }
   }
   AngularQuadrature rule;
   rule.nodes.resize(total);
   rule.weights.resize(total);
   Eigen::Index offset = 0;
   for (const auto& piece : pieces)
   {
      rule.nodes.segment(offset, piece.size()) = piece.nodes;
      rule.weights.segment(offset, piece.size()) = piece.weights;
      offset += piece.size();
   }
   return rule;
}

double band_energy_density(const SlabScenario& scenario, double e_lo, double e_hi,
                           VariantMode mode, const QuadratureSettings& settings,
                           GroupDiagnostic* diagnostic)
{
   check_settings(settings);
   if (!(e_lo > 0.0) || !(e_hi > e_lo))
      throw std::domain_error("energy band must satisfy 0 < lo < hi");
   const auto directions = direction_quadrature(scenario, mode, settings.mu_nodes);
   double value = 0.0;
   const auto diag = integrate_band(scenario, directions, e_lo, e_hi, mode, settings, value);
   if (diagnostic)
      *diagnostic = diag;
   return value;
}

GroupSpectrum group_energy_density(const SlabScenario& scenario, const GroupStructure& structure,
                                   VariantMode mode, const QuadratureSettings& settings)
{
   check_settings(settings);
   const auto directions = direction_quadrature(scenario, mode, settings.mu_nodes);
   const Eigen::Index n = structure.group_count();

   GroupSpectrum spectrum{structure, mode, Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n),
                          std::vector<GroupDiagnostic>(static_cast<std::size_t>(n))};
   for (Eigen::Index g = 0; g < n; ++g)
   {
      spectrum.diagnostics[static_cast<std::size_t>(g)] =
          integrate_band(scenario, directions, structure.lower(g), structure.upper(g), mode,
                         settings, spectrum.values[g]);
   }
   spectrum.densities = spectrum.values.cwiseQuotient(structure.widths());
   return spectrum;
}

ErrorTable percent_abs_error(const GroupSpectrum& candidate, const GroupSpectrum& reference)
{
   if (!(candidate.structure == reference.structure))
      throw std::invalid_argument("error table needs spectra on the same group structure");

   const Eigen::Index n = reference.group_count();
   ErrorTable table{reference.structure, candidate.mode, reference.mode,
                    Eigen::VectorXd::Constant(n, std::numeric_limits<double>::quiet_NaN()),
                    std::vector<bool>(static_cast<std::size_t>(n), false)};
   detail::CompensatedSum sum;
   Eigen::Index defined = 0;
   for (Eigen::Index g = 0; g < n; ++g)
   {
      const double ref = reference.values[g];
      if (ref == 0.0)
      {
         table.undefined[static_cast<std::size_t>(g)] = true;
         continue;
      }
      const double pct = 100.0 * std::abs(candidate.values[g] - ref) / std::abs(ref);
      table.percent[g] = pct;
      sum.add(pct);
      ++defined;
      if (table.argmax < 0 || pct > table.max)
      {
         table.max = pct;
         table.argmax = g;
      }
   }
   if (defined == 0)
   {
      table.max = std::numeric_limits<double>::quiet_NaN();
      table.mean = std::numeric_limits<double>::quiet_NaN();
   }
   else
   {
      table.mean = sum.value() / static_cast<double>(defined);
   }
   return table;
}

VariantComparison compare_variants(const SlabScenario& scenario, const GroupStructure& structure,
                                   const QuadratureSettings& settings,
                                   const std::vector<VariantMode>& modes)
{
   if (modes.empty())
      throw std::invalid_argument("compare_variants needs at least one mode");
   VariantComparison comparison;
   for (auto mode : modes)
      comparison.spectra.push_back(group_energy_density(scenario, structure, mode, settings));
   for (std::size_t i = 1; i < comparison.spectra.size(); ++i)
      comparison.errors.push_back(percent_abs_error(comparison.spectra[i], comparison.spectra[0]));
   return comparison;
}

}  // namespace movingslab
