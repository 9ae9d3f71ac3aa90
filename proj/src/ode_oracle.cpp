#include "movingslab/ode_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "movingslab/intensity.hpp"

namespace movingslab {

namespace {

// Stability boundary of classical RK4 on the negative real axis.
constexpr double rk4_stability_limit = 2.785;
constexpr double deviation_floor = 1e-13;

template <typename Rhs>
double integrate_rk4(Rhs&& rhs, double length, int steps)
{
   const double h = length / static_cast<double>(steps);
   double y = 0.0;
   for (int i = 0; i < steps; ++i)
   {
      const double s = h * static_cast<double>(i);
      const double k1 = rhs(s, y);
      const double k2 = rhs(s + 0.5 * h, y + 0.5 * h * k1);
      const double k3 = rhs(s + 0.5 * h, y + 0.5 * h * k2);
      const double k4 = rhs(s + h, y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
   }
   return y;
}

}  // namespace

OdeResult ode_intensity(double mu, double energy, const SlabScenario& scenario, VariantMode mode,
                        const OdeSettings& settings)
{
   if (settings.step_count < 1)
      throw std::domain_error("ODE step count must be at least 1");

   const auto terms = transfer_terms(mu, energy, scenario, mode);
   OdeResult result;
   if (!terms.contributes())
   {
      if (settings.richardson)
         result.error_estimate = 0.0;
      return result;
   }

   const double h_min = terms.path_length / static_cast<double>(settings.step_count);
   if (terms.sigma_lab * h_min > rk4_stability_limit)
      throw std::domain_error("RK4 step too coarse for optical depth " +
                              std::to_string(terms.sigma_lab * terms.path_length) + " with " +
                              std::to_string(settings.step_count) + " steps");

   // Homogeneous slab: absorption and emission are uniform along the ray.
   const double sigma = terms.sigma_lab;
   const double emissivity = terms.sigma_lab * terms.source;
   auto rhs = [sigma, emissivity](double /*s*/, double y) { return emissivity - sigma * y; };

   const double coarse = integrate_rk4(rhs, terms.path_length, settings.step_count);
   if (!settings.richardson)
   {
      result.intensity = coarse;
      return result;
   }
   const double fine = integrate_rk4(rhs, terms.path_length, 2 * settings.step_count);
   result.intensity = fine;
   result.error_estimate = std::abs(coarse - fine) / 7.0;
   return result;
}

ConvergenceReport convergence_report(double mu, double energy, const SlabScenario& scenario,
                                     VariantMode mode, std::span<const int> step_counts)
{
   if (step_counts.empty())
      throw std::invalid_argument("convergence report needs at least one step count");
   if (!std::is_sorted(step_counts.begin(), step_counts.end()) ||
       std::adjacent_find(step_counts.begin(), step_counts.end()) != step_counts.end())
      throw std::invalid_argument("step counts must be strictly ascending");

   const double exact = intensity(mu, energy, scenario, mode).value;
   const double scale = std::max(exact, 1e-300);

   ConvergenceReport report;
   std::vector<double> xs;
   std::vector<double> ys;
   for (int steps : step_counts)
   {
      const auto ode = ode_intensity(mu, energy, scenario, mode, {steps, false});
      const double deviation = exact == ode.intensity ? 0.0 : std::abs(ode.intensity - exact) / scale;
      report.rows.push_back({steps, deviation});
      if (deviation > deviation_floor)
      {
         xs.push_back(std::log(static_cast<double>(steps)));
         ys.push_back(std::log(deviation));
      }
   }

   if (xs.size() < 2)
   {
      report.degenerate = true;
      return report;
   }
   const double n = static_cast<double>(xs.size());
   double mx = 0.0;
   double my = 0.0;
   for (std::size_t i = 0; i < xs.size(); ++i)
   {
      mx += xs[i];
      my += ys[i];
   }
   mx /= n;
   my /= n;
   double sxx = 0.0;
   double sxy = 0.0;
   for (std::size_t i = 0; i < xs.size(); ++i)
   {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
   }
   report.slope = sxy / sxx;
   return report;
}

}  // namespace movingslab
