#include "movingslab/intensity.hpp"

#include <cmath>
#include <stdexcept>

#include "movingslab/planck.hpp"

namespace movingslab {

namespace {

bool shifts_frequency(const SlabScenario& scenario, VariantMode mode)
{
   switch (mode)
   {
   case VariantMode::FullMMC:
      if constexpr (fault_injection_enabled)
         return !scenario.faults().drop_frequency_doppler;
      return true;
   case VariantMode::StationarySlab:
      return true;
   case VariantMode::NoFrequencyDoppler:
   case VariantMode::NoDopplerFactors:
      return false;
   }
   return true;
}

void check_energy(double energy)
{
   if (!(energy > 0.0) || !std::isfinite(energy))
      throw std::domain_error("photon energy must be positive");
}

}  // namespace

double absorbed_fraction(double tau)
{
   if (tau > constants::exp_underflow)
      return 1.0;
   return -std::expm1(-tau);
}

double frequency_scale(double mu, const SlabScenario& scenario, VariantMode mode)
{
   if (!shifts_frequency(scenario, mode))
      return 1.0;
   return doppler_state(mu, scenario, mode).shift;
}

TransferTerms transfer_terms(double mu, double energy, const SlabScenario& scenario,
                             VariantMode mode)
{
   check_energy(energy);
   TransferTerms terms;
   const auto ray = ray_geometry(mu, scenario, mode);
   if (!(ray.path_length > 0.0))
      return terms;

   const auto doppler = doppler_state(mu, scenario, mode);
   terms.path_length = ray.path_length;
   terms.frame_factor = mode == VariantMode::NoDopplerFactors ? 1.0 : doppler.shift;
   terms.emission_energy = shifts_frequency(scenario, mode) ? doppler.shift * energy : energy;
   terms.sigma_lab = terms.frame_factor * sigma_a(scenario.material(), terms.emission_energy);
   const double f3 = terms.frame_factor * terms.frame_factor * terms.frame_factor;
   terms.source =
       planck(terms.emission_energy, scenario.temperature(), scenario.planck_prefactor()) / f3;
   return terms;
}

SpectralIntensity intensity(double mu, double energy, const SlabScenario& scenario,
                            VariantMode mode)
{
   const auto terms = transfer_terms(mu, energy, scenario, mode);
   SpectralIntensity result{0.0, mu, energy};
   if (terms.contributes())
      result.value = terms.source * absorbed_fraction(terms.sigma_lab * terms.path_length);
   return result;
}

double saturation_intensity(double mu, double energy, const SlabScenario& scenario,
                            VariantMode mode)
{
   check_energy(energy);
   const auto doppler = doppler_state(mu, scenario, mode);
   const double f = mode == VariantMode::NoDopplerFactors ? 1.0 : doppler.shift;
   const double e = shifts_frequency(scenario, mode) ? doppler.shift * energy : energy;
   return planck(e, scenario.temperature(), scenario.planck_prefactor()) / (f * f * f);
}

}  // namespace movingslab
