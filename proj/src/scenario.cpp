#include "movingslab/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace movingslab {

std::string_view to_string(VariantMode mode)
{
   switch (mode)
   {
   case VariantMode::FullMMC:
      return "full_mmc";
   case VariantMode::StationarySlab:
      return "stationary_slab";
   case VariantMode::NoFrequencyDoppler:
      return "no_frequency_doppler";
   case VariantMode::NoDopplerFactors:
      return "no_doppler_factors";
   }
   return "unknown";
}

std::optional<VariantMode> parse_variant_mode(std::string_view name)
{
   for (auto mode : {VariantMode::FullMMC, VariantMode::StationarySlab,
                     VariantMode::NoFrequencyDoppler, VariantMode::NoDopplerFactors})
   {
      if (name == to_string(mode))
         return mode;
   }
   return std::nullopt;
}

SlabScenario::SlabScenario(SlabParameters params, std::shared_ptr<const Material> material,
                           double planck_prefactor, FaultInjection faults)
    : params_(params), material_(std::move(material)), planck_prefactor_(planck_prefactor),
      faults_(faults)
{
   const auto& p = params_;
   if (!material_)
      throw std::invalid_argument("scenario needs a material");
   if (!(p.length_cm > 0.0) || !std::isfinite(p.length_cm))
      throw std::domain_error("slab length must be positive");
   if (!(p.temperature_kev > 0.0) || !std::isfinite(p.temperature_kev))
      throw std::domain_error("slab temperature must be positive");
   if (!(p.observer_t_ns >= 0.0) || !std::isfinite(p.observer_t_ns))
      throw std::domain_error("observation time must be non-negative");
   if (!(p.speed_cm_per_ns >= 0.0) || !(p.speed_cm_per_ns < constants::c))
      throw std::domain_error("slab speed must satisfy 0 <= v < c");
   if (!(p.observer_z_cm > p.length_cm + p.speed_cm_per_ns * p.observer_t_ns))
      throw std::domain_error(
          "observer must stay ahead of the slab: need Z > L + v t_Z");
   if (!(planck_prefactor_ > 0.0) || !std::isfinite(planck_prefactor_))
      throw std::domain_error("Planck prefactor must be positive");
}

SlabScenario SlabScenario::with_speed(double speed) const
{
   auto p = params_;
   p.speed_cm_per_ns = speed;
   return SlabScenario(p, material_, planck_prefactor_, faults_);
}

SlabScenario SlabScenario::with_material(std::shared_ptr<const Material> material) const
{
   return SlabScenario(params_, std::move(material), planck_prefactor_, faults_);
}

SlabScenario SlabScenario::with_faults(FaultInjection faults) const
{
   return SlabScenario(params_, material_, planck_prefactor_, faults);
}

double effective_speed(const SlabScenario& scenario, VariantMode mode)
{
   return mode == VariantMode::StationarySlab ? 0.0 : scenario.speed();
}

double mu_min(const SlabScenario& scenario, VariantMode mode)
{
   return effective_speed(scenario, mode) / scenario.c();
}

WindowBreakpoints window_breakpoints(const SlabScenario& scenario)
{
   const double reach = scenario.c() * scenario.observer_t();
   if (!(reach > 0.0))
      return {1.0, 1.0};
   return {std::min(1.0, (scenario.observer_z() - scenario.length()) / reach),
           std::min(1.0, scenario.observer_z() / reach)};
}

EmissionWindow<double> emission_window(double mu, const SlabScenario& scenario, VariantMode mode)
{
   return emission_window(mu, scenario.length(), effective_speed(scenario, mode),
                          scenario.observer_z(), scenario.observer_t(), scenario.c());
}

RayGeometry<double> ray_geometry(double mu, const SlabScenario& scenario, VariantMode mode)
{
   return ray_geometry(mu, scenario.length(), effective_speed(scenario, mode),
                       scenario.observer_z(), scenario.observer_t(), scenario.c());
}

DopplerState<double> doppler_state(double mu, const SlabScenario& scenario, VariantMode mode)
{
   auto state = make_doppler_state(mu, effective_speed(scenario, mode), scenario.c());
   if constexpr (fault_injection_enabled)
   {
      if (scenario.faults().flip_doppler_sign)
      {
         state.d_lab = 1.0 + mu * state.beta;
         state.shift = state.gamma * state.d_lab;
      }
   }
   return state;
}

}  // namespace movingslab
