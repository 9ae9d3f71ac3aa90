#ifndef MOVINGSLAB_SCENARIO_HPP
#define MOVINGSLAB_SCENARIO_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "movingslab/constants.hpp"
#include "movingslab/kinematics.hpp"
#include "movingslab/opacity.hpp"

namespace movingslab {

/// Which material-motion corrections are kept when evaluating the intensity.
enum class VariantMode
{
   /// All corrections; the benchmark reference.
   FullMMC,
   /// The same slab at rest (v = 0 everywhere).
   StationarySlab,
   /// Opacity and emission evaluated at the unshifted lab energy; the
   /// (gamma D)^3 and gamma D factors and the moving geometry are kept.
   NoFrequencyDoppler,
   /// Like NoFrequencyDoppler but also drops the (gamma D)^3 and gamma D
   /// factors. Only the moving geometry remains.
   NoDopplerFactors,
};

std::string_view to_string(VariantMode mode);
std::optional<VariantMode> parse_variant_mode(std::string_view name);

/// Deliberate defects used to show that the benchmark detects broken
/// Doppler handling. Ignored unless built with MOVINGSLAB_FAULT_INJECTION.
struct FaultInjection
{
   /// FullMMC silently evaluates opacity and emission at the unshifted energy.
   bool drop_frequency_doppler = false;
   /// Uses D = 1 + mu v / c instead of 1 - mu v / c.
   bool flip_doppler_sign = false;

   bool any() const noexcept { return drop_frequency_doppler || flip_doppler_sign; }
};

inline constexpr bool fault_injection_enabled =
#ifdef MOVINGSLAB_FAULT_INJECTION
    true;
#else
    false;
#endif

struct SlabParameters
{
   double length_cm = 0.4;
   double speed_cm_per_ns = 0.5994;
   double temperature_kev = 1.0;
   double observer_z_cm = 12.0;
   double observer_t_ns = 10.0;
};

/// Complete problem statement: slab geometry, motion, temperature, material,
/// and the observer's position and time. Immutable once built.
class SlabScenario
{
  public:
   SlabScenario(SlabParameters params, std::shared_ptr<const Material> material,
                double planck_prefactor = 1.0, FaultInjection faults = {});

   double length() const noexcept { return params_.length_cm; }
   double speed() const noexcept { return params_.speed_cm_per_ns; }
   double temperature() const noexcept { return params_.temperature_kev; }
   double observer_z() const noexcept { return params_.observer_z_cm; }
   double observer_t() const noexcept { return params_.observer_t_ns; }
   double c() const noexcept { return constants::c; }
   double beta() const noexcept { return params_.speed_cm_per_ns / constants::c; }
   double planck_prefactor() const noexcept { return planck_prefactor_; }
   const SlabParameters& parameters() const noexcept { return params_; }
   const Material& material() const noexcept { return *material_; }
   const std::shared_ptr<const Material>& material_ptr() const noexcept { return material_; }
   const FaultInjection& faults() const noexcept { return faults_; }

   SlabScenario with_speed(double speed) const;
   SlabScenario with_material(std::shared_ptr<const Material> material) const;
   SlabScenario with_faults(FaultInjection faults) const;

  private:
   SlabParameters params_;
   std::shared_ptr<const Material> material_;
   double planck_prefactor_;
   FaultInjection faults_;
};

/// Slab speed actually used by `mode` (zero for StationarySlab).
double effective_speed(const SlabScenario& scenario, VariantMode mode);

/// Lower end of the contributing direction interval, v_eff / c. Rays with
/// mu at or below it never reach the observer from the slab.
double mu_min(const SlabScenario& scenario, VariantMode mode);

/// Direction cosines where the back-window clamp ((mu c t_Z - Z) > 0) and the
/// front-window clamp switch on: (Z - L)/(c t_Z) and Z/(c t_Z).
struct WindowBreakpoints
{
   double front_opens;
   double back_opens;
};
WindowBreakpoints window_breakpoints(const SlabScenario& scenario);

EmissionWindow<double> emission_window(double mu, const SlabScenario& scenario,
                                       VariantMode mode = VariantMode::FullMMC);
RayGeometry<double> ray_geometry(double mu, const SlabScenario& scenario,
                                 VariantMode mode = VariantMode::FullMMC);

/// Doppler state along direction mu for `mode`, honoring fault injection.
DopplerState<double> doppler_state(double mu, const SlabScenario& scenario,
                                   VariantMode mode = VariantMode::FullMMC);

}  // namespace movingslab

#endif  // MOVINGSLAB_SCENARIO_HPP
