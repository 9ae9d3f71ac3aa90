#ifndef MOVINGSLAB_INTENSITY_HPP
#define MOVINGSLAB_INTENSITY_HPP

#include "movingslab/scenario.hpp"

namespace movingslab {

/// Lab-frame intensity at the observer for one direction and photon energy.
struct SpectralIntensity
{
   double value = 0.0;
   double mu = 0.0;
   double energy = 0.0;  // keV
};

/// Coefficients of the lab-frame transfer equation along one ray,
///   dI/ds = sigma_lab * (source - I),  0 <= s <= path_length,
/// for a given variant mode. Shared by the closed form and the ODE oracle.
struct TransferTerms
{
   double path_length = 0.0;      // cm
   double frame_factor = 1.0;     // gamma D, or 1 when dropped
   double emission_energy = 0.0;  // keV, argument of opacity and Planck
   double sigma_lab = 0.0;        // 1/cm
   double source = 0.0;           // saturation intensity B(emission_energy)/frame_factor^3

   bool contributes() const noexcept { return path_length > 0.0; }
};

/// Factor applied to the lab energy before opacity and Planck lookups.
double frequency_scale(double mu, const SlabScenario& scenario, VariantMode mode);

/// Transfer coefficients for (mu, energy). Non-contributing rays (mu c <= v or
/// an empty window) return path_length 0 without touching the opacity.
TransferTerms transfer_terms(double mu, double energy, const SlabScenario& scenario,
                             VariantMode mode);

/// Closed-form lab-frame intensity:
///   I = B(f e, T)/(gamma D)^3 * [1 - exp(-gamma D sigma_a(f e) s)]
/// with f = gamma D for FullMMC and f = 1 when the frequency shift is dropped.
SpectralIntensity intensity(double mu, double energy, const SlabScenario& scenario,
                            VariantMode mode = VariantMode::FullMMC);

/// Upper bound reached by `intensity` in the optically thick limit.
double saturation_intensity(double mu, double energy, const SlabScenario& scenario,
                            VariantMode mode = VariantMode::FullMMC);

/// 1 - exp(-tau), exactly 1 past the underflow threshold.
double absorbed_fraction(double tau);

}  // namespace movingslab

#endif  // MOVINGSLAB_INTENSITY_HPP
