#ifndef MOVINGSLAB_SPECTRUM_HPP
#define MOVINGSLAB_SPECTRUM_HPP

#include <vector>

#include <Eigen/Core>

#include "movingslab/groups.hpp"
#include "movingslab/quadrature.hpp"
#include "movingslab/scenario.hpp"

namespace movingslab {

struct QuadratureSettings
{
   /// Gauss-Legendre nodes on each smooth piece of the direction interval.
   Eigen::Index mu_nodes = 64;
   /// Relative tolerance of the adaptive Gauss-Kronrod energy integration.
   double freq_rtol = 1e-8;
   /// Maximum bisection depth per energy panel.
   unsigned max_depth = 15;
};

struct GroupDiagnostic
{
   bool converged = true;
   /// Summed Gauss-Kronrod error estimate, same units as the group value.
   double error_estimate = 0.0;
};

/// Multigroup radiation energy density
///   E_g = (2 pi / c) int_{mu_min}^{1} int_{e in g} I(mu, e) de dmu
/// in the normalized units set by the Planck prefactor.
struct GroupSpectrum
{
   GroupStructure structure;
   VariantMode mode = VariantMode::FullMMC;
   Eigen::VectorXd values;
   /// values divided by group width, per keV.
   Eigen::VectorXd densities;
   std::vector<GroupDiagnostic> diagnostics;

   Eigen::Index group_count() const noexcept { return values.size(); }
   bool converged() const;
};

/// Composite direction rule over the contributing interval (mu_min, 1], split
/// where the emission-window clamps switch on. Pieces on which the intensity
/// vanishes identically are dropped, so the weights sum to 1 - max(mu_min,
/// front-window breakpoint).
AngularQuadrature direction_quadrature(const SlabScenario& scenario, VariantMode mode,
                                       Eigen::Index nodes_per_piece);

/// Energy density contributed by [e_lo, e_hi] without any group partition.
double band_energy_density(const SlabScenario& scenario, double e_lo, double e_hi,
                           VariantMode mode, const QuadratureSettings& settings = {},
                           GroupDiagnostic* diagnostic = nullptr);

GroupSpectrum group_energy_density(const SlabScenario& scenario, const GroupStructure& structure,
                                   VariantMode mode, const QuadratureSettings& settings = {});

/// Per-group 100 |E_cand - E_ref| / E_ref. Groups with E_ref = 0 are flagged
/// undefined, hold NaN, and are left out of the summaries.
struct ErrorTable
{
   GroupStructure structure;
   VariantMode candidate = VariantMode::FullMMC;
   VariantMode reference = VariantMode::FullMMC;
   Eigen::VectorXd percent;
   std::vector<bool> undefined;
   double max = 0.0;
   double mean = 0.0;
   /// Group holding the maximum; -1 when every group is undefined.
   Eigen::Index argmax = -1;
};

ErrorTable percent_abs_error(const GroupSpectrum& candidate, const GroupSpectrum& reference);

struct VariantComparison
{
   /// In the order of the requested modes; the first one is the reference.
   std::vector<GroupSpectrum> spectra;
   /// One table per non-reference mode.
   std::vector<ErrorTable> errors;
};

VariantComparison compare_variants(const SlabScenario& scenario, const GroupStructure& structure,
                                   const QuadratureSettings& settings = {},
                                   const std::vector<VariantMode>& modes = {
                                       VariantMode::FullMMC, VariantMode::StationarySlab,
                                       VariantMode::NoFrequencyDoppler});

}  // namespace movingslab

#endif  // MOVINGSLAB_SPECTRUM_HPP
