#ifndef MOVINGSLAB_MC_ORACLE_HPP
#define MOVINGSLAB_MC_ORACLE_HPP

#include <cstdint>

#include <Eigen/Core>

#include "movingslab/spectrum.hpp"

namespace movingslab {

struct McSettings
{
   /// Samples per group when stratified, otherwise in total.
   std::int64_t sample_count = 100000;
   std::uint64_t seed = 1;
   bool stratify_groups = true;
};

struct McSpectrum
{
   GroupSpectrum spectrum;
   Eigen::VectorXd standard_error;
};

/// Monte Carlo estimate of the multigroup energy density. Directions are drawn
/// uniformly on (mu_min, 1]. Energies are drawn uniformly inside each group
/// when stratified, and log-uniformly over the whole structure otherwise.
///
/// Random numbers come from std::mt19937_64; each group (or the single
/// unstratified stream) is seeded with splitmix64(seed, stream index), so the
/// estimate depends only on the settings.
McSpectrum mc_group_energy(const SlabScenario& scenario, const GroupStructure& structure,
                           VariantMode mode, const McSettings& settings);

}  // namespace movingslab

#endif  // MOVINGSLAB_MC_ORACLE_HPP
