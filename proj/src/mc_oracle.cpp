#include "movingslab/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "movingslab/intensity.hpp"

namespace movingslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
   x += 0x9e3779b97f4a7c15ULL;
   x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
   x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
   return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index)
{
   return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

// [0, 1) with 53 random bits; std::uniform_real_distribution is not portable.
double uniform01(std::mt19937_64& rng)
{
   return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Welford accumulator for the sample mean and its standard error.
struct MeanAccumulator
{
   std::int64_t n = 0;
   double mean = 0.0;
   double m2 = 0.0;

   void add(double x)
   {
      ++n;
      const double delta = x - mean;
      mean += delta / static_cast<double>(n);
      m2 += delta * (x - mean);
   }

   double standard_error() const
   {
      if (n < 2)
         return 0.0;
      const double var = m2 / static_cast<double>(n - 1);
      return std::sqrt(var / static_cast<double>(n));
   }
};

}  // namespace

McSpectrum mc_group_energy(const SlabScenario& scenario, const GroupStructure& structure,
                           VariantMode mode, const McSettings& settings)
{
   if (settings.sample_count < 1)
      throw std::domain_error("Monte Carlo needs at least one sample");

   const Eigen::Index n = structure.group_count();
   const double mu_lo = mu_min(scenario, mode);
   const double mu_span = 1.0 - mu_lo;
   const double norm = 2.0 * constants::pi / scenario.c();

   McSpectrum result{GroupSpectrum{structure, mode, Eigen::VectorXd::Zero(n),
                                   Eigen::VectorXd::Zero(n),
                                   std::vector<GroupDiagnostic>(static_cast<std::size_t>(n))},
                     Eigen::VectorXd::Zero(n)};

   auto sample_mu = [&](std::mt19937_64& rng) { return 1.0 - mu_span * uniform01(rng); };

   if (settings.stratify_groups)
   {
      for (Eigen::Index g = 0; g < n; ++g)
      {
         auto rng = substream(settings.seed, static_cast<std::uint64_t>(g));
         const double lo = structure.lower(g);
         const double width = structure.upper(g) - lo;
         const double volume = norm * mu_span * width;
         MeanAccumulator acc;
         for (std::int64_t i = 0; i < settings.sample_count; ++i)
         {
            const double mu = sample_mu(rng);
            const double e = lo + width * uniform01(rng);
            acc.add(volume * intensity(mu, e, scenario, mode).value);
         }
         result.spectrum.values[g] = acc.mean;
         result.standard_error[g] = acc.standard_error();
      }
   }
   else
   {
      const auto& edges = structure.edges();
      const double e_first = edges[0];
      const double log_span = std::log(edges[n] / e_first);
      std::vector<MeanAccumulator> acc(static_cast<std::size_t>(n));
      auto rng = substream(settings.seed, 0);
      for (std::int64_t i = 0; i < settings.sample_count; ++i)
      {
         const double mu = sample_mu(rng);
         const double e = e_first * std::exp(log_span * uniform01(rng));
         // Log-uniform density is 1 / (e log_span).
         const double f = norm * mu_span * log_span * e * intensity(mu, e, scenario, mode).value;
         const auto* hit = std::upper_bound(edges.data(), edges.data() + n + 1, e);
         const Eigen::Index group = std::clamp<Eigen::Index>(hit - edges.data() - 1, 0, n - 1);
         for (Eigen::Index g = 0; g < n; ++g)
            acc[static_cast<std::size_t>(g)].add(g == group ? f : 0.0);
      }
      for (Eigen::Index g = 0; g < n; ++g)
      {
         result.spectrum.values[g] = acc[static_cast<std::size_t>(g)].mean;
         result.standard_error[g] = acc[static_cast<std::size_t>(g)].standard_error();
      }
   }
   result.spectrum.densities = result.spectrum.values.cwiseQuotient(structure.widths());
   return result;
}

}  // namespace movingslab
