#ifndef MOVINGSLAB_TESTS_SUPPORT_HPP
#define MOVINGSLAB_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>

#include "movingslab/opacity.hpp"
#include "movingslab/scenario.hpp"

namespace testing {

inline movingslab::SyntheticOpacitySpec line_opacity_spec()
{
   return {5.0, -3.0, {{1.5, 0.02, 250.0}}};
}

inline std::shared_ptr<const movingslab::Material> line_material(double rho = 0.1)
{
   static const auto table = movingslab::synthesize_table(line_opacity_spec(), 8000, 5e-4, 50.0);
   return std::make_shared<const movingslab::Material>(rho, table);
}

inline std::shared_ptr<const movingslab::Material> smooth_material(double rho = 0.1)
{
   static const auto table =
       movingslab::synthesize_table({5.0, -3.0, {}}, 2000, 5e-4, 50.0);
   return std::make_shared<const movingslab::Material>(rho, table);
}

inline std::shared_ptr<const movingslab::Material> constant_material(double kappa,
                                                                     double rho = 0.1)
{
   return std::make_shared<const movingslab::Material>(rho, movingslab::ConstantOpacity{kappa});
}

inline movingslab::SlabScenario reference_scenario(
    std::shared_ptr<const movingslab::Material> material = line_material())
{
   return movingslab::SlabScenario({}, std::move(material));
}

inline movingslab::SlabScenario at_rest(
    std::shared_ptr<const movingslab::Material> material = line_material())
{
   movingslab::SlabParameters p;
   p.speed_cm_per_ns = 0.0;
   return movingslab::SlabScenario(p, std::move(material));
}

inline double rel_diff(double a, double b)
{
   const double scale = std::max(std::abs(a), std::abs(b));
   return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline double ulps_apart(double a, double b, double reference)
{
   const double ulp = std::nextafter(std::abs(reference), std::numeric_limits<double>::infinity()) -
                      std::abs(reference);
   return std::abs(a - b) / ulp;
}

// Small deterministic generator for property sweeps.
class Sampler
{
  public:
   explicit Sampler(std::uint64_t seed) : state_(seed) {}
   double uniform(double lo, double hi)
   {
      state_ += 0x9e3779b97f4a7c15ULL;
      std::uint64_t z = state_;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      z ^= z >> 31;
      return lo + (hi - lo) * static_cast<double>(z >> 11) * 0x1.0p-53;
   }
   double log_uniform(double lo, double hi)
   {
      return std::exp(uniform(std::log(lo), std::log(hi)));
   }

  private:
   std::uint64_t state_;
};

}  // namespace testing

#endif  // MOVINGSLAB_TESTS_SUPPORT_HPP
