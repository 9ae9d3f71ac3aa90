#include <doctest.h>

#include <cmath>

#include "movingslab/planck.hpp"
#include "movingslab/spectrum.hpp"
#include "approx.hpp"
#include "support.hpp"

using namespace movingslab;
using testing::rel_diff;

namespace {

// Composite Simpson on a log grid, independent of the library integrators.
double planck_band(double lo, double hi, double T, int intervals = 20000)
{
   const double a = std::log(lo);
   const double h = (std::log(hi) - a) / intervals;
   double sum = 0.0;
   for (int i = 0; i <= intervals; ++i)
   {
      const double e = std::exp(a + i * h);
      const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      sum += w * planck(e, T) * e;
   }
   return sum * h / 3.0;
}

GroupStructure small_structure()
{
   Eigen::VectorXd edges(7);
   edges << 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0;
   return GroupStructure(edges);
}

}  // namespace

TEST_CASE("direction rule")
{
   const auto scenario = testing::reference_scenario();
   const auto breaks = window_breakpoints(scenario);
   for (auto mode : {VariantMode::FullMMC, VariantMode::StationarySlab})
   {
      const auto rule = direction_quadrature(scenario, mode, 16);
      CHECK(rule.size() == 32);
      CHECK(rule.weights.sum() == testing::approx(1.0 - breaks.front_opens).epsilon(1e-13));
      CHECK(rule.nodes.minCoeff() > breaks.front_opens);
   }
}

TEST_CASE("transparent slab")
{
   const auto scenario = testing::reference_scenario(testing::constant_material(0.0));
   const auto spectrum = group_energy_density(scenario, coarse_groups(), VariantMode::FullMMC);
   CHECK(spectrum.values.isZero(0.0));
   CHECK(spectrum.converged());
}

TEST_CASE("saturated slab at rest")
{
   const auto scenario = testing::at_rest(testing::constant_material(1e8));
   const auto structure = small_structure();
   const auto spectrum = group_energy_density(scenario, structure, VariantMode::FullMMC);
   const double open = 1.0 - window_breakpoints(scenario).front_opens;
   const double norm = 2.0 * constants::pi / constants::c;
   for (Eigen::Index g = 0; g < structure.group_count(); ++g)
   {
      const double oracle = norm * open * planck_band(structure.lower(g), structure.upper(g), 1.0);
      CHECK(rel_diff(spectrum.values[g], oracle) < 1e-8);
      CHECK(spectrum.densities[g] == testing::approx(spectrum.values[g] / structure.widths()[g]));
   }
}

TEST_CASE("group sums match the unpartitioned band")
{
   const auto scenario = testing::reference_scenario();
   const auto coarse = coarse_groups();
   const auto spectrum = group_energy_density(scenario, coarse, VariantMode::FullMMC);
   REQUIRE(spectrum.converged());
   GroupDiagnostic diag;
   const double band = band_energy_density(scenario, 0.001, 30.0, VariantMode::FullMMC, {}, &diag);
   CHECK(diag.converged);
   CHECK(rel_diff(spectrum.values.sum(), band) < 1e-8);

   SUBCASE("merging adjacent groups")
   {
      Eigen::VectorXd merged(26);
      for (Eigen::Index i = 0; i <= 25; ++i)
         merged[i] = coarse.edges()[2 * i];
      const auto wide = group_energy_density(scenario, GroupStructure(merged), VariantMode::FullMMC);
      for (Eigen::Index g = 0; g < 25; ++g)
         REQUIRE(rel_diff(wide.values[g], spectrum.values[2 * g] + spectrum.values[2 * g + 1]) <
                 1e-10);
   }
   SUBCASE("refinement children")
   {
      const auto medium = group_energy_density(scenario, medium_groups(), VariantMode::FullMMC);
      Eigen::Index child = 0;
      for (Eigen::Index g = 0; g < coarse.group_count(); ++g)
      {
         double sum = 0.0;
         while (child < medium.group_count() && medium.structure.upper(child) <= coarse.upper(g))
            sum += medium.values[child++];
         REQUIRE(rel_diff(sum, spectrum.values[g]) < 1e-8);
      }
      CHECK(child == medium.group_count());
   }
}

TEST_CASE("direction refinement")
{
   const auto scenario = testing::reference_scenario();
   QuadratureSettings fine;
   fine.mu_nodes = 128;
   const auto base = group_energy_density(scenario, coarse_groups(), VariantMode::FullMMC);
   const auto doubled = group_energy_density(scenario, coarse_groups(), VariantMode::FullMMC, fine);
   for (Eigen::Index g = 0; g < base.group_count(); ++g)
      REQUIRE(rel_diff(base.values[g], doubled.values[g]) < 1e-6);
}

TEST_CASE("error tables")
{
   const auto structure = build_log_groups(3, 0.1, 10.0);
   GroupSpectrum ref{structure, VariantMode::FullMMC, Eigen::Vector3d(2.0, 0.0, 4.0),
                     Eigen::Vector3d::Zero(), {}};
   GroupSpectrum cand{structure, VariantMode::NoFrequencyDoppler, Eigen::Vector3d(1.0, 5.0, 4.0),
                      Eigen::Vector3d::Zero(), {}};
   const auto table = percent_abs_error(cand, ref);
   CHECK(table.percent[0] == testing::approx(50.0).epsilon(1e-15));
   CHECK(table.undefined[1]);
   CHECK(std::isnan(table.percent[1]));
   CHECK(table.percent[2] == 0.0);
   CHECK(table.max == testing::approx(50.0));
   CHECK(table.argmax == 0);
   CHECK(table.mean == testing::approx(25.0));
   CHECK(table.candidate == VariantMode::NoFrequencyDoppler);
   CHECK(table.reference == VariantMode::FullMMC);

   const auto self = percent_abs_error(cand, cand);
   CHECK(self.max == 0.0);

   GroupSpectrum empty{structure, VariantMode::FullMMC, Eigen::Vector3d::Zero(),
                       Eigen::Vector3d::Zero(), {}};
   const auto undefined = percent_abs_error(cand, empty);
   CHECK(std::isnan(undefined.max));
   CHECK(undefined.argmax == -1);

   GroupSpectrum other{coarse_groups(), VariantMode::FullMMC, Eigen::VectorXd::Ones(50),
                       Eigen::VectorXd::Ones(50), {}};
   CHECK_THROWS_AS(percent_abs_error(cand, other), std::invalid_argument);
}

TEST_CASE("variant comparison")
{
   SUBCASE("slab at rest")
   {
      const auto comparison = compare_variants(testing::at_rest(), small_structure());
      REQUIRE(comparison.spectra.size() == 3);
      REQUIRE(comparison.errors.size() == 2);
      for (const auto& table : comparison.errors)
         CHECK(table.max == 0.0);
   }
   SUBCASE("smooth opacity gives smooth errors")
   {
      const auto comparison =
          compare_variants(testing::reference_scenario(testing::constant_material(10.0)),
                           coarse_groups());
      const auto& ref = comparison.spectra[0].values;
      for (std::size_t k = 1; k < comparison.spectra.size(); ++k)
      {
         const Eigen::VectorXd signed_pct =
             100.0 * (comparison.spectra[k].values - ref).cwiseQuotient(ref);
         const double largest = signed_pct.cwiseAbs().maxCoeff();
         CHECK(largest > 0.0);
         for (Eigen::Index g = 1; g + 1 < signed_pct.size(); ++g)
         {
            const double curvature = signed_pct[g + 1] - 2.0 * signed_pct[g] + signed_pct[g - 1];
            REQUIRE(std::abs(curvature) < 0.1 * largest);
         }
      }
   }
   CHECK_THROWS_AS(compare_variants(testing::at_rest(), small_structure(), {}, {}),
                   std::invalid_argument);
}

TEST_CASE("determinism")
{
   const auto scenario = testing::reference_scenario();
   const auto a = group_energy_density(scenario, small_structure(), VariantMode::NoFrequencyDoppler);
   const auto b = group_energy_density(scenario, small_structure(), VariantMode::NoFrequencyDoppler);
   for (Eigen::Index g = 0; g < a.group_count(); ++g)
      REQUIRE(a.values[g] == b.values[g]);
}

TEST_CASE("invalid settings")
{
   const auto scenario = testing::reference_scenario();
   QuadratureSettings bad;
   bad.mu_nodes = 0;
   CHECK_THROWS_AS(group_energy_density(scenario, small_structure(), VariantMode::FullMMC, bad),
                   std::domain_error);
   CHECK_THROWS_AS(band_energy_density(scenario, 2.0, 1.0, VariantMode::FullMMC),
                   std::domain_error);
}
