#include "movingslab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <ostream>
#include <sstream>

#include "movingslab/cli/report.hpp"
#include "movingslab/intensity.hpp"
#include "movingslab/mc_oracle.hpp"
#include "movingslab/ode_oracle.hpp"

#ifndef MOVINGSLAB_VERSION
#define MOVINGSLAB_VERSION "dev"
#endif

namespace movingslab::cli {

namespace {

constexpr int grid_size = 32;
constexpr double ode_tolerance = 1e-8;
constexpr double identity_ulps = 4.0;
constexpr double slope_lo = -4.5;
constexpr double slope_hi = -3.5;
constexpr int mc_seed_count = 10;
constexpr double mc_sigmas = 3.0;
constexpr double mc_required_fraction = 0.99;

double ulp(double x)
{
   x = std::abs(x);
   return std::nextafter(x, std::numeric_limits<double>::infinity()) - x;
}

nlohmann::json config_json(const RunConfig& config)
{
   nlohmann::json j = nlohmann::json::object();
   for (const auto& [key, value] : config_echo(config))
      j[key] = value;
   return j;
}

// Directions clustered toward mu_min so that every window regime is sampled.
std::vector<double> direction_grid(double mu_lo)
{
   std::vector<double> mus(grid_size);
   for (int j = 0; j < grid_size; ++j)
   {
      const double t = (j + 0.5) / grid_size;
      mus[static_cast<std::size_t>(j)] = mu_lo + (1.0 - mu_lo) * t * t;
   }
   mus.back() = 1.0;
   return mus;
}

std::vector<double> energy_grid(double lo, double hi)
{
   std::vector<double> es(grid_size);
   for (int i = 0; i < grid_size; ++i)
      es[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (grid_size - 1));
   es.back() = hi;
   return es;
}

bool wants_csv(OutputFormat f)
{
   return f != OutputFormat::Json;
}

bool wants_json(OutputFormat f)
{
   return f != OutputFormat::Csv;
}

VerifyCheck longitudinal_check(const SlabScenario& scenario)
{
   const double beta = scenario.beta();
   const double exact = std::sqrt((1.0 - beta) / (1.0 + beta));
   const double shift = doppler_state(1.0, scenario, VariantMode::FullMMC).shift;
   const double ulps = std::abs(shift - exact) / ulp(exact);
   return {"longitudinal_doppler_identity", ulps, identity_ulps, "<=", ulps <= identity_ulps,
           "gamma*D(mu=1) vs sqrt((1-beta)/(1+beta)), in ulp"};
}

VerifyCheck path_identity_check(const SlabScenario& scenario)
{
   const double back_opens = window_breakpoints(scenario).back_opens;
   const double lo = std::max(back_opens, scenario.beta());
   double worst = 0.0;
   int sampled = 0;
   for (int j = 1; j <= grid_size; ++j)
   {
      const double mu = lo + (1.0 - lo) * static_cast<double>(j) / grid_size;
      const auto window = emission_window(mu, scenario);
      if (!(window.t_back > 0.0))
         continue;
      const double s = path_length(window.t_back, window.t_front, scenario.c());
      const double closing = mu * scenario.c() - scenario.speed();
      const double closed = scenario.length() * scenario.c() / closing;
      // Both window times come from differences of terms of size max(mu c t_Z, Z).
      const double scale =
          scenario.c() * std::max(mu * scenario.c() * scenario.observer_t(), scenario.observer_z()) /
          closing;
      worst = std::max(worst, std::abs(s - closed) / ulp(scale));
      ++sampled;
   }
   VerifyCheck check{"path_length_identity", worst, identity_ulps, "<=", worst <= identity_ulps,
                     "c(t_f - t_b) vs L c/(mu c - v), in ulp of c max(mu c t_Z, Z)/(mu c - v)"};
   if (sampled == 0)
      check.note += "; no direction with both clamps inactive";
   return check;
}

VerifyCheck ode_grid_check(const RunConfig& config, const SlabScenario& scenario,
                           std::ostringstream& csv)
{
   csv << "mode,mu,energy_keV,closed_form,ode,relative_deviation\n";
   const auto energies = energy_grid(config.verify_e_min, config.verify_e_max);
   double worst = 0.0;
   std::string failure;
   for (auto mode : config.modes)
   {
      for (double mu : direction_grid(mu_min(scenario, mode)))
      {
         for (double e : energies)
         {
            try
            {
               const double closed = intensity(mu, e, scenario, mode).value;
               const double ode =
                   ode_intensity(mu, e, scenario, mode, {config.ode_steps, false}).intensity;
               const double dev =
                   closed == ode ? 0.0 : std::abs(ode - closed) / std::max(closed, 1e-300);
               worst = std::max(worst, dev);
               csv << to_string(mode) << ',' << format_double(mu) << ',' << format_double(e) << ','
                   << format_double(closed) << ',' << format_double(ode) << ','
                   << format_double(dev) << '\n';
            }
            catch (const std::exception& ex)
            {
               if (failure.empty())
                  failure = ex.what();
               worst = std::numeric_limits<double>::infinity();
            }
         }
      }
   }
   VerifyCheck check{"ode_equivalence", worst, ode_tolerance, "<", worst < ode_tolerance,
                     "max relative deviation, " + std::to_string(grid_size) + "x" +
                         std::to_string(grid_size) + " grid, " + std::to_string(config.ode_steps) +
                         " RK4 steps"};
   if (!failure.empty())
      check.note += "; " + failure;
   return check;
}

VerifyCheck rk4_order_check(const RunConfig& config, const SlabScenario& scenario,
                            std::ostringstream& csv)
{
   // Pick the normal-incidence ray whose optical depth is closest to 2, where
   // the RK4 error is well above rounding.
   const auto energies = energy_grid(config.verify_e_min, config.verify_e_max);
   double best_energy = energies.front();
   double best_gap = std::numeric_limits<double>::infinity();
   for (double e : energies)
   {
      const auto terms = transfer_terms(1.0, e, scenario, VariantMode::FullMMC);
      const double gap = std::abs(std::log(terms.sigma_lab * terms.path_length / 2.0));
      if (gap < best_gap)
      {
         best_gap = gap;
         best_energy = e;
      }
   }
   const int steps[] = {8, 16, 32, 64};
   VerifyCheck check{"rk4_order", 0.0, slope_lo, "in [-4.5, -3.5]", false, ""};
   try
   {
      const auto report = convergence_report(1.0, best_energy, scenario, VariantMode::FullMMC, steps);
      csv << "steps,deviation\n";
      for (const auto& row : report.rows)
         csv << row.steps << ',' << format_double(row.deviation) << '\n';
      check.note = "mu=1, energy_keV=" + format_double(best_energy);
      if (report.degenerate)
      {
         check.passed = true;
         check.value = std::numeric_limits<double>::quiet_NaN();
         check.note += "; deviations at rounding floor, slope check skipped";
      }
      else
      {
         check.value = *report.slope;
         check.passed = check.value >= slope_lo && check.value <= slope_hi;
      }
   }
   catch (const std::exception& ex)
   {
      check.note = ex.what();
   }
   return check;
}

VerifyCheck mc_check(const RunConfig& config, const SlabScenario& scenario,
                     const GroupStructure& structure, std::ostringstream& csv)
{
   const auto mode = config.modes.front();
   const auto deterministic = group_energy_density(scenario, structure, mode, config.quad);
   csv << "seed,group_index,deterministic,monte_carlo,standard_error,z\n";
   int inside = 0;
   int total = 0;
   for (int k = 0; k < mc_seed_count; ++k)
   {
      McSettings settings = config.mc;
      settings.seed = config.mc.seed + static_cast<std::uint64_t>(k);
      const auto mc = mc_group_energy(scenario, structure, mode, settings);
      for (Eigen::Index g = 0; g < structure.group_count(); ++g)
      {
         const double diff = std::abs(mc.spectrum.values[g] - deterministic.values[g]);
         const double se = mc.standard_error[g];
         const double z = diff == 0.0 ? 0.0 : diff / se;
         inside += diff <= mc_sigmas * se ? 1 : 0;
         ++total;
         csv << settings.seed << ',' << g << ',' << format_double(deterministic.values[g]) << ','
             << format_double(mc.spectrum.values[g]) << ',' << format_double(se) << ','
             << format_double(z) << '\n';
      }
   }
   const double fraction = static_cast<double>(inside) / static_cast<double>(total);
   return {"mc_consistency", fraction, mc_required_fraction, ">=", fraction >= mc_required_fraction,
           "fraction of (seed, group) pairs within 3 standard errors, " +
               std::to_string(mc_seed_count) + " seeds, mode " + std::string(to_string(mode))};
}

nlohmann::json check_json(const VerifyCheck& c)
{
   return {{"name", c.name},
           {"value", std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr)},
           {"threshold", c.threshold},
           {"comparison", c.comparison},
           {"passed", c.passed},
           {"note", c.note}};
}

}  // namespace

std::string version_string()
{
   return std::string("movingslab ") + MOVINGSLAB_VERSION;
}

bool VerifyReport::passed() const
{
   return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

int cmd_intensity(const RunConfig& config, std::span<const double> mus,
                  std::span<const double> energies, std::ostream& out, std::ostream& err)
{
   if (mus.empty() || energies.empty())
   {
      err << "intensity: need at least one direction (--mu) and one energy (--energy)\n";
      return exit_usage;
   }
   for (double mu : mus)
   {
      if (!(mu >= -1.0 && mu <= 1.0))
      {
         err << "intensity: direction cosine " << format_double(mu) << " is outside [-1, 1]\n";
         return exit_usage;
      }
   }
   for (double e : energies)
   {
      if (!(e > 0.0) || !std::isfinite(e))
      {
         err << "intensity: energy " << format_double(e) << " keV must be positive\n";
         return exit_usage;
      }
   }
   const auto scenario = build_scenario(config);
   std::ostringstream csv;
   csv << "mode,mu,energy_keV,intensity\n";
   try
   {
      for (auto mode : config.modes)
      {
         for (double mu : mus)
         {
            for (double e : energies)
            {
               csv << to_string(mode) << ',' << format_double(mu) << ',' << format_double(e)
                   << ',' << format_double(intensity(mu, e, scenario, mode).value) << '\n';
            }
         }
      }
   }
   catch (const OpacityRangeError& e)
   {
      err << "intensity: " << e.what() << " (set opacity.clamp = true to extrapolate)\n";
      return exit_failed;
   }
   out << csv.str();
   return exit_ok;
}

int cmd_spectrum(const RunConfig& config, std::ostream& log)
{
   const auto scenario = build_scenario(config);
   const auto structure = build_groups(config);
   const auto comparison = compare_variants(scenario, structure, config.quad, config.modes);

   std::filesystem::create_directories(config.output_dir);
   nlohmann::json results = nlohmann::json::array();
   nlohmann::json diagnostics = nlohmann::json::array();
   bool converged = true;

   for (const auto& spectrum : comparison.spectra)
   {
      const std::string stem = "spectrum_" + std::string(to_string(spectrum.mode));
      if (wants_csv(config.formats))
      {
         std::ostringstream csv;
         write_spectrum_csv(csv, spectrum);
         write_file_atomic(config.output_dir / (stem + ".csv"), csv.str());
      }
      results.push_back(to_json(spectrum));
      for (Eigen::Index g = 0; g < spectrum.group_count(); ++g)
      {
         const auto& d = spectrum.diagnostics[static_cast<std::size_t>(g)];
         if (!d.converged)
         {
            converged = false;
            diagnostics.push_back({{"kind", "non_convergence"},
                                   {"mode", std::string(to_string(spectrum.mode))},
                                   {"group_index", g},
                                   {"value", spectrum.values[g]},
                                   {"error_estimate", d.error_estimate}});
         }
      }
      log << "spectrum " << to_string(spectrum.mode) << ": " << spectrum.group_count()
          << " groups" << (spectrum.converged() ? "" : " (NOT CONVERGED)") << '\n';
   }
   for (const auto& table : comparison.errors)
   {
      const std::string stem = "errors_" + std::string(to_string(table.candidate)) + "_vs_" +
                               std::string(to_string(table.reference));
      if (wants_csv(config.formats))
      {
         std::ostringstream csv;
         write_error_csv(csv, table);
         write_file_atomic(config.output_dir / (stem + ".csv"), csv.str());
      }
      results.push_back(to_json(table));
      log << stem << ": max " << format_double(table.max) << "%, mean " << format_double(table.mean)
          << "%\n";
   }
   if (wants_json(config.formats))
   {
      nlohmann::json doc = {{"version", version_string()},
                            {"config", config_json(config)},
                            {"quadrature", to_json(config.quad)},
                            {"results", std::move(results)},
                            {"diagnostics", std::move(diagnostics)}};
      write_file_atomic(config.output_dir / "spectrum.json", doc.dump(2) + "\n");
   }
   return converged ? exit_ok : exit_failed;
}

VerifyReport run_verification(const RunConfig& config)
{
   const auto scenario = build_scenario(config);
   const auto structure = build_groups(config);
   VerifyReport report;
   std::ostringstream ode_csv;
   std::ostringstream order_csv;
   std::ostringstream mc_csv;
   report.checks.push_back(longitudinal_check(scenario));
   report.checks.push_back(path_identity_check(scenario));
   report.checks.push_back(ode_grid_check(config, scenario, ode_csv));
   report.checks.push_back(rk4_order_check(config, scenario, order_csv));
   report.checks.push_back(mc_check(config, scenario, structure, mc_csv));

   std::ostringstream summary;
   summary << "check,value,threshold,comparison,status\n";
   for (const auto& c : report.checks)
      summary << c.name << ',' << format_double(c.value) << ',' << format_double(c.threshold) << ','
              << c.comparison << ',' << (c.passed ? "pass" : "fail") << '\n';
   report.tables = {{"verify_summary", summary.str()},
                    {"verify_ode_grid", ode_csv.str()},
                    {"verify_convergence", order_csv.str()},
                    {"verify_mc", mc_csv.str()}};
   return report;
}

int cmd_verify(const RunConfig& config, std::ostream& log)
{
   const auto report = run_verification(config);
   std::filesystem::create_directories(config.output_dir);
   if (wants_csv(config.formats))
   {
      for (const auto& [stem, contents] : report.tables)
         write_file_atomic(config.output_dir / (stem + ".csv"), contents);
   }
   if (wants_json(config.formats))
   {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : report.checks)
         checks.push_back(check_json(c));
      nlohmann::json doc = {{"version", version_string()},
                            {"config", config_json(config)},
                            {"results", std::move(checks)},
                            {"diagnostics", nlohmann::json::array()}};
      write_file_atomic(config.output_dir / "verify.json", doc.dump(2) + "\n");
   }
   for (const auto& c : report.checks)
   {
      char value[32];
      std::snprintf(value, sizeof value, "%.6g", c.value);
      log << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << value << ' ' << c.comparison;
      if (c.comparison.find('[') == std::string::npos)
      {
         std::snprintf(value, sizeof value, "%.6g", c.threshold);
         log << ' ' << value;
      }
      if (!c.note.empty())
         log << "  (" << c.note << ')';
      log << '\n';
   }
   return report.passed() ? exit_ok : exit_failed;
}

int cmd_groups(const GroupStructure& structure, std::ostream& out)
{
   out << "edge_index,edge_keV\n";
   for (Eigen::Index i = 0; i < structure.edges().size(); ++i)
      out << i << ',' << format_double(structure.edges()[i]) << '\n';
   return exit_ok;
}

}  // namespace movingslab::cli
