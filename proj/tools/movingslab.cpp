// Command-line front end: intensity, spectrum, verify, groups.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "movingslab/cli/commands.hpp"
#include "movingslab/cli/config.hpp"
#include "movingslab/cli/report.hpp"

namespace cli = movingslab::cli;

namespace {

struct CommonOptions
{
   std::string config_path;
   std::string out_dir;
   std::string format;
   std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* sub, CommonOptions& opts, bool config_required)
{
   auto* config = sub->add_option("--config", opts.config_path, "Run configuration file");
   if (config_required)
      config->required();
   sub->add_option("--out", opts.out_dir, "Output directory (overrides output.dir)");
   sub->add_option("--format", opts.format, "Output format")
       ->check(CLI::IsMember({"csv", "json", "both"}));
   sub->add_option("--seed", opts.seed, "Monte Carlo seed (overrides mc.seed)");
}

cli::RunConfig load(const CommonOptions& opts)
{
   auto config = cli::load_config(opts.config_path);
   if (!opts.out_dir.empty())
      config.output_dir = std::filesystem::absolute(opts.out_dir).lexically_normal();
   if (!opts.format.empty())
      config.formats = *cli::parse_output_format(opts.format);
   if (opts.seed)
      config.mc.seed = *opts.seed;
   return config;
}

}  // namespace

int main(int argc, char** argv)
{
   CLI::App app{"Moving-slab radiative transfer benchmark"};
   app.set_version_flag("--version", cli::version_string());
   app.require_subcommand(1);

   CommonOptions opts;
   std::vector<double> mus;
   std::vector<double> energies;
   std::string preset;
   std::string edge_file;

   auto* intensity = app.add_subcommand("intensity", "Closed-form intensity on a (mu, energy) grid");
   add_common(intensity, opts, true);
   intensity->add_option("--mu", mus, "Direction cosines")->delimiter(',');
   intensity->add_option("--energy", energies, "Photon energies, keV")->delimiter(',');

   auto* spectrum = app.add_subcommand("spectrum", "Multigroup energy densities and error tables");
   add_common(spectrum, opts, true);

   auto* verify = app.add_subcommand("verify", "Check the closed form against independent oracles");
   add_common(verify, opts, true);

   auto* groups = app.add_subcommand("groups", "Print a group structure's edges");
   add_common(groups, opts, false);
   groups->add_option("--preset", preset, "coarse, medium or fine")
       ->check(CLI::IsMember({"coarse", "medium", "fine"}));
   groups->add_option("--file", edge_file, "Custom edge file");

   try
   {
      app.parse(argc, argv);
   }
   catch (const CLI::ParseError& e)
   {
      const int code = app.exit(e);
      return code == 0 ? 0 : cli::exit_usage;
   }

   try
   {
      if (intensity->parsed())
      {
         const auto config = load(opts);
         if (!opts.out_dir.empty())
         {
            std::filesystem::create_directories(config.output_dir);
            std::ostringstream buffer;
            const int rc = cli::cmd_intensity(config, mus, energies, buffer, std::cerr);
            if (rc == cli::exit_ok)
               cli::write_file_atomic(config.output_dir / "intensity.csv", buffer.str());
            return rc;
         }
         return cli::cmd_intensity(config, mus, energies, std::cout, std::cerr);
      }
      if (spectrum->parsed())
         return cli::cmd_spectrum(load(opts), std::cout);
      if (verify->parsed())
         return cli::cmd_verify(load(opts), std::cout);
      if (groups->parsed())
      {
         std::optional<movingslab::GroupStructure> structure;
         if (!edge_file.empty() && !preset.empty())
         {
            std::cerr << "groups: use either --preset or --file\n";
            return cli::exit_usage;
         }
         if (!edge_file.empty())
         {
            std::ifstream in(edge_file);
            if (!in)
            {
               std::cerr << "groups: cannot open '" << edge_file << "'\n";
               return cli::exit_failed;
            }
            structure = movingslab::load_group_edges(in);
         }
         else if (!preset.empty())
            structure = movingslab::preset_groups(*movingslab::parse_group_label(preset));
         else if (!opts.config_path.empty())
            structure = cli::build_groups(load(opts));
         else
            structure = movingslab::coarse_groups();
         return cli::cmd_groups(*structure, std::cout);
      }
   }
   catch (const cli::ConfigError& e)
   {
      std::cerr << "error: " << e.what() << '\n';
      return cli::exit_usage;
   }
   catch (const std::exception& e)
   {
      std::cerr << "error: " << e.what() << '\n';
      return cli::exit_failed;
   }
   return cli::exit_usage;
}
