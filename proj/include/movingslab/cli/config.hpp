#ifndef MOVINGSLAB_CLI_CONFIG_HPP
#define MOVINGSLAB_CLI_CONFIG_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "movingslab/groups.hpp"
#include "movingslab/mc_oracle.hpp"
#include "movingslab/opacity.hpp"
#include "movingslab/scenario.hpp"
#include "movingslab/spectrum.hpp"

namespace movingslab::cli {

class ConfigError : public std::runtime_error
{
  public:
   using std::runtime_error::runtime_error;
};

enum class OutputFormat
{
   Csv,
   Json,
   Both,
};

std::optional<OutputFormat> parse_output_format(std::string_view name);
std::string_view to_string(OutputFormat format);

struct SyntheticSource
{
   SyntheticOpacitySpec spec;
   std::size_t points = 8000;
   double e_min = 5e-4;
   double e_max = 50.0;
};

/// Everything a run needs. Paths are stored absolute once parsed.
struct RunConfig
{
   SlabParameters slab;
   double density_g_cc = 0.1;
   double planck_prefactor = 1.0;

   std::optional<std::filesystem::path> opacity_file;
   std::optional<SyntheticSource> opacity_synthetic;
   bool opacity_clamp = false;

   GroupLabel groups_preset = GroupLabel::Coarse;
   std::optional<std::filesystem::path> groups_file;

   std::vector<VariantMode> modes = {VariantMode::FullMMC, VariantMode::StationarySlab,
                                     VariantMode::NoFrequencyDoppler};
   QuadratureSettings quad;
   McSettings mc;
   int ode_steps = 256;
   double verify_e_min = 0.3;
   double verify_e_max = 20.0;

   std::filesystem::path output_dir = "out";
   OutputFormat formats = OutputFormat::Both;

   FaultInjection faults;
};

/// Parses "key = value" lines; '#' starts a comment. Relative paths resolve
/// against base_dir. Unknown keys and malformed values are errors.
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical key/value listing that parse_config reads back to the same run.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

std::shared_ptr<const Material> build_material(const RunConfig& config);
SlabScenario build_scenario(const RunConfig& config);
GroupStructure build_groups(const RunConfig& config);

}  // namespace movingslab::cli

#endif  // MOVINGSLAB_CLI_CONFIG_HPP
