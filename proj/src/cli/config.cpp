#include "movingslab/cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "movingslab/cli/report.hpp"

namespace movingslab::cli {

namespace {

std::string trim(std::string_view s)
{
   const auto first = s.find_first_not_of(" \t\r");
   if (first == std::string_view::npos)
      return {};
   const auto last = s.find_last_not_of(" \t\r");
   return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
   std::vector<std::string> parts;
   std::size_t start = 0;
   while (true)
   {
      const auto pos = s.find(sep, start);
      parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
      if (pos == std::string_view::npos)
         break;
      start = pos + 1;
   }
   return parts;
}

[[noreturn]] void bad_value(std::size_t line, const std::string& key, const std::string& value,
                            const std::string& expected)
{
   throw ConfigError("config line " + std::to_string(line) + ": " + key + " = '" + value +
                     "' is not " + expected);
}

double to_double(std::size_t line, const std::string& key, const std::string& value)
{
   double out = 0.0;
   const char* begin = value.data();
   if (!value.empty() && value.front() == '+')
      ++begin;
   const auto [ptr, ec] = std::from_chars(begin, value.data() + value.size(), out);
   if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
      bad_value(line, key, value, "a number");
   return out;
}

template <typename Int>
Int to_integer(std::size_t line, const std::string& key, const std::string& value)
{
   Int out{};
   const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
   if (value.empty() || ec != std::errc{} || ptr != value.data() + value.size())
      bad_value(line, key, value, "an integer");
   return out;
}

bool to_bool(std::size_t line, const std::string& key, const std::string& value)
{
   if (value == "true" || value == "yes" || value == "1")
      return true;
   if (value == "false" || value == "no" || value == "0")
      return false;
   bad_value(line, key, value, "a boolean (true/false)");
}

std::vector<GaussianLine> to_lines(std::size_t line, const std::string& key,
                                   const std::string& value)
{
   std::vector<GaussianLine> lines;
   if (value.empty() || value == "none")
      return lines;
   for (const auto& item : split(value, ';'))
   {
      if (item.empty())
         continue;
      const auto fields = split(item, ':');
      if (fields.size() != 3)
         bad_value(line, key, value, "a list of center:width:amplitude entries");
      lines.push_back({to_double(line, key, fields[0]), to_double(line, key, fields[1]),
                       to_double(line, key, fields[2])});
   }
   return lines;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value)
{
   std::filesystem::path p(value);
   if (p.is_relative())
      p = base / p;
   return p.lexically_normal();
}

SyntheticSource& synthetic(RunConfig& config)
{
   if (!config.opacity_synthetic)
      config.opacity_synthetic.emplace(SyntheticSource{{5.0, -3.0, {}}});
   return *config.opacity_synthetic;
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view name)
{
   if (name == "csv")
      return OutputFormat::Csv;
   if (name == "json")
      return OutputFormat::Json;
   if (name == "both")
      return OutputFormat::Both;
   return std::nullopt;
}

std::string_view to_string(OutputFormat format)
{
   switch (format)
   {
   case OutputFormat::Csv:
      return "csv";
   case OutputFormat::Json:
      return "json";
   case OutputFormat::Both:
      return "both";
   }
   return "both";
}

RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir)
{
   RunConfig config;
   std::set<std::string> seen;
   std::string raw;
   std::size_t line_no = 0;
   while (std::getline(in, raw))
   {
      ++line_no;
      const auto line = trim(raw);
      if (line.empty() || line.front() == '#')
         continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
         throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
      const auto key = trim(std::string_view(line).substr(0, eq));
      const auto value = trim(std::string_view(line).substr(eq + 1));
      if (!seen.insert(key).second)
         throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key " + key);

      auto num = [&] { return to_double(line_no, key, value); };

      if (key == "slab.length_cm")
         config.slab.length_cm = num();
      else if (key == "slab.speed_cm_per_ns")
         config.slab.speed_cm_per_ns = num();
      else if (key == "slab.temperature_kev")
         config.slab.temperature_kev = num();
      else if (key == "slab.density_g_cc")
         config.density_g_cc = num();
      else if (key == "observer.z_cm")
         config.slab.observer_z_cm = num();
      else if (key == "observer.t_ns")
         config.slab.observer_t_ns = num();
      else if (key == "physics.planck_prefactor")
         config.planck_prefactor = num();
      else if (key == "opacity.file")
         config.opacity_file = resolve(base_dir, value);
      else if (key == "opacity.clamp")
         config.opacity_clamp = to_bool(line_no, key, value);
      else if (key == "opacity.synthetic.base_amplitude")
         synthetic(config).spec.base_amplitude = num();
      else if (key == "opacity.synthetic.exponent")
         synthetic(config).spec.power_exponent = num();
      else if (key == "opacity.synthetic.lines")
         synthetic(config).spec.lines = to_lines(line_no, key, value);
      else if (key == "opacity.synthetic.points")
         synthetic(config).points = to_integer<std::size_t>(line_no, key, value);
      else if (key == "opacity.synthetic.e_min")
         synthetic(config).e_min = num();
      else if (key == "opacity.synthetic.e_max")
         synthetic(config).e_max = num();
      else if (key == "groups.preset")
      {
         const auto label = parse_group_label(value);
         if (!label || *label == GroupLabel::Custom)
            bad_value(line_no, key, value, "one of coarse, medium, fine");
         config.groups_preset = *label;
      }
      else if (key == "groups.file")
         config.groups_file = resolve(base_dir, value);
      else if (key == "modes")
      {
         config.modes.clear();
         for (const auto& name : split(value, ','))
         {
            const auto mode = parse_variant_mode(name);
            if (!mode)
               bad_value(line_no, key, value,
                         "a list of full_mmc, stationary_slab, no_frequency_doppler, "
                         "no_doppler_factors");
            config.modes.push_back(*mode);
         }
      }
      else if (key == "quad.mu_nodes")
         config.quad.mu_nodes = to_integer<Eigen::Index>(line_no, key, value);
      else if (key == "quad.freq_rtol")
         config.quad.freq_rtol = num();
      else if (key == "quad.max_depth")
         config.quad.max_depth = to_integer<unsigned>(line_no, key, value);
      else if (key == "mc.samples")
         config.mc.sample_count = to_integer<std::int64_t>(line_no, key, value);
      else if (key == "mc.seed")
         config.mc.seed = to_integer<std::uint64_t>(line_no, key, value);
      else if (key == "mc.stratify")
         config.mc.stratify_groups = to_bool(line_no, key, value);
      else if (key == "ode.steps")
         config.ode_steps = to_integer<int>(line_no, key, value);
      else if (key == "verify.e_min")
         config.verify_e_min = num();
      else if (key == "verify.e_max")
         config.verify_e_max = num();
      else if (key == "output.dir")
         config.output_dir = resolve(base_dir, value);
      else if (key == "output.formats")
      {
         const auto format = parse_output_format(value);
         if (!format)
            bad_value(line_no, key, value, "one of csv, json, both");
         config.formats = *format;
      }
      else if (key == "fault.drop_frequency_doppler" || key == "fault.flip_doppler_sign")
      {
         if (!fault_injection_enabled)
            throw ConfigError("config line " + std::to_string(line_no) + ": " + key +
                              " needs a build with MOVINGSLAB_FAULT_INJECTION");
         const bool on = to_bool(line_no, key, value);
         if (key == "fault.drop_frequency_doppler")
            config.faults.drop_frequency_doppler = on;
         else
            config.faults.flip_doppler_sign = on;
      }
      else
         throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                           "'");
   }

   if (config.opacity_file && config.opacity_synthetic)
      throw ConfigError("config sets both opacity.file and opacity.synthetic.*; choose one");
   if (!config.opacity_file && !config.opacity_synthetic)
      throw ConfigError("config needs an opacity source: opacity.file or opacity.synthetic.*");
   if (config.groups_file && seen.count("groups.preset"))
      throw ConfigError("config sets both groups.preset and groups.file; choose one");
   if (config.modes.empty())
      throw ConfigError("config 'modes' must list at least one mode");
   if (config.ode_steps < 1)
      throw ConfigError("ode.steps must be at least 1");
   if (config.mc.sample_count < 1)
      throw ConfigError("mc.samples must be at least 1");
   if (config.quad.mu_nodes < 1 || !(config.quad.freq_rtol > 0.0 && config.quad.freq_rtol < 1.0))
      throw ConfigError("quad.mu_nodes must be >= 1 and quad.freq_rtol in (0, 1)");
   if (!(config.verify_e_min > 0.0) || !(config.verify_e_max > config.verify_e_min))
      throw ConfigError("verify.e_min/e_max must satisfy 0 < e_min < e_max");
   if (config.output_dir.is_relative())
      config.output_dir = (base_dir / config.output_dir).lexically_normal();

   // Build once so scenario and file errors surface before any computation.
   build_scenario(config);
   build_groups(config);
   return config;
}

RunConfig load_config(const std::filesystem::path& path)
{
   std::ifstream in(path);
   if (!in)
      throw ConfigError("cannot open config file '" + path.string() + "'");
   auto base = std::filesystem::absolute(path).parent_path();
   return parse_config(in, base);
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config)
{
   std::vector<std::pair<std::string, std::string>> kv;
   auto num = [&](const char* key, double v) { kv.emplace_back(key, format_double(v)); };
   num("slab.length_cm", config.slab.length_cm);
   num("slab.speed_cm_per_ns", config.slab.speed_cm_per_ns);
   num("slab.temperature_kev", config.slab.temperature_kev);
   num("slab.density_g_cc", config.density_g_cc);
   num("observer.z_cm", config.slab.observer_z_cm);
   num("observer.t_ns", config.slab.observer_t_ns);
   num("physics.planck_prefactor", config.planck_prefactor);
   if (config.opacity_file)
      kv.emplace_back("opacity.file", config.opacity_file->string());
   if (config.opacity_synthetic)
   {
      const auto& s = *config.opacity_synthetic;
      num("opacity.synthetic.base_amplitude", s.spec.base_amplitude);
      num("opacity.synthetic.exponent", s.spec.power_exponent);
      std::string lines;
      for (const auto& l : s.spec.lines)
      {
         if (!lines.empty())
            lines += ';';
         lines += format_double(l.center) + ':' + format_double(l.width) + ':' +
                  format_double(l.amplitude);
      }
      kv.emplace_back("opacity.synthetic.lines", lines.empty() ? "none" : lines);
      kv.emplace_back("opacity.synthetic.points", std::to_string(s.points));
      num("opacity.synthetic.e_min", s.e_min);
      num("opacity.synthetic.e_max", s.e_max);
   }
   kv.emplace_back("opacity.clamp", config.opacity_clamp ? "true" : "false");
   if (config.groups_file)
      kv.emplace_back("groups.file", config.groups_file->string());
   else
      kv.emplace_back("groups.preset", std::string(to_string(config.groups_preset)));
   std::string modes;
   for (auto m : config.modes)
   {
      if (!modes.empty())
         modes += ',';
      modes += to_string(m);
   }
   kv.emplace_back("modes", modes);
   kv.emplace_back("quad.mu_nodes", std::to_string(config.quad.mu_nodes));
   num("quad.freq_rtol", config.quad.freq_rtol);
   kv.emplace_back("quad.max_depth", std::to_string(config.quad.max_depth));
   kv.emplace_back("mc.samples", std::to_string(config.mc.sample_count));
   kv.emplace_back("mc.seed", std::to_string(config.mc.seed));
   kv.emplace_back("mc.stratify", config.mc.stratify_groups ? "true" : "false");
   kv.emplace_back("ode.steps", std::to_string(config.ode_steps));
   num("verify.e_min", config.verify_e_min);
   num("verify.e_max", config.verify_e_max);
   kv.emplace_back("output.dir", config.output_dir.string());
   kv.emplace_back("output.formats", std::string(to_string(config.formats)));
   if (config.faults.drop_frequency_doppler)
      kv.emplace_back("fault.drop_frequency_doppler", "true");
   if (config.faults.flip_doppler_sign)
      kv.emplace_back("fault.flip_doppler_sign", "true");
   return kv;
}

std::shared_ptr<const Material> build_material(const RunConfig& config)
{
   const auto policy = config.opacity_clamp ? Extrapolation::ClampToEndpoint : Extrapolation::Error;
   try
   {
      if (config.opacity_file)
      {
         auto table = load_table_file(config.opacity_file->string()).with_extrapolation(policy);
         return std::make_shared<const Material>(config.density_g_cc, std::move(table));
      }
      const auto& s = *config.opacity_synthetic;
      auto table = synthesize_table(s.spec, s.points, s.e_min, s.e_max).with_extrapolation(policy);
      return std::make_shared<const Material>(config.density_g_cc, std::move(table));
   }
   catch (const ConfigError&)
   {
      throw;
   }
   catch (const std::exception& e)
   {
      throw ConfigError(std::string("opacity: ") + e.what());
   }
}

SlabScenario build_scenario(const RunConfig& config)
{
   auto material = build_material(config);
   try
   {
      return SlabScenario(config.slab, std::move(material), config.planck_prefactor, config.faults);
   }
   catch (const std::exception& e)
   {
      throw ConfigError(std::string("scenario: ") + e.what());
   }
}

GroupStructure build_groups(const RunConfig& config)
{
   try
   {
      if (config.groups_file)
      {
         std::ifstream in(*config.groups_file);
         if (!in)
            throw ConfigError("cannot open group edge file '" + config.groups_file->string() + "'");
         return load_group_edges(in);
      }
      return preset_groups(config.groups_preset);
   }
   catch (const ConfigError&)
   {
      throw;
   }
   catch (const std::exception& e)
   {
      throw ConfigError(std::string("groups: ") + e.what());
   }
}

}  // namespace movingslab::cli
