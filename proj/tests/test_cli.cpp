#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "movingslab/cli/commands.hpp"
#include "movingslab/cli/config.hpp"

using namespace movingslab;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = MOVINGSLAB_DATA_DIR;
const fs::path scratch_root = MOVINGSLAB_SCRATCH_DIR;

fs::path fresh_dir(const std::string& name)
{
   const auto dir = scratch_root / name;
   fs::remove_all(dir);
   fs::create_directories(dir);
   return dir;
}

void write_text(const fs::path& path, const std::string& text)
{
   std::ofstream out(path);
   out << text;
}

std::string read_text(const fs::path& path)
{
   std::ifstream in(path, std::ios::binary);
   return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::set<std::string> file_names(const fs::path& dir)
{
   std::set<std::string> names;
   for (const auto& entry : fs::directory_iterator(dir))
      names.insert(entry.path().filename().string());
   return names;
}

cli::RunConfig parse(const std::string& text, const fs::path& base = scratch_root)
{
   std::istringstream in(text);
   return cli::parse_config(in, base);
}

const std::string synthetic =
    "opacity.synthetic.base_amplitude = 5\n"
    "opacity.synthetic.exponent = -3\n"
    "opacity.synthetic.lines = 1.5:0.02:250\n";

std::size_t count_lines(const std::string& text)
{
   std::size_t n = 0;
   for (char ch : text)
      n += ch == '\n';
   return n;
}

}  // namespace

TEST_CASE("bundled config")
{
   const auto config = cli::load_config(data_dir / "reference_slab.cfg");
   CHECK(config.slab.length_cm == 0.4);
   CHECK(config.slab.speed_cm_per_ns == 0.5994);
   CHECK(config.density_g_cc == 0.1);
   CHECK(config.opacity_synthetic.has_value());
   CHECK(config.modes.size() == 3);
   CHECK(config.output_dir == (data_dir / "out").lexically_normal());
   CHECK(cli::build_groups(config).group_count() == 50);
}

TEST_CASE("config echo reads back to the same run")
{
   const auto config = cli::load_config(data_dir / "reference_slab.cfg");
   std::ostringstream text;
   for (const auto& [key, value] : cli::config_echo(config))
      text << key << " = " << value << '\n';
   const auto again = parse(text.str());
   CHECK(cli::config_echo(again) == cli::config_echo(config));
}

TEST_CASE("config errors")
{
   SUBCASE("unknown key")
   {
      CHECK_THROWS_AS(parse(synthetic + "slab.colour = red\n"), cli::ConfigError);
   }
   SUBCASE("malformed line")
   {
      CHECK_THROWS_AS(parse(synthetic + "slab.length_cm 0.4\n"), cli::ConfigError);
   }
   SUBCASE("malformed number")
   {
      CHECK_THROWS_AS(parse(synthetic + "slab.length_cm = 0.4cm\n"), cli::ConfigError);
   }
   SUBCASE("duplicate key")
   {
      CHECK_THROWS_AS(parse(synthetic + "ode.steps = 8\node.steps = 16\n"), cli::ConfigError);
   }
   SUBCASE("no opacity source")
   {
      CHECK_THROWS_AS(parse("slab.length_cm = 0.4\n"), cli::ConfigError);
   }
   SUBCASE("two opacity sources")
   {
      CHECK_THROWS_AS(parse(synthetic + "opacity.file = table.csv\n"), cli::ConfigError);
   }
   SUBCASE("missing opacity file")
   {
      CHECK_THROWS_AS(parse("opacity.file = does_not_exist.csv\n"), cli::ConfigError);
   }
   SUBCASE("observer inside the slab's reach")
   {
      CHECK_THROWS_AS(parse(synthetic + "observer.z_cm = 5\n"), cli::ConfigError);
   }
   SUBCASE("unknown mode")
   {
      CHECK_THROWS_AS(parse(synthetic + "modes = full_mmc,no_aberration\n"), cli::ConfigError);
   }
   SUBCASE("unsorted custom edges")
   {
      const auto dir = fresh_dir("unsorted_edges");
      write_text(dir / "edges.csv", "0.1\n0.5\n0.3\n");
      CHECK_THROWS_AS(parse(synthetic + "groups.file = edges.csv\n", dir), cli::ConfigError);
   }
   SUBCASE("missing config file")
   {
      CHECK_THROWS_AS(cli::load_config(scratch_root / "absent.cfg"), cli::ConfigError);
   }
}

TEST_CASE("opacity from a file, relative to the config")
{
   const auto dir = fresh_dir("opacity_file");
   write_text(dir / "table.csv", "# e, kappa\n0.0001,1e6\n100,1e-3\n");
   write_text(dir / "run.cfg", "opacity.file = table.csv\n");
   const auto config = cli::load_config(dir / "run.cfg");
   REQUIRE(config.opacity_file.has_value());
   CHECK(*config.opacity_file == dir / "table.csv");
   CHECK(cli::build_material(config)->kappa(1.0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("intensity command")
{
   const auto config = cli::load_config(data_dir / "reference_slab.cfg");
   std::ostringstream out;
   std::ostringstream err;

   SUBCASE("empty direction list is a usage error")
   {
      const std::vector<double> energies{1.0};
      CHECK(cli::cmd_intensity(config, {}, energies, out, err) == cli::exit_usage);
      CHECK_FALSE(err.str().empty());
   }
   SUBCASE("rows for every mode, direction and energy")
   {
      const std::vector<double> mus{0.01, 0.5, 1.0};
      const std::vector<double> energies{1.0, 1.5};
      REQUIRE(cli::cmd_intensity(config, mus, energies, out, err) == cli::exit_ok);
      const auto text = out.str();
      CHECK(text.rfind("mode,mu,energy_keV,intensity\n", 0) == 0);
      CHECK(count_lines(text) == 1 + 3 * 3 * 2);
      CHECK(text.find("full_mmc,0.01,1,0\n") != std::string::npos);
   }
   SUBCASE("out-of-range direction")
   {
      const std::vector<double> mus{1.5};
      const std::vector<double> energies{1.0};
      CHECK(cli::cmd_intensity(config, mus, energies, out, err) == cli::exit_usage);
      CHECK(out.str().empty());
   }
   SUBCASE("energy outside the opacity table")
   {
      const std::vector<double> mus{1.0};
      const std::vector<double> energies{100.0};
      CHECK(cli::cmd_intensity(config, mus, energies, out, err) == cli::exit_failed);
      CHECK(err.str().find("opacity.clamp") != std::string::npos);
   }
}

TEST_CASE("groups command")
{
   for (auto [label, rows] : {std::pair{GroupLabel::Coarse, 51}, std::pair{GroupLabel::Medium, 90},
                              std::pair{GroupLabel::Fine, 125}})
   {
      std::ostringstream out;
      CHECK(cli::cmd_groups(preset_groups(label), out) == cli::exit_ok);
      CHECK(out.str().rfind("edge_index,edge_keV\n", 0) == 0);
      CHECK(count_lines(out.str()) == static_cast<std::size_t>(rows) + 1);
   }
}

TEST_CASE("spectrum command")
{
   const auto dir = fresh_dir("spectrum");
   write_text(dir / "edges.csv", "0.01\n0.3\n1\n1.45\n1.55\n3\n10\n");
   const std::string base = synthetic + "groups.file = edges.csv\n";

   SUBCASE("reference mode only")
   {
      write_text(dir / "one.cfg", base + "modes = full_mmc\noutput.dir = one\n");
      std::ostringstream log;
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "one.cfg"), log) == cli::exit_ok);
      CHECK(file_names(dir / "one") ==
            std::set<std::string>{"spectrum_full_mmc.csv", "spectrum.json"});
   }
   SUBCASE("three modes, csv only")
   {
      write_text(dir / "three.cfg", base + "output.dir = three\noutput.formats = csv\n");
      std::ostringstream log;
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "three.cfg"), log) == cli::exit_ok);
      CHECK(file_names(dir / "three") ==
            std::set<std::string>{"spectrum_full_mmc.csv", "spectrum_stationary_slab.csv",
                                  "spectrum_no_frequency_doppler.csv",
                                  "errors_stationary_slab_vs_full_mmc.csv",
                                  "errors_no_frequency_doppler_vs_full_mmc.csv"});
      const auto csv = read_text(dir / "three" / "spectrum_full_mmc.csv");
      CHECK(csv.rfind("group_index,e_lo_keV,e_hi_keV,value\n", 0) == 0);
      CHECK(count_lines(csv) == 7);
   }
   SUBCASE("json document")
   {
      write_text(dir / "json.cfg", base + "output.dir = json\noutput.formats = json\n");
      std::ostringstream log;
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "json.cfg"), log) == cli::exit_ok);
      const auto doc = nlohmann::json::parse(read_text(dir / "json" / "spectrum.json"));
      CHECK(doc.contains("version"));
      CHECK(doc.contains("config"));
      CHECK(doc.contains("quadrature"));
      CHECK(doc["results"].size() == 5);
      CHECK(file_names(dir / "json") == std::set<std::string>{"spectrum.json"});
   }
   SUBCASE("reruns are byte identical")
   {
      write_text(dir / "a.cfg", base + "output.dir = a\n");
      write_text(dir / "b.cfg", base + "output.dir = b\n");
      std::ostringstream log;
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "a.cfg"), log) == cli::exit_ok);
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "b.cfg"), log) == cli::exit_ok);
      const auto names = file_names(dir / "a");
      CHECK(names == file_names(dir / "b"));
      for (const auto& name : names)
      {
         if (name == "spectrum.json")
            continue;  // echoes its own output directory
         CHECK(read_text(dir / "a" / name) == read_text(dir / "b" / name));
      }
      std::vector<std::string> first;
      for (const auto& name : names)
         first.push_back(read_text(dir / "a" / name));
      REQUIRE(cli::cmd_spectrum(cli::load_config(dir / "a.cfg"), log) == cli::exit_ok);
      std::size_t i = 0;
      for (const auto& name : names)
         CHECK(read_text(dir / "a" / name) == first[i++]);
   }
}

TEST_CASE("verify command")
{
   SUBCASE("bundled config passes")
   {
      const auto dir = fresh_dir("verify_ok");
      auto config = cli::load_config(data_dir / "reference_slab.cfg");
      config.output_dir = dir;
      std::ostringstream log;
      CHECK(cli::cmd_verify(config, log) == cli::exit_ok);
      CHECK(log.str().find("[FAIL]") == std::string::npos);
      const auto names = file_names(dir);
      CHECK(names.count("verify.json") == 1);
      CHECK(names.count("verify_summary.csv") == 1);
   }
   if constexpr (fault_injection_enabled)
   {
      SUBCASE("flipped Doppler sign is caught")
      {
         auto config = parse(synthetic + "mc.samples = 2000\nfault.flip_doppler_sign = true\n");
         const auto report = cli::run_verification(config);
         CHECK_FALSE(report.passed());
         for (const auto& check : report.checks)
         {
            if (check.name == "longitudinal_doppler_identity")
               CHECK_FALSE(check.passed);
            if (check.name == "ode_equivalence")
               CHECK(check.passed);
         }
         config.output_dir = fresh_dir("verify_fault");
         std::ostringstream log;
         CHECK(cli::cmd_verify(config, log) != cli::exit_ok);
      }
   }
}
