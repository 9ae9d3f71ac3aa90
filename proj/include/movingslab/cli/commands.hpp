#ifndef MOVINGSLAB_CLI_COMMANDS_HPP
#define MOVINGSLAB_CLI_COMMANDS_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "movingslab/cli/config.hpp"

namespace movingslab::cli {

/// Process exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

std::string version_string();

/// CSV rows mode,mu,energy_keV,intensity for every (mode, mu, energy).
int cmd_intensity(const RunConfig& config, std::span<const double> mus,
                  std::span<const double> energies, std::ostream& out, std::ostream& err);

/// Writes spectrum_<mode>.{csv}, errors_<mode>_vs_<reference>.csv and
/// spectrum.json under config.output_dir. Non-zero exit when a group failed to
/// converge.
int cmd_spectrum(const RunConfig& config, std::ostream& log);

struct VerifyCheck
{
   std::string name;
   double value = 0.0;
   double threshold = 0.0;
   std::string comparison;  // how value is compared with threshold
   bool passed = false;
   std::string note;
};

struct VerifyReport
{
   std::vector<VerifyCheck> checks;
   /// Detail tables in CSV form, keyed by file stem.
   std::vector<std::pair<std::string, std::string>> tables;

   bool passed() const;
};

/// Runs the oracle checks without writing files:
///  - longitudinal Doppler identity gamma D(mu=1) = sqrt((1-beta)/(1+beta)), 4 ulp
///  - path identity c (t_f - t_b) = L c/(mu c - v) with both clamps inactive,
///    4 ulp of c t_f
///  - closed form vs RK4 on a 32 x 32 (mu, e) grid for each configured mode,
///    relative deviation < 1e-8
///  - RK4 convergence slope in [-4.5, -3.5]
///  - deterministic E_g within 3 Monte Carlo standard errors in >= 99% of
///    groups over 10 seeds
VerifyReport run_verification(const RunConfig& config);

/// Runs the oracle checks, writes verify_*.csv and verify.json, and prints a
/// pass/fail line per check. Exit 0 iff every check passes.
int cmd_verify(const RunConfig& config, std::ostream& log);

/// edge_index,edge_keV
int cmd_groups(const GroupStructure& structure, std::ostream& out);

}  // namespace movingslab::cli

#endif  // MOVINGSLAB_CLI_COMMANDS_HPP
