#ifndef MOVINGSLAB_ODE_ORACLE_HPP
#define MOVINGSLAB_ODE_ORACLE_HPP

#include <optional>
#include <span>
#include <vector>

#include "movingslab/scenario.hpp"

namespace movingslab {

struct OdeSettings
{
   int step_count = 256;
   /// Also integrate with twice the steps; the finer result is returned with
   /// |I_h - I_h/2| / 7 as its error estimate.
   bool richardson = false;
};

struct OdeResult
{
   double intensity = 0.0;
   std::optional<double> error_estimate;
};

/// Integrates the lab-frame transfer equation dI/ds = eta - sigma I from I = 0
/// at the slab entry over the in-slab path, with fixed-step classical RK4.
///
/// Throws std::domain_error when a step exceeds the RK4 stability limit on the
/// real axis (sigma h > 2.78), since the result would then be meaningless.
OdeResult ode_intensity(double mu, double energy, const SlabScenario& scenario, VariantMode mode,
                        const OdeSettings& settings = {});

struct ConvergenceRow
{
   int steps = 0;
   /// |I_ode - I_closed| / max(I_closed, tiny).
   double deviation = 0.0;
};

struct ConvergenceReport
{
   std::vector<ConvergenceRow> rows;
   /// Least-squares slope of log(deviation) against log(steps). Empty when the
   /// deviations sit at the rounding floor.
   std::optional<double> slope;
   bool degenerate = false;
};

ConvergenceReport convergence_report(double mu, double energy, const SlabScenario& scenario,
                                     VariantMode mode, std::span<const int> step_counts);

}  // namespace movingslab

#endif  // MOVINGSLAB_ODE_ORACLE_HPP
