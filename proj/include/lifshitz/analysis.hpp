#pragma once

/// Separation sweeps, attraction-to-repulsion crossings, and film-thickness
/// scans built on top of the energy solver.

#include <string>
#include <utility>
#include <vector>

#include "lifshitz/energy.hpp"

namespace lifshitz {

/// One sampled separation of an energy curve.
struct CurvePoint {
  double separation = 0.0;  ///< [m]
  double energy = 0.0;      ///< [J/m^2]
  double pressure = 0.0;    ///< [N/m^2]
  bool converged = true;
};

/// A sampled energy-versus-separation curve together with its provenance.
struct EnergyCurve {
  std::vector<CurvePoint> points;  ///< separations strictly increasing
  std::string stack_description;
  SolverConfig config;
};

/// One-line human-readable description of a stack, e.g.
/// "SiO2 | Au(2e-09 m) | toluene | SiO2".
std::string describe(const LayerStack& stack);

/// Evaluates the stack at every separation in the grid.
///
/// The grid must be strictly increasing and positive (std::invalid_argument
/// otherwise).  Per-point non-convergence is recorded on the point rather
/// than aborting the sweep.  threads > 1 distributes points over that many
/// workers; the result is deterministic and independent of the thread count.
EnergyCurve separation_sweep(const LayerStack& stack,
                             const std::vector<double>& separations,
                             const SolverConfig& config, int threads = 1);

enum class LevitationStatus {
  Found,                ///< crossing located, peak bracketed
  NoLevitationInRange,  ///< no attraction-to-repulsion sign change in bracket
  NotConverged,         ///< a solver evaluation failed to converge on the way
};

/// Stable text form used in CSV output: "ok", "no levitation in range",
/// "not converged".
const char* to_string(LevitationStatus status);

/// Where a surface would float: the separation below which the interaction
/// pulls the surfaces together and above which it pushes them apart.
struct LevitationResult {
  LevitationStatus status = LevitationStatus::NoLevitationInRange;
  double levitation_distance = 0.0;  ///< crossing d* [m]; quiet NaN if none
  double peak_separation = 0.0;      ///< repulsive maximum above d* [m]; NaN if none
  double peak_energy = 0.0;          ///< E at the peak [J/m^2]; NaN if none
  double bracket_lo = 0.0;           ///< search bracket actually used [m]
  double bracket_hi = 0.0;
};

/// Locates the sign change of the free energy within [d_lo, d_hi].
///
/// Requires 0 < d_lo < d_hi (std::invalid_argument otherwise).  The bracket
/// is validated first: unless E(d_lo) < 0 < E(d_hi), the result carries
/// status NoLevitationInRange.  The crossing is bisected to 1e-3 relative
/// bracket width, then the repulsive maximum above it is located with a
/// golden-section search over (d*, d_hi).
LevitationResult levitation_distance(const LayerStack& stack, double d_lo,
                                     double d_hi, const SolverConfig& config);

/// Runs levitation_distance for each thickness of the gap-facing left film
/// (the last entry of left_films).
///
/// The stack must carry at least one left film (std::invalid_argument
/// otherwise); entries are processed in the given order, in parallel when
/// threads > 1, deterministically.  A very large thickness (say 1 m)
/// reproduces the bare thick-coating result.
std::vector<std::pair<double, LevitationResult>> thickness_scan(
    const LayerStack& stack, const std::vector<double>& thicknesses, double d_lo,
    double d_hi, const SolverConfig& config, int threads = 1);

}  // namespace lifshitz
