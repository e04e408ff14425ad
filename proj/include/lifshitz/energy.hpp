#pragma once

/// Interaction free energy and pressure between the two surfaces of a
/// LayerStack.
///
/// At temperature T > 0 the free energy per unit area is a sum over discrete
/// imaginary (Matsubara) frequencies xi_n = 2 pi n k_B T / hbar,
///
///   E(d) = (k_B T / 2 pi) sum'_n  integral_0^inf dk k
///            sum_pol ln[1 - r_left r_right exp(-2 kappa_3 d)],
///
/// with the n = 0 term carrying half weight.  The pressure is the (negative)
/// separation derivative, evaluated from the same integrand analytically.
/// Negative energy/pressure means attraction; positive means repulsion.
///
/// The k integral is performed in the variable y = 2 kappa_3 d, where the
/// integrand decays as exp(-y) and a panel-doubled Gauss-Legendre rule
/// converges rapidly.  The Matsubara sum is truncated when a geometric tail
/// estimate drops below matsubara_rel_cutoff of the running total.

#include "lifshitz/stack.hpp"

namespace lifshitz {

/// Numerical controls for the solver.
struct SolverConfig {
  double temperature = 300.0;  ///< [K], >= 0 (0 only valid for energy_T0)
  bool retarded = true;        ///< include finite-speed-of-light effects
  double rel_tol = 1e-8;       ///< quadrature refinement target, in (0, 1)
  int k_quadrature_order = 64;       ///< Gauss-Legendre points per panel, >= 2
  double matsubara_rel_cutoff = 1e-10;  ///< tail threshold, in (0, 1)
  long matsubara_max_n = 10000000;      ///< hard cap on summed terms, >= 1

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// One evaluated stack at one separation.
struct EnergyResult {
  double energy = 0.0;    ///< free energy per unit area [J/m^2]
  double pressure = 0.0;  ///< force per unit area [N/m^2], negative = attractive
  bool converged = true;  ///< quadrature and frequency sum/integral both settled
  long matsubara_terms = 0;   ///< positive-frequency terms summed (finite T)
  double tail_estimate = 0.0; ///< estimated magnitude of the truncated tail [J/m^2]
};

/// Evaluates free energy and pressure together at finite temperature.
///
/// Throws std::invalid_argument for temperature == 0 (use energy_T0: the
/// Matsubara spacing collapses and the sum must become an integral).  If the
/// frequency sum reaches matsubara_max_n, or its terms stop decaying, before
/// the tail drops under the cutoff, the partial result is returned with
/// converged = false and the tail estimate filled in.
EnergyResult evaluate(const LayerStack& stack, const SolverConfig& config);

/// Free energy per unit area [J/m^2]; see evaluate().
double free_energy(const LayerStack& stack, const SolverConfig& config);

/// Pressure [N/m^2], negative = attractive; see evaluate().
double pressure(const LayerStack& stack, const SolverConfig& config);

/// The halved n = 0 Matsubara term alone [J/m^2]: the classical
/// (high-temperature / large-separation) limit of the interaction.  Only the
/// TM polarization contributes; metallic media enter as ideal mirrors.
double classical_term(const LayerStack& stack, const SolverConfig& config);

/// Zero-temperature energy and pressure: the Matsubara sum becomes an
/// integral over continuous imaginary frequency, evaluated with the same
/// panel-doubling quadrature.  config.temperature is ignored.  A quadrature
/// that fails to settle (e.g. a formally divergent non-retarded ideal-metal
/// integral) is reported through converged = false.
EnergyResult energy_T0(const LayerStack& stack, const SolverConfig& config);

}  // namespace lifshitz
