#pragma once

/// Dielectric response models evaluated on the imaginary frequency axis.
///
/// Everything downstream of this header consumes the permittivity only at
/// imaginary frequencies omega = i*xi with xi >= 0, where the response
/// function eps(i*xi) of any causal passive medium is real, >= 1, and
/// monotonically non-increasing in xi.  Three model families are provided:
///
///  * OscillatorModel  -- sum of undamped/damped Lorentz oscillator terms,
///  * DrudeModel       -- free-carrier metal with a divergent static limit,
///  * TabulatedModel   -- log-log interpolation of sampled data.

#include <atomic>
#include <memory>
#include <variant>
#include <vector>

namespace lifshitz {

/// One Lorentz term of an oscillator-sum permittivity.
///
/// Contributes strength * resonance^2 / (resonance^2 + damping*xi + xi^2)
/// to eps(i*xi).  Frequencies are angular [rad/s].
struct OscillatorTerm {
  double strength = 0.0;   ///< dimensionless weight C_j, > 0
  double resonance = 0.0;  ///< resonance frequency w_j [rad/s], > 0
  double damping = 0.0;    ///< damping rate g_j [rad/s], >= 0
};

/// Oscillator-sum model: eps(i*xi) = 1 + sum_j C_j w_j^2 / (w_j^2 + g_j xi + xi^2).
class OscillatorModel {
 public:
  /// An empty oscillator sum: vacuum, eps(i*xi) = 1 for all xi.
  OscillatorModel() = default;

  /// Validates every term (strength > 0, resonance > 0, damping >= 0).
  explicit OscillatorModel(std::vector<OscillatorTerm> terms);

  const std::vector<OscillatorTerm>& terms() const { return terms_; }

  double eval(double xi) const;

  /// eps(i*0) = 1 + sum_j C_j.
  double static_value() const;

 private:
  std::vector<OscillatorTerm> terms_;
};

/// Free-carrier metal: eps(i*xi) = 1 + wp^2 / (xi * (xi + nu)).
///
/// The static limit diverges like 1/xi (1/xi^2 for nu = 0), which is what
/// makes the zero-frequency response of a metal qualitatively different from
/// any dielectric: query it through static_limit(), not eval().
class DrudeModel {
 public:
  /// plasma_frequency > 0 [rad/s]; relaxation_rate >= 0 [rad/s].
  DrudeModel(double plasma_frequency, double relaxation_rate);

  double plasma_frequency() const { return plasma_frequency_; }
  double relaxation_rate() const { return relaxation_rate_; }

  /// Requires xi > 0; the static limit is divergent.
  double eval(double xi) const;

 private:
  double plasma_frequency_;
  double relaxation_rate_;
};

/// Sampled permittivity with log-log linear interpolation.
///
/// Stores (xi_k, eps_k) pairs with strictly increasing xi_k > 0 and
/// eps_k > 1, and interpolates ln(eps - 1) linearly in ln(xi).  Queries
/// outside the sampled range clamp to the nearest endpoint; the first such
/// clamp per model emits a one-time warning on stderr so that silent
/// extrapolation cannot skew a calculation unnoticed.
class TabulatedModel {
 public:
  TabulatedModel(std::vector<double> xi_samples, std::vector<double> eps_samples);

  const std::vector<double>& xi_samples() const { return xi_samples_; }
  const std::vector<double>& eps_samples() const { return eps_samples_; }

  double eval(double xi) const;

 private:
  std::vector<double> xi_samples_;
  std::vector<double> eps_samples_;
  std::vector<double> log_xi_;
  std::vector<double> log_em1_;
  std::shared_ptr<std::atomic<bool>> clamp_warned_;
};

using DielectricModel = std::variant<OscillatorModel, DrudeModel, TabulatedModel>;

/// Zero-frequency permittivity: either a finite dielectric constant or the
/// explicit marker that the material is metallic (divergent static response).
class StaticLimit {
 public:
  static StaticLimit metallic() { return StaticLimit(true, 0.0); }
  static StaticLimit finite(double value) { return StaticLimit(false, value); }

  bool is_metallic() const { return metallic_; }

  /// Finite static permittivity; throws std::logic_error when metallic.
  double value() const;

 private:
  StaticLimit(bool metallic, double value) : metallic_(metallic), value_(value) {}
  bool metallic_;
  double value_;
};

/// Evaluates eps(i*xi) for xi >= 0.
///
/// Throws std::domain_error for xi < 0, and for xi == 0 on a metallic model
/// (the static limit is divergent; use static_limit() for that query).
double eval_epsilon(const DielectricModel& model, double xi);

/// Zero-frequency limit of the model, with metals reported explicitly.
StaticLimit static_limit(const DielectricModel& model);

}  // namespace lifshitz
