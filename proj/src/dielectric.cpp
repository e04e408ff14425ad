#include "lifshitz/dielectric.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace lifshitz {

OscillatorModel::OscillatorModel(std::vector<OscillatorTerm> terms)
    : terms_(std::move(terms)) {
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const auto& t = terms_[j];
    if (!(t.strength > 0.0)) {
      std::ostringstream msg;
      msg << "oscillator term " << j << ": strength must be > 0, got " << t.strength;
      throw std::invalid_argument(msg.str());
    }
    if (!(t.resonance > 0.0)) {
      std::ostringstream msg;
      msg << "oscillator term " << j << ": resonance must be > 0, got " << t.resonance;
      throw std::invalid_argument(msg.str());
    }
    if (!(t.damping >= 0.0)) {
      std::ostringstream msg;
      msg << "oscillator term " << j << ": damping must be >= 0, got " << t.damping;
      throw std::invalid_argument(msg.str());
    }
  }
}

double OscillatorModel::eval(double xi) const {
  double eps = 1.0;
  for (const auto& t : terms_) {
    const double w2 = t.resonance * t.resonance;
    eps += t.strength * w2 / (w2 + t.damping * xi + xi * xi);
  }
  return eps;
}

double OscillatorModel::static_value() const {
  double eps = 1.0;
  for (const auto& t : terms_) eps += t.strength;
  return eps;
}

DrudeModel::DrudeModel(double plasma_frequency, double relaxation_rate)
    : plasma_frequency_(plasma_frequency), relaxation_rate_(relaxation_rate) {
  if (!(plasma_frequency_ > 0.0))
    throw std::invalid_argument("drude model: plasma frequency must be > 0");
  if (!(relaxation_rate_ >= 0.0))
    throw std::invalid_argument("drude model: relaxation rate must be >= 0");
}

double DrudeModel::eval(double xi) const {
  return 1.0 + plasma_frequency_ * plasma_frequency_ / (xi * (xi + relaxation_rate_));
}

TabulatedModel::TabulatedModel(std::vector<double> xi_samples,
                               std::vector<double> eps_samples)
    : xi_samples_(std::move(xi_samples)),
      eps_samples_(std::move(eps_samples)),
      clamp_warned_(std::make_shared<std::atomic<bool>>(false)) {
  if (xi_samples_.size() < 2)
    throw std::invalid_argument("tabulated model: need at least two samples");
  if (xi_samples_.size() != eps_samples_.size())
    throw std::invalid_argument("tabulated model: xi and eps sample counts differ");
  for (std::size_t k = 0; k < xi_samples_.size(); ++k) {
    if (!(xi_samples_[k] > 0.0)) {
      std::ostringstream msg;
      msg << "tabulated model: sample " << k << ": xi must be > 0";
      throw std::invalid_argument(msg.str());
    }
    if (k > 0 && !(xi_samples_[k] > xi_samples_[k - 1])) {
      std::ostringstream msg;
      msg << "tabulated model: sample " << k << ": xi must be strictly increasing";
      throw std::invalid_argument(msg.str());
    }
    if (!(eps_samples_[k] > 1.0)) {
      std::ostringstream msg;
      msg << "tabulated model: sample " << k
          << ": epsilon must be > 1 for log-log interpolation, got " << eps_samples_[k];
      throw std::invalid_argument(msg.str());
    }
  }
  log_xi_.reserve(xi_samples_.size());
  log_em1_.reserve(xi_samples_.size());
  for (std::size_t k = 0; k < xi_samples_.size(); ++k) {
    log_xi_.push_back(std::log(xi_samples_[k]));
    log_em1_.push_back(std::log(eps_samples_[k] - 1.0));
  }
}

double TabulatedModel::eval(double xi) const {
  if (xi <= xi_samples_.front() || xi >= xi_samples_.back()) {
    // Exact at the endpoints themselves; warn once when truly outside.
    if (xi < xi_samples_.front() || xi > xi_samples_.back()) {
      bool expected = false;
      if (clamp_warned_->compare_exchange_strong(expected, true)) {
        std::cerr << "warning: tabulated permittivity queried at xi = " << xi
                  << " rad/s, outside the sampled range [" << xi_samples_.front()
                  << ", " << xi_samples_.back()
                  << "]; clamping to the nearest endpoint (reported once)\n";
      }
    }
    return xi <= xi_samples_.front() ? eps_samples_.front() : eps_samples_.back();
  }
  const double lx = std::log(xi);
  const auto it = std::upper_bound(log_xi_.begin(), log_xi_.end(), lx);
  const std::size_t hi = static_cast<std::size_t>(it - log_xi_.begin());
  const std::size_t lo = hi - 1;
  if (lx == log_xi_[lo]) return eps_samples_[lo];
  const double t = (lx - log_xi_[lo]) / (log_xi_[hi] - log_xi_[lo]);
  return 1.0 + std::exp(log_em1_[lo] + t * (log_em1_[hi] - log_em1_[lo]));
}

double StaticLimit::value() const {
  if (metallic_)
    throw std::logic_error(
        "static limit is divergent (metallic response); no finite value exists");
  return value_;
}

double eval_epsilon(const DielectricModel& model, double xi) {
  if (xi < 0.0)
    throw std::domain_error("eval_epsilon: xi must be >= 0 (imaginary-axis frequency)");
  if (xi == 0.0) {
    const StaticLimit s = static_limit(model);
    if (s.is_metallic())
      throw std::domain_error(
          "eval_epsilon: divergent static limit (metallic response at xi = 0); "
          "query static_limit() instead");
    return s.value();
  }
  return std::visit([xi](const auto& m) { return m.eval(xi); }, model);
}

StaticLimit static_limit(const DielectricModel& model) {
  struct Visitor {
    StaticLimit operator()(const OscillatorModel& m) const {
      return StaticLimit::finite(m.static_value());
    }
    StaticLimit operator()(const DrudeModel&) const { return StaticLimit::metallic(); }
    StaticLimit operator()(const TabulatedModel& m) const {
      // The table clamps below its first sample, so the static limit is the
      // lowest-frequency sample value.
      return StaticLimit::finite(m.eps_samples().front());
    }
  };
  return std::visit(Visitor{}, model);
}

}  // namespace lifshitz
