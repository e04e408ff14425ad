#include "lifshitz/analysis.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lifshitz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Relative width at which bracketing searches stop.
constexpr double kBracketTol = 1e-3;

void run_indexed(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

std::string describe(const LayerStack& stack) {
  std::ostringstream out;
  out << stack.left_halfspace->name;
  for (const auto& f : stack.left_films)
    out << " | " << f.material->name << "(" << f.thickness << " m)";
  out << " | " << stack.gap_material->name;
  // Right films are stored in deposition order (substrate first), so print
  // them reversed to keep the whole line reading left-to-right physically.
  for (auto it = stack.right_films.rbegin(); it != stack.right_films.rend(); ++it)
    out << " | " << it->material->name << "(" << it->thickness << " m)";
  out << " | " << stack.right_halfspace->name;
  return out.str();
}

EnergyCurve separation_sweep(const LayerStack& stack,
                             const std::vector<double>& separations,
                             const SolverConfig& config, int threads) {
  stack.validate();
  config.validate();
  if (separations.empty())
    throw std::invalid_argument("separation sweep: grid is empty");
  for (std::size_t i = 0; i < separations.size(); ++i) {
    if (!(separations[i] > 0.0)) {
      std::ostringstream msg;
      msg << "separation sweep: grid[" << i << "] must be > 0, got " << separations[i];
      throw std::invalid_argument(msg.str());
    }
    if (i > 0 && !(separations[i] > separations[i - 1])) {
      std::ostringstream msg;
      msg << "separation sweep: grid[" << i << "] must be strictly increasing";
      throw std::invalid_argument(msg.str());
    }
  }

  EnergyCurve curve;
  curve.points.resize(separations.size());
  curve.stack_description = describe(stack);
  curve.config = config;

  run_indexed(separations.size(), threads, [&](std::size_t i) {
    LayerStack s = stack;
    s.separation = separations[i];
    const EnergyResult r = evaluate(s, config);
    curve.points[i] = CurvePoint{separations[i], r.energy, r.pressure, r.converged};
  });
  return curve;
}

const char* to_string(LevitationStatus status) {
  switch (status) {
    case LevitationStatus::Found:
      return "ok";
    case LevitationStatus::NoLevitationInRange:
      return "no levitation in range";
    case LevitationStatus::NotConverged:
      return "not converged";
  }
  return "unknown";
}

LevitationResult levitation_distance(const LayerStack& stack, double d_lo, double d_hi,
                                     const SolverConfig& config) {
  stack.validate();
  config.validate();
  if (!(d_lo > 0.0) || !(d_hi > d_lo)) {
    std::ostringstream msg;
    msg << "levitation search: bracket must satisfy 0 < d_lo < d_hi, got [" << d_lo
        << ", " << d_hi << "]";
    throw std::invalid_argument(msg.str());
  }

  LevitationResult res;
  res.bracket_lo = d_lo;
  res.bracket_hi = d_hi;
  res.levitation_distance = kNaN;
  res.peak_separation = kNaN;
  res.peak_energy = kNaN;

  bool all_converged = true;
  auto energy_at = [&](double d) {
    LayerStack s = stack;
    s.separation = d;
    const EnergyResult r = evaluate(s, config);
    if (!r.converged) all_converged = false;
    return r.energy;
  };

  const double e_lo = energy_at(d_lo);
  const double e_hi = energy_at(d_hi);
  // Levitation means attraction below the crossing and repulsion above it;
  // any other sign pattern over the bracket is "no levitation" here.
  if (!(e_lo < 0.0 && e_hi > 0.0)) {
    res.status = all_converged ? LevitationStatus::NoLevitationInRange
                               : LevitationStatus::NotConverged;
    return res;
  }

  double lo = d_lo, hi = d_hi;
  while ((hi - lo) > kBracketTol * 0.5 * (hi + lo)) {
    const double mid = 0.5 * (lo + hi);
    if (energy_at(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  res.levitation_distance = 0.5 * (lo + hi);

  // Golden-section search for the repulsive maximum on (d*, d_hi).  If the
  // true peak lies beyond d_hi the search settles at the bracket edge, which
  // is the best statement available inside the requested range.
  constexpr double kGolden = 0.6180339887498949;
  double a = res.levitation_distance, b = d_hi;
  double c = b - kGolden * (b - a);
  double d = a + kGolden * (b - a);
  double fc = energy_at(c);
  double fd = energy_at(d);
  while ((b - a) > kBracketTol * 0.5 * (a + b)) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = energy_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = energy_at(d);
    }
  }
  res.peak_separation = 0.5 * (a + b);
  res.peak_energy = energy_at(res.peak_separation);
  res.status =
      all_converged ? LevitationStatus::Found : LevitationStatus::NotConverged;
  return res;
}

std::vector<std::pair<double, LevitationResult>> thickness_scan(
    const LayerStack& stack, const std::vector<double>& thicknesses, double d_lo,
    double d_hi, const SolverConfig& config, int threads) {
  stack.validate();
  if (stack.left_films.empty())
    throw std::invalid_argument("thickness scan: stack has no left film to vary");
  if (thicknesses.empty())
    throw std::invalid_argument("thickness scan: no thicknesses given");
  for (std::size_t i = 0; i < thicknesses.size(); ++i) {
    if (!(thicknesses[i] > 0.0)) {
      std::ostringstream msg;
      msg << "thickness scan: thicknesses[" << i << "] must be > 0, got "
          << thicknesses[i];
      throw std::invalid_argument(msg.str());
    }
  }

  std::vector<std::pair<double, LevitationResult>> out(thicknesses.size());
  run_indexed(thicknesses.size(), threads, [&](std::size_t i) {
    LayerStack s = stack;
    s.left_films.back().thickness = thicknesses[i];
    out[i] = {thicknesses[i], levitation_distance(s, d_lo, d_hi, config)};
  });
  return out;
}

}  // namespace lifshitz
