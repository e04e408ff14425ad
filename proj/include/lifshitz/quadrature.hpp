#pragma once

/// Gauss-Legendre panel quadrature with automatic refinement.
///
/// The integrands in this library are smooth on a half-line after the
/// standard exponential substitution, so a composite Gauss-Legendre rule on
/// uniform panels converges extremely fast; panels are doubled until two
/// successive refinements agree to the requested relative tolerance.

#include <cmath>
#include <cstdlib>
#include <vector>

namespace lifshitz {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule, computed on first use and cached.
/// Thread-safe; requires order >= 2.
const GaussRule& gauss_legendre(int order);

/// A pair of integrals accumulated over the same nodes, with a convergence
/// verdict from panel doubling.
struct PanelIntegral {
  double first = 0.0;
  double second = 0.0;
  bool converged = false;
  int panels = 0;
};

/// Integrates two coupled integrands over [a, b].
///
/// f(y, out_first, out_second) must *add nothing*: it assigns the two
/// integrand values at y.  Panels are doubled (1, 2, 4, ...) until both
/// components of successive composite rules agree to rel_tol relative to the
/// larger of the two magnitudes, or max_panels is exceeded (converged=false).
template <typename F>
PanelIntegral integrate_adaptive(F&& f, double a, double b, int order, double rel_tol,
                                 int max_panels) {
  const GaussRule& rule = gauss_legendre(order);
  PanelIntegral out;
  double prev_first = 0.0, prev_second = 0.0;
  bool have_prev = false;
  for (int panels = 1; panels <= max_panels; panels *= 2) {
    const double h = (b - a) / panels;
    double sum_first = 0.0, sum_second = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      const double mid = lo + 0.5 * h;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double y = mid + 0.5 * h * rule.nodes[i];
        double v1 = 0.0, v2 = 0.0;
        f(y, v1, v2);
        sum_first += rule.weights[i] * v1;
        sum_second += rule.weights[i] * v2;
      }
    }
    sum_first *= 0.5 * h;
    sum_second *= 0.5 * h;
    out.first = sum_first;
    out.second = sum_second;
    out.panels = panels;
    if (have_prev) {
      const double scale =
          std::max({std::abs(sum_first), std::abs(sum_second), 1e-300});
      if (std::abs(sum_first - prev_first) <= rel_tol * scale &&
          std::abs(sum_second - prev_second) <= rel_tol * scale) {
        out.converged = true;
        return out;
      }
    }
    prev_first = sum_first;
    prev_second = sum_second;
    have_prev = true;
  }
  out.converged = false;
  return out;
}

}  // namespace lifshitz
