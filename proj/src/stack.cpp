#include "lifshitz/stack.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lifshitz/constants.hpp"

namespace lifshitz {

void LayerStack::validate() const {
  if (left_halfspace == nullptr)
    throw std::invalid_argument("layer stack: left_halfspace is null");
  if (right_halfspace == nullptr)
    throw std::invalid_argument("layer stack: right_halfspace is null");
  if (gap_material == nullptr)
    throw std::invalid_argument("layer stack: gap_material is null");
  if (!(separation > 0.0)) {
    std::ostringstream msg;
    msg << "layer stack: separation must be > 0, got " << separation;
    throw std::invalid_argument(msg.str());
  }
  auto check_films = [](const std::vector<Layer>& films, const char* which) {
    for (std::size_t j = 0; j < films.size(); ++j) {
      if (films[j].material == nullptr) {
        std::ostringstream msg;
        msg << "layer stack: " << which << "[" << j << "].material is null";
        throw std::invalid_argument(msg.str());
      }
      if (!(films[j].thickness > 0.0)) {
        std::ostringstream msg;
        msg << "layer stack: " << which << "[" << j << "].thickness must be > 0, got "
            << films[j].thickness;
        throw std::invalid_argument(msg.str());
      }
    }
  };
  check_films(left_films, "left_films");
  check_films(right_films, "right_films");
}

double gamma_factor(double epsilon, double xi, double k) {
  if (!(k > 0.0)) throw std::domain_error("gamma_factor: k must be > 0");
  const double r = xi / (c_light * k);
  return std::sqrt(1.0 + epsilon * r * r);
}

double fresnel(Polarization pol, double eps_i, double gamma_i, double eps_j,
               double gamma_j) {
  // Equal permittivities mean there is no interface at all, so the
  // coefficient is exactly zero.  Returning early also protects matched
  // media from rounding noise: callers may reconstruct the two wavenumbers
  // through different (mathematically equivalent) expressions, and the
  // difference below would amplify that last-bit disagreement into a
  // spurious reflection.
  if (eps_i == eps_j) return 0.0;
  if (pol == Polarization::TM) {
    const double a = eps_j * gamma_i;
    const double b = eps_i * gamma_j;
    return (a - b) / (a + b);
  }
  return (gamma_i - gamma_j) / (gamma_i + gamma_j);
}

double film_decay_expm1(double kappa, double thickness) {
  const double arg = 2.0 * kappa * thickness;
  // Below exp(-700) the propagation factor is indistinguishable from zero in
  // double precision and the exponential would underflow; short-circuit so
  // the fold reduces exactly to the bare interface coefficient.
  if (arg > 700.0) return -1.0;
  return std::expm1(-arg);
}

double fold_film(double r_near, double r_far, double decay_expm1) {
  // With x = exp(-2 kappa b) the exact fold is
  //   (r_near + x r_far) / (1 + x r_near r_far).
  // Writing x = 1 + expm1(-2 kappa b) keeps the x -> 1 (vanishing film)
  // limit free of cancellation: the fold degenerates to the Fresnel addition
  // formula exactly instead of through a difference of nearly equal numbers.
  const double num = (r_near + r_far) + decay_expm1 * r_far;
  const double den = (1.0 + r_near * r_far) + decay_expm1 * r_near * r_far;
  return num / den;
}

namespace {

/// Zero-frequency TM Fresnel coefficient for outer | inner from static limits;
/// metallic media behave as ideal mirrors.
double static_fresnel_tm(const StaticLimit& outer, const StaticLimit& inner) {
  if (outer.is_metallic() && inner.is_metallic()) return 0.0;
  if (inner.is_metallic()) return 1.0;
  if (outer.is_metallic()) return -1.0;
  const double ei = outer.value();
  const double ej = inner.value();
  return (ej - ei) / (ej + ei);
}

}  // namespace

double static_side_reflection_tm(const Material& gap, const std::vector<Layer>& films,
                                 const Material& halfspace, double k) {
  if (!(k > 0.0)) throw std::domain_error("static side reflection: k must be > 0");
  const StaticLimit gap_s = static_limit(gap);
  std::vector<StaticLimit> film_s;
  film_s.reserve(films.size());
  for (const auto& f : films) film_s.push_back(static_limit(*f.material));
  const StaticLimit sub_s = static_limit(halfspace);

  // Films are listed in deposition order (first on the substrate, last facing
  // the gap); fold from the substrate outward.
  const StaticLimit* seen_from = films.empty() ? &gap_s : &film_s.front();
  double r = static_fresnel_tm(*seen_from, sub_s);
  for (std::size_t j = 0; j < films.size(); ++j) {
    const StaticLimit* outer = (j + 1 == films.size()) ? &gap_s : &film_s[j + 1];
    const double em1 = film_decay_expm1(k, films[j].thickness);
    r = fold_film(static_fresnel_tm(*outer, film_s[j]), r, em1);
  }
  return r;
}

double composite_reflection(Polarization pol, const Material& outer, const Layer& film,
                            const Material& inner, double xi, double k) {
  if (!(k > 0.0)) throw std::domain_error("composite_reflection: k must be > 0");
  if (xi < 0.0) throw std::domain_error("composite_reflection: xi must be >= 0");
  if (film.material == nullptr)
    throw std::invalid_argument("composite_reflection: film.material is null");
  if (!(film.thickness > 0.0))
    throw std::invalid_argument("composite_reflection: film.thickness must be > 0");

  if (xi == 0.0) {
    if (pol == Polarization::TE) return 0.0;
    std::vector<Layer> films{film};
    return static_side_reflection_tm(outer, films, inner, k);
  }

  const double eps_i = eval_epsilon(outer, xi);
  const double eps_j = eval_epsilon(*film.material, xi);
  const double eps_k = eval_epsilon(inner, xi);
  const double g_i = gamma_factor(eps_i, xi, k);
  const double g_j = gamma_factor(eps_j, xi, k);
  const double g_k = gamma_factor(eps_k, xi, k);
  const double r_ij = fresnel(pol, eps_i, g_i, eps_j, g_j);
  const double r_jk = fresnel(pol, eps_j, g_j, eps_k, g_k);
  const double em1 = film_decay_expm1(g_j * k, film.thickness);
  return fold_film(r_ij, r_jk, em1);
}

double side_reflection(Polarization pol, const Material& gap,
                       const std::vector<Layer>& films, const Material& halfspace,
                       double xi, double k) {
  if (!(k > 0.0)) throw std::domain_error("side_reflection: k must be > 0");
  if (xi < 0.0) throw std::domain_error("side_reflection: xi must be >= 0");

  if (xi == 0.0) {
    if (pol == Polarization::TE) return 0.0;
    return static_side_reflection_tm(gap, films, halfspace, k);
  }

  // Permittivities and gamma factors for the chain gap | films... | substrate.
  const double eps_gap = eval_epsilon(gap, xi);
  const double g_gap = gamma_factor(eps_gap, xi, k);
  std::vector<double> eps_f(films.size()), g_f(films.size());
  for (std::size_t j = 0; j < films.size(); ++j) {
    eps_f[j] = eval_epsilon(*films[j].material, xi);
    g_f[j] = gamma_factor(eps_f[j], xi, k);
  }
  const double eps_sub = eval_epsilon(halfspace, xi);
  const double g_sub = gamma_factor(eps_sub, xi, k);

  // Films are listed in deposition order (first on the substrate, last facing
  // the gap); fold from the substrate outward.
  double eo = films.empty() ? eps_gap : eps_f.front();
  double go = films.empty() ? g_gap : g_f.front();
  double r = fresnel(pol, eo, go, eps_sub, g_sub);
  for (std::size_t j = 0; j < films.size(); ++j) {
    const bool gap_next = (j + 1 == films.size());
    const double eps_out = gap_next ? eps_gap : eps_f[j + 1];
    const double g_out = gap_next ? g_gap : g_f[j + 1];
    const double em1 = film_decay_expm1(g_f[j] * k, films[j].thickness);
    r = fold_film(fresnel(pol, eps_out, g_out, eps_f[j], g_f[j]), r, em1);
  }
  return r;
}

double mode_condition(Polarization pol, const LayerStack& stack, double xi, double k) {
  stack.validate();
  if (!(k > 0.0)) throw std::domain_error("mode_condition: k must be > 0");
  if (xi < 0.0) throw std::domain_error("mode_condition: xi must be >= 0");

  if (xi == 0.0 && pol == Polarization::TE) return 1.0;

  const double r_left = side_reflection(pol, *stack.gap_material, stack.left_films,
                                        *stack.left_halfspace, xi, k);
  const double r_right = side_reflection(pol, *stack.gap_material, stack.right_films,
                                         *stack.right_halfspace, xi, k);
  double g3 = 1.0;
  if (xi > 0.0) g3 = gamma_factor(eval_epsilon(*stack.gap_material, xi), xi, k);
  const double arg = 2.0 * g3 * k * stack.separation;
  const double decay = arg > 700.0 ? 0.0 : std::exp(-arg);
  return 1.0 - decay * r_left * r_right;
}

}  // namespace lifshitz
