#pragma once

/// Planar layer geometry and single-frequency reflection building blocks.
///
/// The geometry is two half-spaces facing each other across a gap of material
/// 3 and width d, each optionally coated with thin films:
///
///   left_halfspace | left_films... | gap (d) | ...right_films | right_halfspace
///
/// Film lists are in deposition order: the first film of a list sits on its
/// half-space and the last film faces the gap.  All reflection coefficients
/// are evaluated at imaginary frequency xi and transverse wavenumber k, where
/// they are real.

#include <vector>

#include "lifshitz/material_library.hpp"

namespace lifshitz {

enum class Polarization { TM, TE };

/// A film of finite thickness.  The material pointer refers into a
/// MaterialLibrary (or any Material that outlives the stack).
struct Layer {
  const Material* material = nullptr;
  double thickness = 0.0;  ///< [m], > 0
};

/// The full two-surface geometry.
struct LayerStack {
  const Material* left_halfspace = nullptr;
  std::vector<Layer> left_films;  ///< deposition order: first on the half-space, last facing the gap
  const Material* gap_material = nullptr;
  double separation = 0.0;  ///< gap width d [m], > 0
  std::vector<Layer> right_films;  ///< deposition order, same convention as left_films
  const Material* right_halfspace = nullptr;

  /// Throws std::invalid_argument naming the offending member when a material
  /// pointer is null or a length is not positive.
  void validate() const;
};

/// Relativistic wavenumber factor gamma = sqrt(1 + eps * xi^2 / (c k)^2).
///
/// The normal-component wavenumber in a medium is kappa = gamma * k.  Requires
/// k > 0 (throws std::domain_error otherwise); gamma(xi = 0) = 1 for any
/// finite eps.  The positive real branch is taken (the argument of the square
/// root is >= 1 on the imaginary axis).
double gamma_factor(double epsilon, double xi, double k);

/// Fresnel reflection coefficient for the i|j interface seen from medium i.
///
///   TM: (eps_j gamma_i - eps_i gamma_j) / (eps_j gamma_i + eps_i gamma_j)
///   TE: (gamma_i - gamma_j) / (gamma_i + gamma_j)
///
/// eps_i == eps_j returns exactly 0 for both polarizations: equal
/// permittivities are no interface, and short-circuiting keeps rounding
/// noise in independently reconstructed gamma factors from leaking into a
/// spurious reflection.
double fresnel(Polarization pol, double eps_i, double gamma_i, double eps_j,
               double gamma_j);

/// expm1(-2 kappa thickness): the film propagation factor minus one, which is
/// the numerically robust quantity to carry through fold_film.  Arguments
/// beyond 700 short-circuit to exactly -1 (the factor itself underflows).
double film_decay_expm1(double kappa, double thickness);

/// Folds one film into a composite reflection coefficient:
/// given r_near (outer interface), r_far (everything behind the film) and
/// decay_expm1 = film_decay_expm1(kappa_film, thickness), returns the
/// reflection seen from the outer medium.  Exact in both the vanishing-film
/// and thick-film limits.
double fold_film(double r_near, double r_far, double decay_expm1);

/// Reflection coefficient of a single film on a substrate, seen from the
/// outer medium: outer | film | inner, with the film's finite thickness
/// folded in.  Evaluated at imaginary frequency xi >= 0 and wavenumber k > 0.
double composite_reflection(Polarization pol, const Material& outer,
                            const Layer& film, const Material& inner, double xi,
                            double k);

/// Reflection coefficient of one entire side of a stack as seen from the gap:
/// gap | films | half-space, with films in deposition order (gap-facing film
/// last) and the fold running from the substrate outward.
double side_reflection(Polarization pol, const Material& gap,
                       const std::vector<Layer>& films, const Material& halfspace,
                       double xi, double k);

/// Zero-frequency TM reflection of one side seen from the gap.  Static limits
/// replace permittivities (metals act as ideal mirrors) and all gamma factors
/// are 1, so film propagation decays as exp(-2 k b).
double static_side_reflection_tm(const Material& gap, const std::vector<Layer>& films,
                                 const Material& halfspace, double k);

/// Mode-condition factor f = 1 - exp(-2 gamma_3 k d) r_left r_right whose
/// logarithm is the free-energy integrand.  Lies in (0, 2); equals 1 when
/// either side reflects nothing or the surfaces are infinitely separated.
///
/// At xi == 0 the TM factor uses the static (zero-frequency) reflection
/// coefficients, with metallic media acting as ideal mirrors, and the TE
/// factor is exactly 1 (the zero-frequency transverse-electric mode carries
/// no static force in this prescription).
double mode_condition(Polarization pol, const LayerStack& stack, double xi,
                      double k);

}  // namespace lifshitz
