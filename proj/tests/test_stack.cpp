#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "lifshitz/constants.hpp"
#include "lifshitz/stack.hpp"
#include "test_materials.hpp"

using namespace lifshitz;

TEST_CASE("gamma factor: unit value at zero frequency, textbook points") {
  CHECK(gamma_factor(1.0, 0.0, 1.0e7) == 1.0);
  CHECK(gamma_factor(5.7, 0.0, 3.0e4) == 1.0);

  // xi / (c k) = 1 with eps = 1 -> sqrt(2).
  const double k = 1.0e7;
  CHECK(gamma_factor(1.0, c_light * k, k) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // xi / (c k) = 2 with eps = 3 -> sqrt(13).
  CHECK(gamma_factor(3.0, 2.0 * c_light * k, k) ==
        doctest::Approx(std::sqrt(13.0)).epsilon(1e-14));

  CHECK(gamma_factor(2.0, 1.0e15, 1.0e6) >= 1.0);
  CHECK_THROWS_AS(gamma_factor(1.0, 1.0e15, 0.0), std::domain_error);
}

TEST_CASE("fresnel: identity, static TM, ideal-metal limits") {
  for (auto pol : {Polarization::TM, Polarization::TE}) {
    CHECK(fresnel(pol, 3.7, 1.9, 3.7, 1.9) == 0.0);
    // Equal permittivities are no interface at all, even when the two
    // wavenumber factors carry (inconsistent) rounding noise.
    CHECK(fresnel(pol, 3.7, 1.9, 3.7, 1.9000000000000004) == 0.0);
  }

  // Static (gamma = 1) TM interface between eps 2 and 6.
  CHECK(fresnel(Polarization::TM, 2.0, 1.0, 6.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-14));

  // eps_j -> infinity: TM reflection approaches +1.
  CHECK(fresnel(Polarization::TM, 2.0, 1.3, 1.0e30, 1.4) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // gamma_j -> infinity: TE reflection approaches -1.
  CHECK(fresnel(Polarization::TE, 2.0, 1.3, 8.0, 1.0e30) ==
        doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("fresnel: reciprocity and range over random interfaces") {
  std::mt19937 rng(20260815);
  std::uniform_real_distribution<double> eps_dist(1.0, 12.0);
  std::uniform_real_distribution<double> gam_dist(1.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double ei = eps_dist(rng), ej = eps_dist(rng);
    const double gi = gam_dist(rng), gj = gam_dist(rng);
    for (auto pol : {Polarization::TM, Polarization::TE}) {
      const double r = fresnel(pol, ei, gi, ej, gj);
      CHECK(fresnel(pol, ej, gj, ei, gi) == -r);  // exact antisymmetry
      CHECK(r > -1.0);
      CHECK(r <= 1.0);
    }
  }
}

TEST_CASE("non-retarded reduction: gamma = 1 collapses TM, kills TE") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> eps_dist(1.0, 20.0);
  for (int i = 0; i < 100; ++i) {
    const double ei = eps_dist(rng), ej = eps_dist(rng);
    const double expected = (ej - ei) / (ej + ei);
    CHECK(fresnel(Polarization::TM, ei, 1.0, ej, 1.0) ==
          doctest::Approx(expected).epsilon(1e-15));
    CHECK(fresnel(Polarization::TE, ei, 1.0, ej, 1.0) == 0.0);
  }
}

TEST_CASE("film fold: thick film hides the substrate, thin film vanishes") {
  const auto outer = testmat::toluene();
  const auto filmmat = testmat::silica();
  const auto inner = testmat::bromobenzene_m();
  const double xi = 1.0e14;
  const double k = 1.0e6;

  const double eps_o = eval_epsilon(outer, xi);
  const double eps_f = eval_epsilon(filmmat, xi);
  const double eps_i = eval_epsilon(inner, xi);
  const double g_o = gamma_factor(eps_o, xi, k);
  const double g_f = gamma_factor(eps_f, xi, k);
  const double g_i = gamma_factor(eps_i, xi, k);

  for (auto pol : {Polarization::TM, Polarization::TE}) {
    CAPTURE(pol == Polarization::TM);
    // 1 m of film: only the near interface is visible.
    const double r_thick =
        composite_reflection(pol, outer, {&filmmat, 1.0}, inner, xi, k);
    CHECK(r_thick ==
          doctest::Approx(fresnel(pol, eps_o, g_o, eps_f, g_f)).epsilon(1e-12));

    // 1e-15 m of film: the film is transparent and the far interface rules.
    const double r_thin =
        composite_reflection(pol, outer, {&filmmat, 1.0e-15}, inner, xi, k);
    CHECK(r_thin ==
          doctest::Approx(fresnel(pol, eps_o, g_o, eps_i, g_i)).epsilon(1e-9));
  }
}

TEST_CASE("film fold: index-matched outer medium leaves a damped far interface") {
  // outer == film material: the near reflection is 0 and the composite
  // reduces to exp(-2 kappa_f b) * r_far.
  const auto medium = testmat::toluene();
  const auto inner = testmat::silica();
  const double xi = 3.0e15;
  const double k = 2.0e7;
  const double b = 5.0e-9;

  const double eps_f = eval_epsilon(medium, xi);
  const double eps_i = eval_epsilon(inner, xi);
  const double g_f = gamma_factor(eps_f, xi, k);
  const double g_i = gamma_factor(eps_i, xi, k);

  for (auto pol : {Polarization::TM, Polarization::TE}) {
    const double r = composite_reflection(pol, medium, {&medium, b}, inner, xi, k);
    const double expected =
        std::exp(-2.0 * g_f * k * b) * fresnel(pol, eps_f, g_f, eps_i, g_i);
    CHECK(r == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("film fold: magnitude stays below 1 for dielectric stacks") {
  const auto mats = std::vector<lifshitz::Material>{
      testmat::silica(), testmat::toluene(), testmat::bromobenzene_m(),
      testmat::bromobenzene_z(), testmat::osc_a(), testmat::osc_b()};
  std::mt19937 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_real_distribution<double> log_xi(std::log(1.0e12), std::log(1.0e17));
  std::uniform_real_distribution<double> log_k(std::log(1.0e5), std::log(1.0e10));
  std::uniform_real_distribution<double> log_b(std::log(1.0e-10), std::log(1.0e-6));
  for (int i = 0; i < 300; ++i) {
    const auto& outer = mats[pick(rng)];
    const auto& filmmat = mats[pick(rng)];
    const auto& inner = mats[pick(rng)];
    const double xi = std::exp(log_xi(rng));
    const double k = std::exp(log_k(rng));
    const Layer film{&filmmat, std::exp(log_b(rng))};
    for (auto pol : {Polarization::TM, Polarization::TE}) {
      const double r = composite_reflection(pol, outer, film, inner, xi, k);
      CHECK(std::abs(r) < 1.0);
      CHECK(std::isfinite(r));
    }
  }
}

TEST_CASE("side reflection equals manual recursive fold for two films") {
  const auto gap = testmat::toluene();
  const auto f1m = testmat::osc_a();   // film deposited on the substrate
  const auto f2m = testmat::silica();  // film facing the gap
  const auto sub = testmat::bromobenzene_z();
  const double b1 = 3.0e-9, b2 = 1.2e-9;
  const double xi = 8.0e14;
  const double k = 5.0e7;

  const std::vector<Layer> films = {{&f1m, b1}, {&f2m, b2}};

  const double eps_gap = eval_epsilon(gap, xi);
  const double eps_f1 = eval_epsilon(f1m, xi);
  const double eps_f2 = eval_epsilon(f2m, xi);
  const double eps_sub = eval_epsilon(sub, xi);
  const double g_gap = gamma_factor(eps_gap, xi, k);
  const double g_f1 = gamma_factor(eps_f1, xi, k);
  const double g_f2 = gamma_factor(eps_f2, xi, k);
  const double g_sub = gamma_factor(eps_sub, xi, k);

  for (auto pol : {Polarization::TM, Polarization::TE}) {
    CAPTURE(pol == Polarization::TM);
    // Chain reads sub | f1 | f2 | gap.  Fold from the substrate outward:
    // the f1|sub interface first, then f1's thickness behind the f2|f1
    // interface, then f2's thickness behind the gap|f2 interface.
    const double r_f1_sub = fresnel(pol, eps_f1, g_f1, eps_sub, g_sub);
    const double r_f2_f1 = fresnel(pol, eps_f2, g_f2, eps_f1, g_f1);
    const double inner1 = fold_film(r_f2_f1, r_f1_sub, film_decay_expm1(g_f1 * k, b1));
    const double r_gap_f2 = fresnel(pol, eps_gap, g_gap, eps_f2, g_f2);
    const double manual = fold_film(r_gap_f2, inner1, film_decay_expm1(g_f2 * k, b2));

    const double r = side_reflection(pol, gap, films, sub, xi, k);
    CHECK(r == doctest::Approx(manual).epsilon(1e-15));

    // A single film folded by side_reflection agrees with the direct
    // three-medium composite.
    const std::vector<Layer> one = {{&f2m, b2}};
    CHECK(side_reflection(pol, gap, one, sub, xi, k) ==
          doctest::Approx(composite_reflection(pol, gap, one[0], sub, xi, k))
              .epsilon(1e-15));
  }
}

TEST_CASE("mode condition: matched media, huge separations, symmetric form") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  const double xi = 1.0e15;
  const double k = 1.0e7;

  // One side identical to the gap -> that side reflects nothing -> f = 1.
  auto matched = testmat::bare(toluene, toluene, silica, 5.0e-9);
  for (auto pol : {Polarization::TM, Polarization::TE}) {
    CHECK(mode_condition(pol, matched, xi, k) == 1.0);
  }

  // Separation of 1 m at optical k: the coupling term is gone entirely.
  auto farapart = testmat::bare(silica, toluene, silica, 1.0);
  for (auto pol : {Polarization::TM, Polarization::TE}) {
    CHECK(mode_condition(pol, farapart, xi, k) == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Symmetric bare stack: f = 1 - exp(-2 gamma_3 k d) r^2 <= 1.
  const double d = 5.0e-9;
  auto sym = testmat::bare(silica, toluene, silica, d);
  const double eps3 = eval_epsilon(toluene, xi);
  const double eps1 = eval_epsilon(silica, xi);
  const double g3 = gamma_factor(eps3, xi, k);
  const double g1 = gamma_factor(eps1, xi, k);
  for (auto pol : {Polarization::TM, Polarization::TE}) {
    const double r = fresnel(pol, eps3, g3, eps1, g1);
    const double expected = 1.0 - std::exp(-2.0 * g3 * k * d) * r * r;
    const double f = mode_condition(pol, sym, xi, k);
    CHECK(f <= 1.0);
    CHECK(f == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("mode condition with films on both sides nests composite reflections") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  const auto osc_a = testmat::osc_a();
  const auto osc_b = testmat::osc_b();
  const double d = 3.0e-9;

  LayerStack stack;
  stack.left_halfspace = &silica;
  stack.left_films = {{&osc_a, 2.0e-9}};
  stack.gap_material = &toluene;
  stack.separation = d;
  stack.right_films = {{&osc_b, 1.0e-9}};
  stack.right_halfspace = &silica;
  stack.validate();

  const double xi = 2.0e15;
  const double k = 4.0e7;
  const double eps3 = eval_epsilon(toluene, xi);
  const double g3 = gamma_factor(eps3, xi, k);
  for (auto pol : {Polarization::TM, Polarization::TE}) {
    const double r_left = side_reflection(pol, toluene, stack.left_films, silica, xi, k);
    const double r_right =
        side_reflection(pol, toluene, stack.right_films, silica, xi, k);
    const double expected = 1.0 - std::exp(-2.0 * g3 * k * d) * r_left * r_right;
    CHECK(mode_condition(pol, stack, xi, k) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("mode condition stays inside (0, 2) over random geometries") {
  const auto mats = std::vector<lifshitz::Material>{
      testmat::silica(), testmat::toluene(), testmat::bromobenzene_m(),
      testmat::osc_a(), testmat::osc_b(), testmat::osc_gap()};
  std::mt19937 rng(424242);
  std::uniform_int_distribution<std::size_t> pick(0, mats.size() - 1);
  std::uniform_real_distribution<double> log_xi(std::log(1.0e12), std::log(1.0e17));
  std::uniform_real_distribution<double> log_k(std::log(1.0e5), std::log(1.0e10));
  std::uniform_real_distribution<double> log_d(std::log(2.0e-10), std::log(1.0e-6));
  std::uniform_real_distribution<double> log_b(std::log(2.0e-10), std::log(1.0e-7));
  std::bernoulli_distribution coin;
  for (int i = 0; i < 200; ++i) {
    LayerStack s;
    s.left_halfspace = &mats[pick(rng)];
    s.gap_material = &mats[pick(rng)];
    s.right_halfspace = &mats[pick(rng)];
    s.separation = std::exp(log_d(rng));
    std::vector<Layer> lf, rf;
    if (coin(rng)) lf.push_back({&mats[pick(rng)], std::exp(log_b(rng))});
    if (coin(rng)) rf.push_back({&mats[pick(rng)], std::exp(log_b(rng))});
    s.left_films = lf;
    s.right_films = rf;
    const double xi = std::exp(log_xi(rng));
    const double k = std::exp(log_k(rng));
    for (auto pol : {Polarization::TM, Polarization::TE}) {
      const double f = mode_condition(pol, s, xi, k);
      CHECK(f > 0.0);
      CHECK(f < 2.0);
    }
  }
}

TEST_CASE("zero-frequency mode condition: static mirrors and silent TE") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  const auto metal = testmat::ideal_metal();
  const double k = 1.0e8;
  const double d = 2.0e-9;

  auto sym = testmat::bare(silica, toluene, silica, d);
  // TE carries no zero-frequency contribution.
  CHECK(mode_condition(Polarization::TE, sym, 0.0, k) == 1.0);

  // TM uses static permittivities with gamma = 1.
  const double e1 = static_limit(silica).value();
  const double e3 = static_limit(toluene).value();
  const double r0 = (e1 - e3) / (e1 + e3);
  CHECK(static_side_reflection_tm(toluene, {}, silica, k) ==
        doctest::Approx(r0).epsilon(1e-14));
  const double expected = 1.0 - std::exp(-2.0 * k * d) * r0 * r0;
  CHECK(mode_condition(Polarization::TM, sym, 0.0, k) ==
        doctest::Approx(expected).epsilon(1e-13));

  // A metallic half-space is a perfect static mirror...
  CHECK(static_side_reflection_tm(toluene, {}, metal, k) == 1.0);
  // ...and so is a metallic film of any thickness: the fold pins r to 1.
  const std::vector<Layer> film = {{&metal, 2.0e-9}};
  CHECK(static_side_reflection_tm(toluene, film, silica, k) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("stack validation names the offending member") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();

  auto good = testmat::bare(silica, toluene, silica, 1.0e-9);
  CHECK_NOTHROW(good.validate());

  auto s1 = good;
  s1.gap_material = nullptr;
  CHECK_THROWS_AS(s1.validate(), std::invalid_argument);

  auto s2 = good;
  s2.separation = 0.0;
  CHECK_THROWS_AS(s2.validate(), std::invalid_argument);

  auto s3 = good;
  s3.left_films = {{&silica, 0.0}};
  CHECK_THROWS_AS(s3.validate(), std::invalid_argument);

  auto s4 = good;
  s4.right_films = {{nullptr, 1.0e-9}};
  CHECK_THROWS_AS(s4.validate(), std::invalid_argument);
}
