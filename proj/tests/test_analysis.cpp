#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lifshitz/analysis.hpp"
#include "lifshitz/constants.hpp"
#include "lifshitz/material_library.hpp"
#include "test_materials.hpp"

using namespace lifshitz;

namespace {

const MaterialLibrary& shipped_library() {
  static const MaterialLibrary lib = load_material_library(TEST_MATERIALS_FILE);
  return lib;
}

/// Loose tolerances: the analysis layer is exercised here, not the last digit
/// of the quadrature.
SolverConfig fast_config() {
  SolverConfig cfg;
  cfg.temperature = 300.0;
  cfg.rel_tol = 1e-6;
  cfg.matsubara_rel_cutoff = 1e-8;
  return cfg;
}

/// Thick-gold-on-silica surface facing bare silica across toluene: the
/// geometry whose energy turns from attraction to repulsion.
LayerStack gold_stack(double film_thickness, double separation) {
  const auto& lib = shipped_library();
  LayerStack s;
  s.left_halfspace = &lib.get("SiO2");
  s.left_films = {{&lib.get("Au"), film_thickness}};
  s.gap_material = &lib.get("toluene");
  s.separation = separation;
  s.right_halfspace = &lib.get("SiO2");
  return s;
}

}  // namespace

TEST_CASE("describe reads left to right through the layers") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  const auto coat = testmat::osc_b();

  auto bare = testmat::bare(silica, toluene, silica, 5.0e-9);
  CHECK(describe(bare) == "SiO2 | toluene | SiO2");

  auto left_coated = bare;
  left_coated.left_films = {{&coat, 2.0e-9}};
  CHECK(describe(left_coated) == "SiO2 | osc-b(2e-09 m) | toluene | SiO2");

  // Right films are stored substrate-first, so the printed order flips to
  // keep the line physical.
  auto both_coated = left_coated;
  both_coated.right_films = {{&coat, 2.0e-9}};
  CHECK(describe(both_coated) ==
        "SiO2 | osc-b(2e-09 m) | toluene | osc-b(2e-09 m) | SiO2");
}

TEST_CASE("separation sweep validates its grid") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  auto stack = testmat::bare(silica, toluene, silica, 1.0e-9);
  const auto cfg = fast_config();

  CHECK_THROWS_AS(separation_sweep(stack, {}, cfg), std::invalid_argument);
  CHECK_THROWS_AS(separation_sweep(stack, {1.0e-9, 1.0e-9}, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(separation_sweep(stack, {2.0e-9, 1.0e-9}, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(separation_sweep(stack, {-1.0e-9, 1.0e-9}, cfg),
                  std::invalid_argument);
  try {
    separation_sweep(stack, {1.0e-9, 5.0e-10}, cfg);
    FAIL_CHECK("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("grid[1]") != std::string::npos);
  }
}

TEST_CASE("sweep of a gap-matched stack yields exact zero rows") {
  const auto toluene = testmat::toluene();
  auto stack = testmat::bare(toluene, toluene, toluene, 1.0e-9);
  const auto cfg = fast_config();
  const auto curve = separation_sweep(stack, {1.0e-9}, cfg);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].separation == 1.0e-9);
  CHECK(curve.points[0].energy == 0.0);
  CHECK(curve.points[0].pressure == 0.0);
  CHECK(curve.points[0].converged);
  CHECK(curve.stack_description == "toluene | toluene | toluene");
  CHECK(curve.config.rel_tol == cfg.rel_tol);
}

TEST_CASE("ideal-metal sweep follows the inverse-cube law") {
  const auto metal = testmat::ideal_metal();
  const auto vac = testmat::vacuum();
  auto stack = testmat::bare(metal, vac, metal, 1.0e-6);
  SolverConfig cfg;
  cfg.temperature = 1.0;

  const auto curve =
      separation_sweep(stack, {5.0e-7, 1.0e-6, 2.0e-6}, cfg);
  REQUIRE(curve.points.size() == 3);
  const double mid = curve.points[1].energy;
  CHECK(curve.points[0].energy / mid == doctest::Approx(8.0).epsilon(1e-2));
  CHECK(curve.points[2].energy / mid == doctest::Approx(0.125).epsilon(1e-2));
}

TEST_CASE("sweeps are deterministic and independent of the thread count") {
  const auto& lib = shipped_library();
  auto stack = testmat::bare(lib.get("SiO2"), lib.get("toluene"), lib.get("SiO2"),
                             1.0e-9);
  const auto cfg = fast_config();
  std::vector<double> grid;
  for (int i = 0; i < 6; ++i) grid.push_back(1.0e-9 * std::pow(2.0, i));

  const auto a = separation_sweep(stack, grid, cfg, 1);
  const auto b = separation_sweep(stack, grid, cfg, 4);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].energy == b.points[i].energy);      // bit-identical
    CHECK(a.points[i].pressure == b.points[i].pressure);  // bit-identical
    CHECK(a.points[i].energy < 0.0);
  }
}

TEST_CASE("per-point non-convergence is recorded, not fatal") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  auto stack = testmat::bare(silica, toluene, silica, 1.0e-9);
  auto cfg = fast_config();
  cfg.matsubara_max_n = 5;
  const auto curve = separation_sweep(stack, {1.0e-9, 2.0e-9}, cfg);
  REQUIRE(curve.points.size() == 2);
  for (const auto& p : curve.points) CHECK_FALSE(p.converged);
}

TEST_CASE("levitation status strings are stable") {
  CHECK(std::string(to_string(LevitationStatus::Found)) == "ok");
  CHECK(std::string(to_string(LevitationStatus::NoLevitationInRange)) ==
        "no levitation in range");
  CHECK(std::string(to_string(LevitationStatus::NotConverged)) == "not converged");
}

TEST_CASE("levitation search validates its bracket") {
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  auto stack = testmat::bare(silica, toluene, silica, 1.0e-9);
  const auto cfg = fast_config();
  CHECK_THROWS_AS(levitation_distance(stack, 0.0, 1.0e-9, cfg), std::invalid_argument);
  CHECK_THROWS_AS(levitation_distance(stack, 2.0e-9, 1.0e-9, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(levitation_distance(stack, 1.0e-9, 1.0e-9, cfg),
                  std::invalid_argument);
}

TEST_CASE("always-attractive and always-repulsive stacks report no crossing") {
  const auto cfg = fast_config();

  // Symmetric stack: attraction at every separation.
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  auto sym = testmat::bare(silica, toluene, silica, 1.0e-9);
  const auto r1 = levitation_distance(sym, 2.0e-10, 1.0e-8, cfg);
  CHECK(r1.status == LevitationStatus::NoLevitationInRange);
  CHECK(std::isnan(r1.levitation_distance));
  CHECK(std::isnan(r1.peak_separation));
  CHECK(std::isnan(r1.peak_energy));
  CHECK(r1.bracket_lo == 2.0e-10);
  CHECK(r1.bracket_hi == 1.0e-8);

  // Ordered permittivities: repulsion at every separation.
  const auto lo = testmat::single_term_rad("lo", 1.0, 1.2159e16);
  const auto mid = testmat::single_term_rad("mid", 2.0, 1.2159e16);
  const auto hi = testmat::single_term_rad("hi", 3.0, 1.2159e16);
  auto ordered = testmat::bare(lo, mid, hi, 1.0e-9);
  const auto r2 = levitation_distance(ordered, 2.0e-10, 1.0e-8, cfg);
  CHECK(r2.status == LevitationStatus::NoLevitationInRange);
  CHECK(std::isnan(r2.levitation_distance));
}

TEST_CASE("thick gold coating in toluene levitates at angstrom separations") {
  const auto cfg = fast_config();
  auto stack = gold_stack(1.0e-6, 1.0e-9);
  const auto res = levitation_distance(stack, 2.0e-10, 2.0e-8, cfg);

  REQUIRE(res.status == LevitationStatus::Found);
  // The crossing of the shipped parameter set sits near 14 A; the unit test
  // only pins the broad window (the acceptance run pins it harder).
  CHECK(res.levitation_distance > 4.0e-10);
  CHECK(res.levitation_distance < 2.5e-9);

  // Bracket invariants: the crossing lies inside, attraction below it,
  // repulsion above it, and the repulsive peak sits above the crossing.
  CHECK(res.levitation_distance > res.bracket_lo);
  CHECK(res.levitation_distance < res.bracket_hi);
  CHECK(res.peak_separation > res.levitation_distance);
  CHECK(res.peak_energy > 0.0);

  auto at = [&](double d) {
    auto s = gold_stack(1.0e-6, d);
    return free_energy(s, cfg);
  };
  CHECK(at(res.levitation_distance * 0.99) < 0.0);
  CHECK(at(res.levitation_distance * 1.01) > 0.0);
  // The reported peak is at least as repulsive as its neighbourhood.
  const double peak = res.peak_energy;
  CHECK(peak >= at(res.peak_separation * 0.9) * (1.0 - 1e-9));
  CHECK(peak >= at(res.peak_separation * 1.1) * (1.0 - 1e-9));
}

TEST_CASE("unconverged energies inside the bracket flag the levitation result") {
  auto cfg = fast_config();
  cfg.matsubara_max_n = 5;
  auto stack = gold_stack(1.0e-6, 1.0e-9);
  const auto res = levitation_distance(stack, 2.0e-10, 2.0e-8, cfg);
  CHECK(res.status == LevitationStatus::NotConverged);
}

TEST_CASE("thickness scan validates its inputs") {
  const auto cfg = fast_config();
  const auto silica = testmat::silica();
  const auto toluene = testmat::toluene();
  auto bare = testmat::bare(silica, toluene, silica, 1.0e-9);
  CHECK_THROWS_AS(thickness_scan(bare, {1.0e-9}, 2.0e-10, 2.0e-8, cfg),
                  std::invalid_argument);

  auto coated = gold_stack(1.0e-9, 1.0e-9);
  CHECK_THROWS_AS(thickness_scan(coated, {}, 2.0e-10, 2.0e-8, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS(thickness_scan(coated, {0.0}, 2.0e-10, 2.0e-8, cfg),
                  std::invalid_argument);
}

TEST_CASE("thinner gold films levitate lower and push harder") {
  const auto cfg = fast_config();
  auto stack = gold_stack(1.0e-9, 1.0e-9);
  const std::vector<double> thicknesses = {5.0e-10, 2.0e-9, 1.0};

  const auto scan = thickness_scan(stack, thicknesses, 2.0e-10, 2.0e-8, cfg, 2);
  REQUIRE(scan.size() == 3);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    CAPTURE(i);
    CHECK(scan[i].first == thicknesses[i]);
    REQUIRE(scan[i].second.status == LevitationStatus::Found);
  }

  // Thinner film -> smaller levitation distance, larger repulsive peak
  // (tiny slack covers the 1e-3 bisection width).
  const auto& r5 = scan[0].second;
  const auto& r20 = scan[1].second;
  const auto& rthick = scan[2].second;
  CHECK(r5.levitation_distance <= r20.levitation_distance * (1.0 + 5e-3));
  CHECK(r20.levitation_distance <= rthick.levitation_distance * (1.0 + 5e-3));
  CHECK(r5.peak_energy >= r20.peak_energy * (1.0 - 5e-3));
  CHECK(r20.peak_energy >= rthick.peak_energy * (1.0 - 5e-3));

  // A 1 m film is indistinguishable from the coating-as-half-space result.
  const auto direct = levitation_distance(gold_stack(1.0e-6, 1.0e-9), 2.0e-10,
                                          2.0e-8, cfg);
  CHECK(rthick.levitation_distance ==
        doctest::Approx(direct.levitation_distance).epsilon(3e-3));

  // Determinism across thread counts, bit for bit.
  const auto rerun = thickness_scan(stack, thicknesses, 2.0e-10, 2.0e-8, cfg, 1);
  REQUIRE(rerun.size() == scan.size());
  for (std::size_t i = 0; i < scan.size(); ++i) {
    CHECK(rerun[i].second.levitation_distance == scan[i].second.levitation_distance);
    CHECK(rerun[i].second.peak_energy == scan[i].second.peak_energy);
  }
}
