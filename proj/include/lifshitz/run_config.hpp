#pragma once

/// JSON run configurations for the command-line tool.
///
/// A configuration names materials from a library file, assembles the stack,
/// and sets the separation grid plus solver controls.  Lengths may be plain
/// numbers (meters) or strings with a unit suffix: "2 A", "5 nm", "1 um",
/// "1e-6 m".  Example:
///
///   {
///     "temperature": 300.0,
///     "retarded": true,
///     "materials": "materials/default.matlib",
///     "stack": {
///       "left": "SiO2",
///       "left_films": [ { "material": "Au", "thickness": "20 A" } ],
///       "gap": "toluene",
///       "right_films": [],
///       "right": "SiO2"
///     },
///     "grid": { "min": "3 A", "max": "10 nm", "count": 40, "spacing": "log" },
///     "thicknesses": [ "5 A", "10 A", "20 A", "50 A", "1 m" ],
///     "bracket": [ "2 A", "200 A" ],
///     "tolerances": { "rel_tol": 1e-8, "matsubara_rel_cutoff": 1e-10,
///                     "matsubara_max_n": 10000000, "k_quadrature_order": 64 },
///     "output": "energy.csv",
///     "threads": 1
///   }
///
/// "grid" drives the energy command; "thicknesses" and "bracket" drive the
/// levitation command.  Film lists are in deposition order: the first film
/// sits on its half-space, the last film faces the gap.  Validation failures
/// raise std::invalid_argument naming the offending field.

#include <filesystem>
#include <string>
#include <vector>

#include "lifshitz/analysis.hpp"
#include "lifshitz/material_library.hpp"
#include "lifshitz/stack.hpp"

namespace lifshitz {

/// Parses a length that is either a number (meters) or a string with a unit
/// suffix among "A"/"angstrom" (1e-10 m), "nm", "um", "mm", "m".  The field
/// name is used in error messages.
double parse_length_m(const std::string& text, const std::string& field);

/// A separation grid, linear or logarithmic, endpoints inclusive.
struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int count = 0;
  bool log_spacing = true;

  /// Expands to a strictly increasing list; throws std::invalid_argument
  /// (naming "grid.*") when the specification is inconsistent.
  std::vector<double> points() const;
};

struct FilmSpec {
  std::string material;
  double thickness = 0.0;  ///< [m]
};

struct StackSpec {
  std::string left;
  std::vector<FilmSpec> left_films;
  std::string gap;
  std::vector<FilmSpec> right_films;
  std::string right;
};

struct RunConfig {
  StackSpec stack;
  GridSpec grid;
  bool has_grid = false;
  std::vector<double> thicknesses;  ///< levitation scan entries [m]
  double bracket_lo = 2e-10;        ///< default bracket: 2 to 200 Angstrom
  double bracket_hi = 2e-8;
  double temperature = 300.0;
  bool retarded = true;
  double rel_tol = 1e-8;
  double matsubara_rel_cutoff = 1e-10;
  long matsubara_max_n = 10000000;
  int k_quadrature_order = 64;
  std::string materials_path;  ///< empty = resolved by the caller
  std::string output;          ///< empty = command default
  int threads = 1;

  SolverConfig solver() const;
};

/// Loads and validates a run configuration.  I/O failures raise
/// std::runtime_error; malformed content raises std::invalid_argument with
/// the field named.
RunConfig load_run_config(const std::filesystem::path& path);

/// Resolves the material names of `spec` against `library` and assembles a
/// LayerStack with the given separation.  Unknown names raise
/// std::out_of_range; the returned stack points into `library`, which must
/// outlive it.
LayerStack build_stack(const StackSpec& spec, const MaterialLibrary& library,
                       double separation);

}  // namespace lifshitz
