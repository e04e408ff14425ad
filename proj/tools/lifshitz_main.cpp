/// Command-line interface for the layered-surface interaction solver.
///
/// Subcommands:
///   energy <config.json>      sweep free energy and pressure over a grid
///   levitation <config.json>  scan film thicknesses for the sign crossing
///   dielectric <material>     tabulate a material's imaginary-axis response
///
/// Exit codes: 0 success (including "no levitation found"), 2 configuration
/// error, 3 I/O failure, 4 non-convergence when --strict is given.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lifshitz/analysis.hpp"
#include "lifshitz/constants.hpp"
#include "lifshitz/csv.hpp"
#include "lifshitz/run_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNotConverged = 4;

struct GlobalOptions {
  std::string materials_override;
  std::string out_override;
  std::optional<int> threads_override;
  bool no_retardation = false;
  bool strict = false;
};

std::string resolve_materials_path(const GlobalOptions& g, const lifshitz::RunConfig* rc) {
  if (!g.materials_override.empty()) return g.materials_override;
  if (rc != nullptr && !rc->materials_path.empty()) return rc->materials_path;
  return "materials/default.matlib";
}

void apply_overrides(const GlobalOptions& g, lifshitz::RunConfig& rc) {
  if (g.no_retardation) rc.retarded = false;
  if (!g.out_override.empty()) rc.output = g.out_override;
  if (g.threads_override) rc.threads = *g.threads_override;
  if (rc.threads < 1) rc.threads = 1;
}

int cmd_energy(const std::string& config_path, const GlobalOptions& g) {
  lifshitz::RunConfig rc = lifshitz::load_run_config(config_path);
  apply_overrides(g, rc);
  if (!rc.has_grid)
    throw std::invalid_argument("run config: grid is required by the energy command");
  if (rc.output.empty()) rc.output = "energy.csv";

  const lifshitz::MaterialLibrary lib =
      lifshitz::load_material_library(resolve_materials_path(g, &rc));
  const std::vector<double> grid = rc.grid.points();
  const lifshitz::LayerStack stack = lifshitz::build_stack(rc.stack, lib, grid.front());

  const lifshitz::EnergyCurve curve =
      lifshitz::separation_sweep(stack, grid, rc.solver(), rc.threads);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(curve.points.size());
  std::size_t unconverged = 0;
  for (const auto& p : curve.points) {
    rows.push_back({lifshitz::format_double(p.separation),
                    lifshitz::format_double(p.energy),
                    lifshitz::format_double(p.pressure),
                    p.converged ? "true" : "false"});
    if (!p.converged) ++unconverged;
  }
  lifshitz::write_csv(rc.output,
                      {"separation_m", "free_energy_J_per_m2", "pressure_N_per_m2",
                       "converged"},
                      rows);

  std::cout << "stack: " << curve.stack_description << "\n"
            << "points: " << curve.points.size() << " ("
            << (curve.points.size() - unconverged) << " converged)\n";
  // Report where the interaction changes character along the grid.
  int sign_changes = 0;
  std::ostringstream where;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const double a = curve.points[i - 1].energy;
    const double b = curve.points[i].energy;
    if (a != 0.0 && b != 0.0 && (a < 0.0) != (b < 0.0)) {
      ++sign_changes;
      where << "  between " << lifshitz::format_double(curve.points[i - 1].separation)
            << " m and " << lifshitz::format_double(curve.points[i].separation)
            << " m (" << (a < 0.0 ? "attraction -> repulsion" : "repulsion -> attraction")
            << ")\n";
    }
  }
  std::cout << "energy sign changes: " << sign_changes << "\n" << where.str();
  std::cout << "wrote " << rc.output << "\n";

  if (unconverged > 0) {
    std::cerr << "warning: " << unconverged
              << " point(s) did not converge (marked in the CSV)\n";
    if (g.strict) return kExitNotConverged;
  }
  return kExitOk;
}

int cmd_levitation(const std::string& config_path, const GlobalOptions& g) {
  lifshitz::RunConfig rc = lifshitz::load_run_config(config_path);
  apply_overrides(g, rc);
  if (rc.output.empty()) rc.output = "levitation.csv";
  if (rc.stack.left_films.empty())
    throw std::invalid_argument(
        "run config: stack.left_films must contain the film to scan");
  if (rc.thicknesses.empty())
    throw std::invalid_argument(
        "run config: thicknesses is required by the levitation command");

  const lifshitz::MaterialLibrary lib =
      lifshitz::load_material_library(resolve_materials_path(g, &rc));
  const lifshitz::LayerStack stack =
      lifshitz::build_stack(rc.stack, lib, rc.bracket_lo);

  const auto scan = lifshitz::thickness_scan(stack, rc.thicknesses, rc.bracket_lo,
                                             rc.bracket_hi, rc.solver(), rc.threads);

  std::vector<std::vector<std::string>> rows;
  std::size_t found = 0, unconverged = 0;
  for (const auto& [thickness, res] : scan) {
    rows.push_back({lifshitz::format_double(thickness),
                    lifshitz::format_double(res.levitation_distance),
                    lifshitz::format_double(res.peak_separation),
                    lifshitz::format_double(res.peak_energy),
                    lifshitz::to_string(res.status)});
    if (res.status == lifshitz::LevitationStatus::Found) ++found;
    if (res.status == lifshitz::LevitationStatus::NotConverged) ++unconverged;
  }
  lifshitz::write_csv(rc.output,
                      {"film_thickness_m", "levitation_distance_m",
                       "peak_separation_m", "peak_energy_J_per_m2", "status"},
                      rows);

  std::cout << "stack: " << lifshitz::describe(stack) << "\n"
            << "bracket: [" << lifshitz::format_double(rc.bracket_lo) << ", "
            << lifshitz::format_double(rc.bracket_hi) << "] m\n"
            << "crossings found: " << found << " of " << scan.size() << "\n"
            << "wrote " << rc.output << "\n";

  if (unconverged > 0) {
    std::cerr << "warning: " << unconverged
              << " scan row(s) did not converge (marked in the CSV)\n";
    if (g.strict) return kExitNotConverged;
  }
  return kExitOk;
}

struct DielectricGrid {
  double min = 1e12;
  double max = 1e18;
  int count = 121;
  bool log_spacing = true;
};

DielectricGrid parse_dielectric_grid(const std::string& text) {
  DielectricGrid grid;
  if (text.empty()) return grid;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 4)
    throw std::invalid_argument("--grid must be min,max,count,log|linear");
  try {
    grid.min = std::stod(parts[0]);
    grid.max = std::stod(parts[1]);
    grid.count = std::stoi(parts[2]);
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid must be min,max,count,log|linear");
  }
  if (parts[3] == "log")
    grid.log_spacing = true;
  else if (parts[3] == "linear" || parts[3] == "lin")
    grid.log_spacing = false;
  else
    throw std::invalid_argument("--grid spacing must be \"log\" or \"linear\"");
  if (grid.count < 1) throw std::invalid_argument("--grid count must be >= 1");
  if (grid.log_spacing && !(grid.min > 0.0))
    throw std::invalid_argument("--grid min must be > 0 for log spacing");
  if (!(grid.min >= 0.0)) throw std::invalid_argument("--grid min must be >= 0");
  if (grid.count > 1 && !(grid.max > grid.min))
    throw std::invalid_argument("--grid max must exceed min");
  return grid;
}

int cmd_dielectric(const std::string& material_name, const std::string& grid_text,
                   const GlobalOptions& g) {
  const lifshitz::MaterialLibrary lib =
      lifshitz::load_material_library(resolve_materials_path(g, nullptr));
  const lifshitz::Material& mat = lib.get(material_name);
  const DielectricGrid grid = parse_dielectric_grid(grid_text);

  std::vector<double> xis(grid.count);
  if (grid.count == 1) {
    xis[0] = grid.min;
  } else if (grid.log_spacing) {
    const double lmin = std::log(grid.min), lmax = std::log(grid.max);
    for (int i = 0; i < grid.count; ++i)
      xis[i] = std::exp(lmin + (lmax - lmin) * i / (grid.count - 1));
  } else {
    for (int i = 0; i < grid.count; ++i)
      xis[i] = grid.min + (grid.max - grid.min) * i / (grid.count - 1);
  }

  const lifshitz::StaticLimit stat = lifshitz::static_limit(mat);
  std::vector<std::vector<std::string>> rows;
  rows.reserve(xis.size());
  for (double xi : xis) {
    double eps;
    if (xi == 0.0 && stat.is_metallic()) {
      eps = std::numeric_limits<double>::infinity();
    } else {
      eps = lifshitz::eval_epsilon(mat, xi);
    }
    rows.push_back({lifshitz::format_double(xi),
                    lifshitz::format_double(xi / lifshitz::ev_to_rad_per_s),
                    lifshitz::format_double(eps)});
  }
  std::string out = g.out_override.empty() ? material_name + "_dielectric.csv"
                                           : g.out_override;
  lifshitz::write_csv(out, {"xi_rad_per_s", "xi_eV", "epsilon"}, rows);

  std::cout << "material: " << mat.name << "\n";
  if (!mat.source.empty()) std::cout << "source: " << mat.source << "\n";
  if (stat.is_metallic())
    std::cout << "static limit: divergent (metallic)\n";
  else
    std::cout << "static limit: " << lifshitz::format_double(stat.value()) << "\n";
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interaction free energy and pressure between layered surfaces"};
  app.require_subcommand(1);

  GlobalOptions g;
  int threads_flag = 0;
  app.add_option("--materials", g.materials_override,
                 "Material library path (overrides the config)");
  app.add_option("--out", g.out_override, "Output CSV path (overrides the config)");
  auto* threads_opt =
      app.add_option("--threads", threads_flag, "Worker threads for sweeps/scans");
  app.add_flag("--no-retardation", g.no_retardation,
               "Evaluate in the non-retarded (instantaneous) limit");
  app.add_flag("--strict", g.strict, "Exit with status 4 if any point fails to converge");

  std::string energy_config, levitation_config, material_name, grid_text;
  CLI::App* energy = app.add_subcommand("energy", "Sweep energy/pressure over separations");
  energy->add_option("config", energy_config, "Run configuration JSON")->required();
  CLI::App* levitation =
      app.add_subcommand("levitation", "Scan film thicknesses for the sign crossing");
  levitation->add_option("config", levitation_config, "Run configuration JSON")->required();
  CLI::App* dielectric =
      app.add_subcommand("dielectric", "Tabulate a material's imaginary-axis permittivity");
  dielectric->add_option("material", material_name, "Material name")->required();
  dielectric->add_option("--grid", grid_text, "xi grid: min,max,count,log|linear [rad/s]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }
  if (threads_opt->count() > 0) g.threads_override = threads_flag;

  try {
    if (energy->parsed()) return cmd_energy(energy_config, g);
    if (levitation->parsed()) return cmd_levitation(levitation_config, g);
    if (dielectric->parsed()) return cmd_dielectric(material_name, grid_text, g);
    std::cerr << "error: no subcommand given\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
