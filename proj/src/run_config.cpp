#include "lifshitz/run_config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lifshitz {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw std::invalid_argument("run config: " + field + " " + what);
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

double parse_length_m(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  std::size_t pos = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &pos);
  } catch (const std::exception&) {
    fail(field, "is not a valid length: '" + text + "'");
  }
  const std::string unit = trim(s.substr(pos));
  double scale = 1.0;
  if (unit.empty() || unit == "m") {
    scale = 1.0;
  } else if (unit == "A" || unit == "angstrom" || unit == "Angstrom") {
    scale = 1e-10;
  } else if (unit == "nm") {
    scale = 1e-9;
  } else if (unit == "um") {
    scale = 1e-6;
  } else if (unit == "mm") {
    scale = 1e-3;
  } else {
    fail(field, "has unknown length unit '" + unit + "'");
  }
  return value * scale;
}

namespace {

double length_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_length_m(j.get<std::string>(), field);
  fail(field, "must be a number (meters) or a string with a unit suffix");
}

std::string string_field(const json& j, const std::string& field) {
  if (!j.contains(field) || !j.at(field).is_string()) fail(field, "must be a string");
  return j.at(field).get<std::string>();
}

}  // namespace

std::vector<double> GridSpec::points() const {
  if (count < 1) fail("grid.count", "must be >= 1");
  if (!(min > 0.0)) fail("grid.min", "must be > 0");
  if (count == 1) {
    if (max != min && max != 0.0) fail("grid.max", "must equal grid.min when count is 1");
    return {min};
  }
  if (!(max > min)) fail("grid.max", "must exceed grid.min");
  std::vector<double> out(count);
  if (log_spacing) {
    const double lmin = std::log(min), lmax = std::log(max);
    for (int i = 0; i < count; ++i)
      out[i] = std::exp(lmin + (lmax - lmin) * i / (count - 1));
    out.front() = min;
    out.back() = max;
  } else {
    for (int i = 0; i < count; ++i)
      out[i] = min + (max - min) * i / (count - 1);
    out.front() = min;
    out.back() = max;
  }
  return out;
}

SolverConfig RunConfig::solver() const {
  SolverConfig cfg;
  cfg.temperature = temperature;
  cfg.retarded = retarded;
  cfg.rel_tol = rel_tol;
  cfg.k_quadrature_order = k_quadrature_order;
  cfg.matsubara_rel_cutoff = matsubara_rel_cutoff;
  cfg.matsubara_max_n = matsubara_max_n;
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open run config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("run config '" + path.string() +
                                "': JSON parse error: " + e.what());
  }
  if (!doc.is_object()) fail("document", "must be a JSON object");

  RunConfig rc;

  if (!doc.contains("stack") || !doc.at("stack").is_object())
    fail("stack", "must be an object");
  const json& st = doc.at("stack");
  rc.stack.left = string_field(st, "left");
  rc.stack.gap = string_field(st, "gap");
  rc.stack.right = string_field(st, "right");
  auto parse_films = [&](const char* key, std::vector<FilmSpec>& out) {
    if (!st.contains(key)) return;
    if (!st.at(key).is_array()) fail(std::string("stack.") + key, "must be an array");
    std::size_t i = 0;
    for (const auto& f : st.at(key)) {
      const std::string field = std::string("stack.") + key + "[" + std::to_string(i) + "]";
      if (!f.is_object() || !f.contains("material") || !f.at("material").is_string())
        fail(field + ".material", "must be a string");
      if (!f.contains("thickness")) fail(field + ".thickness", "is missing");
      FilmSpec spec;
      spec.material = f.at("material").get<std::string>();
      spec.thickness = length_from_json(f.at("thickness"), field + ".thickness");
      if (!(spec.thickness > 0.0)) fail(field + ".thickness", "must be > 0");
      out.push_back(std::move(spec));
      ++i;
    }
  };
  parse_films("left_films", rc.stack.left_films);
  parse_films("right_films", rc.stack.right_films);

  if (doc.contains("grid")) {
    if (!doc.at("grid").is_object()) fail("grid", "must be an object");
    const json& g = doc.at("grid");
    if (!g.contains("min")) fail("grid.min", "is missing");
    if (!g.contains("max")) fail("grid.max", "is missing");
    rc.grid.min = length_from_json(g.at("min"), "grid.min");
    rc.grid.max = length_from_json(g.at("max"), "grid.max");
    if (!g.contains("count") || !g.at("count").is_number_integer())
      fail("grid.count", "must be an integer");
    rc.grid.count = g.at("count").get<int>();
    std::string spacing = "log";
    if (g.contains("spacing")) {
      if (!g.at("spacing").is_string()) fail("grid.spacing", "must be a string");
      spacing = g.at("spacing").get<std::string>();
    }
    if (spacing == "log")
      rc.grid.log_spacing = true;
    else if (spacing == "linear" || spacing == "lin")
      rc.grid.log_spacing = false;
    else
      fail("grid.spacing", "must be \"log\" or \"linear\"");
    rc.grid.points();  // validate eagerly so errors surface at load time
    rc.has_grid = true;
  }

  if (doc.contains("thicknesses")) {
    if (!doc.at("thicknesses").is_array()) fail("thicknesses", "must be an array");
    std::size_t i = 0;
    for (const auto& t : doc.at("thicknesses")) {
      const std::string field = "thicknesses[" + std::to_string(i) + "]";
      const double b = length_from_json(t, field);
      if (!(b > 0.0)) fail(field, "must be > 0");
      rc.thicknesses.push_back(b);
      ++i;
    }
  }

  if (doc.contains("bracket")) {
    if (!doc.at("bracket").is_array() || doc.at("bracket").size() != 2)
      fail("bracket", "must be a [min, max] pair");
    rc.bracket_lo = length_from_json(doc.at("bracket")[0], "bracket[0]");
    rc.bracket_hi = length_from_json(doc.at("bracket")[1], "bracket[1]");
    if (!(rc.bracket_lo > 0.0) || !(rc.bracket_hi > rc.bracket_lo))
      fail("bracket", "must satisfy 0 < bracket[0] < bracket[1]");
  }

  if (doc.contains("temperature")) {
    if (!doc.at("temperature").is_number()) fail("temperature", "must be a number");
    rc.temperature = doc.at("temperature").get<double>();
    if (!(rc.temperature >= 0.0)) fail("temperature", "must be >= 0");
  }
  if (doc.contains("retarded")) {
    if (!doc.at("retarded").is_boolean()) fail("retarded", "must be a boolean");
    rc.retarded = doc.at("retarded").get<bool>();
  }
  if (doc.contains("tolerances")) {
    if (!doc.at("tolerances").is_object()) fail("tolerances", "must be an object");
    const json& t = doc.at("tolerances");
    if (t.contains("rel_tol")) {
      if (!t.at("rel_tol").is_number()) fail("tolerances.rel_tol", "must be a number");
      rc.rel_tol = t.at("rel_tol").get<double>();
    }
    if (t.contains("matsubara_rel_cutoff")) {
      if (!t.at("matsubara_rel_cutoff").is_number())
        fail("tolerances.matsubara_rel_cutoff", "must be a number");
      rc.matsubara_rel_cutoff = t.at("matsubara_rel_cutoff").get<double>();
    }
    if (t.contains("matsubara_max_n")) {
      if (!t.at("matsubara_max_n").is_number_integer())
        fail("tolerances.matsubara_max_n", "must be an integer");
      rc.matsubara_max_n = t.at("matsubara_max_n").get<long>();
    }
    if (t.contains("k_quadrature_order")) {
      if (!t.at("k_quadrature_order").is_number_integer())
        fail("tolerances.k_quadrature_order", "must be an integer");
      rc.k_quadrature_order = t.at("k_quadrature_order").get<int>();
    }
  }
  if (doc.contains("materials")) {
    if (!doc.at("materials").is_string()) fail("materials", "must be a string path");
    rc.materials_path = doc.at("materials").get<std::string>();
  }
  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) fail("output", "must be a string path");
    rc.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("threads")) {
    if (!doc.at("threads").is_number_integer()) fail("threads", "must be an integer");
    rc.threads = doc.at("threads").get<int>();
    if (rc.threads < 1) fail("threads", "must be >= 1");
  }

  // Surface solver-parameter problems now, with field names, rather than
  // from deep inside a sweep.
  try {
    rc.solver();
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("run config: ") + e.what());
  }
  return rc;
}

LayerStack build_stack(const StackSpec& spec, const MaterialLibrary& library,
                       double separation) {
  LayerStack stack;
  stack.left_halfspace = &library.get(spec.left);
  stack.gap_material = &library.get(spec.gap);
  stack.right_halfspace = &library.get(spec.right);
  stack.separation = separation;
  for (const auto& f : spec.left_films)
    stack.left_films.push_back(Layer{&library.get(f.material), f.thickness});
  for (const auto& f : spec.right_films)
    stack.right_films.push_back(Layer{&library.get(f.material), f.thickness});
  return stack;
}

}  // namespace lifshitz
