#include "lifshitz/material_library.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "lifshitz/constants.hpp"

namespace lifshitz {

using nlohmann::json;

double eval_epsilon(const Material& material, double xi) {
  return eval_epsilon(material.model, xi);
}

StaticLimit static_limit(const Material& material) {
  return static_limit(material.model);
}

void MaterialLibrary::add(Material material) {
  for (const auto& e : entries_) {
    if (e.name == material.name)
      throw std::invalid_argument("duplicate material name '" + material.name + "'");
  }
  entries_.push_back(std::move(material));
}

const Material& MaterialLibrary::get(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw std::out_of_range("unknown material '" + name + "'");
}

bool MaterialLibrary::contains(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

std::vector<std::string> MaterialLibrary::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.name);
  return out;
}

namespace {

[[noreturn]] void fail(const std::string& entry, const std::string& field,
                       const std::string& what) {
  throw std::invalid_argument("material '" + entry + "': " + field + " " + what);
}

double require_number(const json& j, const std::string& entry, const std::string& key,
                      const std::string& label) {
  if (!j.contains(key)) fail(entry, label, "is missing");
  if (!j.at(key).is_number()) fail(entry, label, "must be a number");
  return j.at(key).get<double>();
}

double require_positive(const json& j, const std::string& entry, const std::string& key,
                        const std::string& label) {
  const double v = require_number(j, entry, key, label);
  if (!(v > 0.0)) fail(entry, label, "must be > 0");
  return v;
}

DielectricModel parse_oscillator(const json& j, const std::string& entry) {
  if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty())
    fail(entry, "terms", "must be a non-empty array");
  std::vector<OscillatorTerm> terms;
  std::size_t idx = 0;
  for (const auto& t : j.at("terms")) {
    const std::string field = "terms[" + std::to_string(idx) + "]";
    if (!t.is_object()) fail(entry, field, "must be an object");
    OscillatorTerm term;
    term.strength = require_positive(t, entry, "strength", field + ".strength");
    term.resonance =
        require_positive(t, entry, "resonance_eV", field + ".resonance_eV") *
        ev_to_rad_per_s;
    if (t.contains("damping_eV")) {
      term.damping =
          require_number(t, entry, "damping_eV", field + ".damping_eV") * ev_to_rad_per_s;
      if (term.damping < 0.0) fail(entry, field + ".damping_eV", "must be >= 0");
    }
    terms.push_back(term);
    ++idx;
  }
  return OscillatorModel(std::move(terms));
}

DielectricModel parse_drude(const json& j, const std::string& entry) {
  const double wp = require_positive(j, entry, "plasma_eV", "plasma_eV") * ev_to_rad_per_s;
  const double nu =
      require_number(j, entry, "relaxation_eV", "relaxation_eV") * ev_to_rad_per_s;
  if (nu < 0.0) fail(entry, "relaxation_eV", "must be >= 0");
  return DrudeModel(wp, nu);
}

DielectricModel parse_tabulated(const json& j, const std::string& entry) {
  if (!j.contains("samples") || !j.at("samples").is_array() || j.at("samples").size() < 2)
    fail(entry, "samples", "must be an array of at least two [xi_eV, epsilon] pairs");
  std::vector<double> xi, eps;
  std::size_t idx = 0;
  for (const auto& s : j.at("samples")) {
    const std::string field = "samples[" + std::to_string(idx) + "]";
    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number())
      fail(entry, field, "must be a [xi_eV, epsilon] pair of numbers");
    const double x = s[0].get<double>() * ev_to_rad_per_s;
    const double e = s[1].get<double>();
    if (!(x > 0.0)) fail(entry, field + "[0]", "must be > 0");
    if (!(e > 1.0)) fail(entry, field + "[1]", "must be > 1");
    if (!xi.empty() && !(x > xi.back()))
      fail(entry, field + "[0]", "must be strictly increasing");
    xi.push_back(x);
    eps.push_back(e);
    ++idx;
  }
  return TabulatedModel(std::move(xi), std::move(eps));
}

}  // namespace

MaterialLibrary load_material_library(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open material library '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("material library '" + path.string() +
                                "': JSON parse error: " + e.what());
  }
  if (!doc.is_object() || !doc.contains("materials") || !doc.at("materials").is_array())
    throw std::invalid_argument("material library '" + path.string() +
                                "': top-level \"materials\" array is missing");

  MaterialLibrary lib;
  std::size_t idx = 0;
  for (const auto& m : doc.at("materials")) {
    const std::string fallback = "entry " + std::to_string(idx);
    if (!m.is_object()) fail(fallback, "entry", "must be an object");
    if (!m.contains("name") || !m.at("name").is_string())
      fail(fallback, "name", "must be a string");
    const std::string name = m.at("name").get<std::string>();
    if (!m.contains("kind") || !m.at("kind").is_string())
      fail(name, "kind", "must be a string");
    const std::string kind = m.at("kind").get<std::string>();

    Material mat;
    mat.name = name;
    mat.source = m.contains("source") && m.at("source").is_string()
                     ? m.at("source").get<std::string>()
                     : std::string();
    if (kind == "oscillator") {
      mat.model = parse_oscillator(m, name);
    } else if (kind == "drude") {
      mat.model = parse_drude(m, name);
    } else if (kind == "tabulated") {
      mat.model = parse_tabulated(m, name);
    } else {
      fail(name, "kind", "must be one of \"oscillator\", \"drude\", \"tabulated\"");
    }
    try {
      lib.add(std::move(mat));
    } catch (const std::invalid_argument&) {
      fail(name, "name", "duplicates an earlier entry");
    }
    ++idx;
  }
  return lib;
}

namespace {

json to_json(const Material& mat) {
  json j;
  j["name"] = mat.name;
  j["source"] = mat.source;
  struct Visitor {
    json& j;
    void operator()(const OscillatorModel& m) const {
      j["kind"] = "oscillator";
      json terms = json::array();
      for (const auto& t : m.terms()) {
        json term;
        term["strength"] = t.strength;
        term["resonance_eV"] = t.resonance / ev_to_rad_per_s;
        if (t.damping > 0.0) term["damping_eV"] = t.damping / ev_to_rad_per_s;
        terms.push_back(term);
      }
      j["terms"] = terms;
    }
    void operator()(const DrudeModel& m) const {
      j["kind"] = "drude";
      j["plasma_eV"] = m.plasma_frequency() / ev_to_rad_per_s;
      j["relaxation_eV"] = m.relaxation_rate() / ev_to_rad_per_s;
    }
    void operator()(const TabulatedModel& m) const {
      j["kind"] = "tabulated";
      json samples = json::array();
      for (std::size_t k = 0; k < m.xi_samples().size(); ++k)
        samples.push_back({m.xi_samples()[k] / ev_to_rad_per_s, m.eps_samples()[k]});
      j["samples"] = samples;
    }
  };
  std::visit(Visitor{j}, mat.model);
  return j;
}

}  // namespace

void save_material_library(const MaterialLibrary& library,
                           const std::filesystem::path& path) {
  json doc;
  doc["materials"] = json::array();
  for (const auto& e : library.entries()) doc["materials"].push_back(to_json(e));

  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out)
      throw std::runtime_error("cannot write material library '" + path.string() + "'");
    out << doc.dump(2) << "\n";
    if (!out)
      throw std::runtime_error("failed writing material library '" + path.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace lifshitz
