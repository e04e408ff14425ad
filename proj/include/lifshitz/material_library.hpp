#pragma once

/// Named materials and the JSON library file format.
///
/// A library file is a JSON document of the form
///
///   { "materials": [ { "name": ..., "kind": ..., "source": ..., ... }, ... ] }
///
/// with one entry per material.  Frequencies in files are photon energies in
/// eV (the convention of the optical-constants literature) and are converted
/// to angular rad/s on load using ev_to_rad_per_s.  Supported kinds:
///
///   "oscillator": "terms": [ { "strength": C, "resonance_eV": w,
///                              "damping_eV": g (optional) }, ... ]
///   "drude":      "plasma_eV": wp, "relaxation_eV": nu
///   "tabulated":  "samples": [ [xi_eV, epsilon], ... ]
///
/// The "source" string records where the numbers came from and travels with
/// the material into every result header.

#include <filesystem>
#include <string>
#include <vector>

#include "lifshitz/dielectric.hpp"

namespace lifshitz {

/// A dielectric model bundled with its name and data provenance.
struct Material {
  std::string name;
  std::string source;
  DielectricModel model;
};

/// Evaluates eps(i*xi) for a material; see eval_epsilon(DielectricModel, xi).
double eval_epsilon(const Material& material, double xi);

/// Zero-frequency limit for a material.
StaticLimit static_limit(const Material& material);

/// An ordered collection of uniquely named materials.
class MaterialLibrary {
 public:
  /// Appends a material; throws std::invalid_argument on a duplicate name.
  void add(Material material);

  /// Looks a material up by name; throws std::out_of_range with the offending
  /// name when absent.
  const Material& get(const std::string& name) const;

  bool contains(const std::string& name) const;

  std::vector<std::string> names() const;

  std::size_t size() const { return entries_.size(); }

  const std::vector<Material>& entries() const { return entries_; }

 private:
  std::vector<Material> entries_;
};

/// Parses a library file.
///
/// Malformed JSON, schema violations, non-positive parameters, and duplicate
/// names are all reported as std::invalid_argument naming the entry and field
/// at fault.  Missing files raise std::runtime_error.
MaterialLibrary load_material_library(const std::filesystem::path& path);

/// Writes a library back out in the file format accepted by
/// load_material_library, so that load(save(lib)) reproduces every model.
void save_material_library(const MaterialLibrary& library,
                           const std::filesystem::path& path);

}  // namespace lifshitz
