#include "microcell/model.hpp"

#include <cmath>

#include "microcell/errors.hpp"
#include "microcell/units.hpp"

namespace microcell {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

void CellGeometry::validate() const {
  require_positive(active_area, "active_area");
  require_positive(pitch, "pitch");
  require_positive(channel_width, "channel_width");
  require_positive(finger_length, "finger_length");
  if (!(channel_width < pitch)) {
    throw ValidationError("channel_width must be smaller than pitch");
  }
  if (n_cells < 1) throw ValidationError("n_cells must be at least 1");
  if (intercell_gap < 0.0) throw ValidationError("intercell_gap must be non-negative");
}

CellGeometry CellGeometry::with_opening_ratio(double ratio) const {
  CellGeometry g = *this;
  g.channel_width = ratio * pitch;
  return g;
}

CellGeometry CellGeometry::with_pitch(double new_pitch) const {
  CellGeometry g = *this;
  g.channel_width = opening_ratio() * new_pitch;
  g.pitch = new_pitch;
  return g;
}

void LayerSpec::validate() const {
  require_positive(in_plane_resistivity, "in_plane_resistivity");
  require_positive(through_plane_resistivity, "through_plane_resistivity");
  require_positive(thickness, "layer thickness");
}

std::string to_string(CollectorMaterial material) {
  switch (material) {
    case CollectorMaterial::GoldFilm: return "gold-film";
    case CollectorMaterial::CopperPcb: return "copper-pcb";
    case CollectorMaterial::SteelMesh: return "steel-mesh";
    case CollectorMaterial::Custom: return "custom";
  }
  return "custom";
}

CollectorMaterial collector_material_from_string(const std::string& tag) {
  if (tag == "gold-film") return CollectorMaterial::GoldFilm;
  if (tag == "copper-pcb") return CollectorMaterial::CopperPcb;
  if (tag == "steel-mesh") return CollectorMaterial::SteelMesh;
  if (tag == "custom") return CollectorMaterial::Custom;
  throw ValidationError("unknown collector material '" + tag + "'");
}

void CollectorSpec::validate() const {
  require_positive(metal_resistivity, "metal_resistivity");
  require_positive(metal_thickness, "metal_thickness");
  require_positive(contact_resistivity, "contact_resistivity");
  require_positive(max_length_hint, "max_length_hint");
}

double default_max_length(CollectorMaterial material) {
  switch (material) {
    case CollectorMaterial::GoldFilm: return units::cm_to_m(1.0);
    case CollectorMaterial::SteelMesh: return units::cm_to_m(2.0);
    case CollectorMaterial::CopperPcb: return units::cm_to_m(5.0);
    case CollectorMaterial::Custom: return units::cm_to_m(5.0);
  }
  return units::cm_to_m(5.0);
}

void CellPreset::validate() const {
  geometry.validate();
  if (layers.empty()) throw ValidationError("layer stack must not be empty");
  for (const auto& layer : layers) layer.validate();
  collector.validate();
}

LayerSpec catalyst_layer() {
  return {"catalyst", units::mohm_cm_to_ohm_m(360.0), units::mohm_cm_to_ohm_m(360.0),
          units::um_to_m(10.0)};
}

LayerSpec gdl_layer() {
  return {"gdl", units::mohm_cm_to_ohm_m(50.0), units::mohm_cm_to_ohm_m(400.0),
          units::um_to_m(325.0)};
}

// Contact resistivity 4 mOhm cm^2 for every collector against GDL or MEA.
CollectorSpec gold_film_collector() {
  return {CollectorMaterial::GoldFilm, units::ohm_cm_to_ohm_m(2.44e-6), units::um_to_m(2.0),
          units::mohm_cm2_to_ohm_m2(4.0), default_max_length(CollectorMaterial::GoldFilm)};
}

CollectorSpec copper_pcb_collector() {
  return {CollectorMaterial::CopperPcb, units::ohm_cm_to_ohm_m(1.7e-6), units::um_to_m(30.0),
          units::mohm_cm2_to_ohm_m2(4.0), default_max_length(CollectorMaterial::CopperPcb)};
}

// 150 um stainless wire mesh as an equivalent solid sheet of half the wire
// thickness.
CollectorSpec steel_mesh_collector() {
  return {CollectorMaterial::SteelMesh, units::ohm_cm_to_ohm_m(72e-6), units::um_to_m(75.0),
          units::mohm_cm2_to_ohm_m2(4.0), default_max_length(CollectorMaterial::SteelMesh)};
}

std::vector<CellPreset> builtin_cell_presets() {
  using namespace units;
  CellPreset df{"DF",
                {cm2_to_m2(0.5), um_to_m(400.0), um_to_m(280.0), cm_to_m(0.5), false, 1,
                 um_to_m(200.0)},
                {catalyst_layer()},
                gold_film_collector()};
  CellPreset pcb{"PCB",
                 {cm2_to_m2(2.0), um_to_m(600.0), um_to_m(360.0), cm_to_m(1.4), false, 1,
                  um_to_m(200.0)},
                 {catalyst_layer()},
                 copper_pcb_collector()};
  // Mesh contacted by a frame grid every 1 cm, so fingers are 0.5 cm long.
  CellPreset pg{"PG",
                {cm2_to_m2(10.0), um_to_m(2000.0), um_to_m(1200.0), cm_to_m(0.5), true, 1,
                 um_to_m(200.0)},
                {catalyst_layer(), gdl_layer()},
                steel_mesh_collector()};
  return {df, pcb, pg};
}

CellPreset cell_preset(const std::string& name) {
  for (auto& preset : builtin_cell_presets()) {
    if (preset.name == name) return preset;
  }
  throw ValidationError("unknown cell preset '" + name + "'");
}

}  // namespace microcell
