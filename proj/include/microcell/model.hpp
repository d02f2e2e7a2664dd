#pragma once

#include <string>
#include <vector>

namespace microcell {

/// Planar cell dimensions. All fields SI.
struct CellGeometry {
  double active_area = 0.0;     // m^2
  double pitch = 0.0;           // m, current collector pitch p
  double channel_width = 0.0;   // m, open width w between ribs
  double finger_length = 0.0;   // m, collector finger length to the bus
  bool has_gdl = false;
  int n_cells = 1;
  double intercell_gap = 0.0;   // m, informational

  double opening_ratio() const { return channel_width / pitch; }
  double rib_width() const { return pitch - channel_width; }

  /// Throws ValidationError unless 0 < w < p, A > 0, L > 0, n_cells >= 1.
  void validate() const;

  /// Copy with the channel width rescaled so that w/p equals `ratio`.
  CellGeometry with_opening_ratio(double ratio) const;
  /// Copy with a new pitch at the current opening ratio.
  CellGeometry with_pitch(double new_pitch) const;
};

/// One electronically conducting layer between reaction site and collector.
struct LayerSpec {
  std::string name;
  double in_plane_resistivity = 0.0;       // ohm*m
  double through_plane_resistivity = 0.0;  // ohm*m
  double thickness = 0.0;                  // m

  void validate() const;
};

using LayerStack = std::vector<LayerSpec>;

enum class CollectorMaterial { GoldFilm, CopperPcb, SteelMesh, Custom };

std::string to_string(CollectorMaterial material);
CollectorMaterial collector_material_from_string(const std::string& tag);

struct CollectorSpec {
  CollectorMaterial material = CollectorMaterial::Custom;
  double metal_resistivity = 0.0;    // ohm*m
  double metal_thickness = 0.0;      // m (effective thickness for meshes)
  double contact_resistivity = 0.0;  // ohm*m^2
  double max_length_hint = 0.0;      // m

  void validate() const;
};

/// Default finger-length limit for a collector material.
double default_max_length(CollectorMaterial material);

/// Geometry plus the conducting layer stack and collector of one cell type.
/// Both electrodes use the same stack and collector unless a caller supplies
/// separate ones.
struct CellPreset {
  std::string name;
  CellGeometry geometry;
  LayerStack layers;
  CollectorSpec collector;

  void validate() const;
};

// Layer and collector building blocks.
LayerSpec catalyst_layer();
LayerSpec gdl_layer();
CollectorSpec gold_film_collector();
CollectorSpec copper_pcb_collector();
CollectorSpec steel_mesh_collector();

/// The three investigated cell types: DF (thin film on foil), PCB (printed
/// circuit board), PG (printed circuit board with gas diffusion layer).
std::vector<CellPreset> builtin_cell_presets();

/// Lookup by name ("DF", "PCB", "PG"); throws ValidationError if unknown.
CellPreset cell_preset(const std::string& name);

}  // namespace microcell
