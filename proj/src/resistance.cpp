#include "microcell/resistance.hpp"

#include <cmath>

#include "microcell/errors.hpp"

namespace microcell {

namespace {

bool is_gdl(const LayerSpec& layer) { return layer.name == "gdl"; }

void check_channel(const CellGeometry& g) {
  if (!(g.pitch > 0.0)) throw ValidationError("pitch must be positive");
  if (!(g.channel_width >= 0.0)) throw ValidationError("channel_width must be non-negative");
  if (!(g.opening_ratio() < 1.0)) throw ValidationError("opening ratio must be below 1");
}

}  // namespace

std::string to_string(ElectrodeSide side) {
  switch (side) {
    case ElectrodeSide::Anode: return "anode";
    case ElectrodeSide::Cathode: return "cathode";
    case ElectrodeSide::Both: return "both";
  }
  return "both";
}

ResistanceBreakdown ResistanceBreakdown::from_components(double in_plane, double through_plane,
                                                         double contact, double metal,
                                                         ElectrodeSide side) {
  return {in_plane, through_plane, contact, metal, in_plane + through_plane + contact + metal,
          side};
}

ResistanceBreakdown operator+(const ResistanceBreakdown& a, const ResistanceBreakdown& b) {
  return ResistanceBreakdown::from_components(a.in_plane + b.in_plane,
                                              a.through_plane + b.through_plane,
                                              a.contact + b.contact, a.metal + b.metal,
                                              ElectrodeSide::Both);
}

LayerStack lateral_layers(const CellGeometry& geometry, const LayerStack& layers) {
  LayerStack out;
  for (const auto& layer : layers) {
    if (is_gdl(layer) && !geometry.has_gdl) continue;
    out.push_back(layer);
  }
  return out;
}

double in_plane_resistance(const CellGeometry& geometry, const LayerStack& layers) {
  if (!(geometry.pitch > 0.0)) throw ValidationError("pitch must be positive");
  if (!(geometry.channel_width > 0.0)) throw ValidationError("channel_width must be positive");
  if (layers.empty()) throw ValidationError("at least one layer is required");
  const LayerStack lateral = lateral_layers(geometry, layers);
  double sheet_conductance = 0.0;  // siemens per square
  for (const auto& layer : lateral) {
    if (!(layer.thickness > 0.0)) throw ValidationError("layer thickness must be positive");
    if (layer.in_plane_resistivity < 0.0) throw ValidationError("negative resistivity");
    // A perfectly conducting layer shorts the lateral path.
    if (layer.in_plane_resistivity == 0.0) return 0.0;
    sheet_conductance += layer.thickness / layer.in_plane_resistivity;
  }
  const double w = geometry.channel_width;
  return w * w * w / (12.0 * sheet_conductance * geometry.pitch);
}

double through_plane_resistance(const CellGeometry& geometry, const LayerStack& layers) {
  check_channel(geometry);
  if (layers.empty()) throw ValidationError("at least one layer is required");
  double series = 0.0;
  for (const auto& layer : layers) {
    if (!(layer.thickness > 0.0)) throw ValidationError("layer thickness must be positive");
    if (is_gdl(layer) && !geometry.has_gdl) continue;
    series += layer.through_plane_resistivity * layer.thickness;
  }
  return series / (1.0 - geometry.opening_ratio());
}

double contact_resistance(const CellGeometry& geometry, const CollectorSpec& collector) {
  check_channel(geometry);
  return collector.contact_resistivity / (1.0 - geometry.opening_ratio());
}

double metal_resistance(const CellGeometry& geometry, const CollectorSpec& collector) {
  if (geometry.finger_length < 0.0) throw ValidationError("finger_length must be non-negative");
  const double rib = geometry.rib_width();
  if (!(rib > 0.0)) throw ValidationError("rib width must be positive");
  if (!(collector.metal_thickness > 0.0)) {
    throw ValidationError("metal thickness must be positive");
  }
  const double length = geometry.finger_length;
  return collector.metal_resistivity * geometry.pitch * length * length /
         (3.0 * rib * collector.metal_thickness);
}

ResistanceBreakdown side_resistance(const CellGeometry& geometry, const LayerStack& layers,
                                    const CollectorSpec& collector, ElectrodeSide side) {
  return ResistanceBreakdown::from_components(
      in_plane_resistance(geometry, layers), through_plane_resistance(geometry, layers),
      contact_resistance(geometry, collector), metal_resistance(geometry, collector), side);
}

ResistanceBreakdown series_resistance(const CellGeometry& geometry, const LayerStack& anode,
                                      const LayerStack& cathode,
                                      const CollectorSpec& anode_collector,
                                      const CollectorSpec& cathode_collector) {
  return side_resistance(geometry, anode, anode_collector, ElectrodeSide::Anode) +
         side_resistance(geometry, cathode, cathode_collector, ElectrodeSide::Cathode);
}

std::vector<ResistanceRow> resistance_sweep(const CellPreset& preset,
                                            const std::vector<double>& pitches,
                                            double opening_ratio) {
  if (pitches.empty()) throw ValidationError("pitch range must not be empty");
  if (!(opening_ratio > 0.0 && opening_ratio < 1.0)) {
    throw ValidationError("opening ratio must lie in (0, 1)");
  }
  for (std::size_t k = 0; k < pitches.size(); ++k) {
    if (!(pitches[k] > 0.0 && pitches[k] <= 10e-3)) {
      throw ValidationError("pitch must lie in (0, 10 mm]");
    }
    if (k > 0 && !(pitches[k] > pitches[k - 1])) {
      throw ValidationError("pitch range must be strictly increasing");
    }
  }
  std::vector<ResistanceRow> rows;
  rows.reserve(pitches.size());
  const CellGeometry base = preset.geometry.with_opening_ratio(opening_ratio);
  for (double p : pitches) {
    rows.push_back({p, side_resistance(base.with_pitch(p), preset.layers, preset.collector,
                                       ElectrodeSide::Cathode)});
  }
  return rows;
}

}  // namespace microcell
