#pragma once

#include <string>
#include <vector>

#include "microcell/model.hpp"

namespace microcell {

enum class ElectrodeSide { Anode, Cathode, Both };

std::string to_string(ElectrodeSide side);

/// Area-normalized electron-transport resistances (ohm*m^2).
/// total == in_plane + through_plane + contact + metal.
struct ResistanceBreakdown {
  double in_plane = 0.0;
  double through_plane = 0.0;
  double contact = 0.0;
  double metal = 0.0;
  double total = 0.0;
  ElectrodeSide side = ElectrodeSide::Cathode;

  static ResistanceBreakdown from_components(double in_plane, double through_plane,
                                             double contact, double metal, ElectrodeSide side);
};

ResistanceBreakdown operator+(const ResistanceBreakdown& a, const ResistanceBreakdown& b);

/// Lateral conduction across the open channel to the ribs, current generated
/// uniformly over the pitch:  R_i = rho_eff * w^3 / (12 * t_eff * p).
/// Sheet conductance t_eff/rho_eff sums t/rho_I of the catalyst layer, plus
/// the GDL when the geometry has one.
double in_plane_resistance(const CellGeometry& geometry, const LayerStack& layers);

/// R_t = sum(rho_T * t) / (1 - w/p).
double through_plane_resistance(const CellGeometry& geometry, const LayerStack& layers);

/// R_c = rho_cs / (1 - w/p).
double contact_resistance(const CellGeometry& geometry, const CollectorSpec& collector);

/// Finger of length L collecting uniformly generated current into a bus at
/// one end:  R_m = rho_m * p * L^2 / (3 * (p - w) * t_m).
double metal_resistance(const CellGeometry& geometry, const CollectorSpec& collector);

/// All four terms for one electrode.
ResistanceBreakdown side_resistance(const CellGeometry& geometry, const LayerStack& layers,
                                    const CollectorSpec& collector, ElectrodeSide side);

/// Both electrodes summed (side == Both).
ResistanceBreakdown series_resistance(const CellGeometry& geometry, const LayerStack& anode,
                                      const LayerStack& cathode,
                                      const CollectorSpec& anode_collector,
                                      const CollectorSpec& cathode_collector);

struct ResistanceRow {
  double pitch = 0.0;  // m
  ResistanceBreakdown breakdown;
};

/// Cathode-side breakdown for each pitch at a fixed opening ratio.
/// Pitches must be strictly increasing within (0, 10 mm].
std::vector<ResistanceRow> resistance_sweep(const CellPreset& preset,
                                            const std::vector<double>& pitches,
                                            double opening_ratio);

/// Layers that carry lateral current for this geometry.
LayerStack lateral_layers(const CellGeometry& geometry, const LayerStack& layers);

}  // namespace microcell
