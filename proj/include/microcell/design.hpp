#pragma once

#include <map>
#include <string>
#include <vector>

#include "microcell/model.hpp"
#include "microcell/polarization.hpp"
#include "microcell/resistance.hpp"

namespace microcell {

/// Design limits, SI.
struct DesignConstraints {
  double max_series_resistance = 1e-5;          // ohm*m^2, both electrodes (100 mOhm cm^2)
  double max_depletion_distance_no_gdl = 25e-6;  // m
  double max_depletion_distance_gdl = 400e-6;    // m
  std::map<std::string, double> collector_length_limits{
      {"gold-film", 0.01}, {"steel-mesh", 0.02}, {"copper-pcb", 0.05}};
  double pitch_guidance_no_gdl = 400e-6;  // m
  double pitch_guidance_gdl = 2e-3;       // m
  /// Share of one electrode's remaining budget given to the in-plane term
  /// when choosing a pitch.
  double in_plane_share = 0.25;

  void validate() const;
  /// Finger length limit for a collector; materials missing from the map
  /// fall back to the collector's own hint.
  double length_limit(const CollectorSpec& collector) const;
};

enum class Severity { Warning, Error };

std::string to_string(Severity severity);

struct Violation {
  std::string constraint_id;
  double measured = 0.0;  // practical units named by the id suffix
  double limit = 0.0;
  Severity severity = Severity::Error;
};

struct DesignReport {
  std::vector<Violation> violations;
  bool pass = true;  // no error-severity violation

  /// One line per violation: `SEVERITY constraint_id measured limit`.
  std::string render() const;
};

DesignReport check_design(const CellGeometry& geometry, const LayerStack& anode,
                          const LayerStack& cathode, const CollectorSpec& anode_collector,
                          const CollectorSpec& cathode_collector,
                          const DesignConstraints& constraints);

/// Same stack and collector on both electrodes.
DesignReport check_design(const CellPreset& preset, const DesignConstraints& constraints);

struct PitchChoice {
  double pitch = 0.0;            // m
  double in_plane_budget = 0.0;  // ohm*m^2
  ResistanceBreakdown breakdown; // cathode side at the chosen pitch
};

/// Largest pitch on a 256-point logarithmic grid over [20 um, 5 mm] whose
/// cathode in-plane resistance fits its share of half the series budget left
/// after the pitch-independent terms. Throws InfeasibleError if none fits.
PitchChoice optimize_pitch(const CellPreset& preset, double opening_ratio,
                           const DesignConstraints& constraints);

/// The 256 candidate pitches, ascending.
std::vector<double> pitch_grid();

/// Power density at maximum total efficiency on a 10^4-point uniform grid
/// over (0, i_lim); the first maximum wins ties. W/m^2.
double max_efficiency_power_density(const PolarizationParams& params, double r_s = 0.0);

/// Active area (m^2) that runs at maximum efficiency for `mean_power` W.
double size_fuel_cell_area(double mean_power, const PolarizationParams& params,
                           double r_s = 0.0);

}  // namespace microcell
