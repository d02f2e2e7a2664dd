#include "microcell/design.hpp"

#include <cmath>
#include <cstdio>

#include "microcell/errors.hpp"
#include "microcell/units.hpp"

namespace microcell {

void DesignConstraints::validate() const {
  if (!(max_series_resistance > 0.0 && max_depletion_distance_no_gdl > 0.0 &&
        max_depletion_distance_gdl > 0.0 && pitch_guidance_no_gdl > 0.0 &&
        pitch_guidance_gdl > 0.0)) {
    throw ValidationError("design limits must be positive");
  }
  for (const auto& [tag, limit] : collector_length_limits) {
    if (!(limit > 0.0)) throw ValidationError("collector length limit must be positive: " + tag);
  }
  if (!(in_plane_share > 0.0 && in_plane_share <= 1.0)) {
    throw ValidationError("in-plane budget share must lie in (0, 1]");
  }
}

double DesignConstraints::length_limit(const CollectorSpec& collector) const {
  const auto it = collector_length_limits.find(to_string(collector.material));
  return it != collector_length_limits.end() ? it->second : collector.max_length_hint;
}

std::string to_string(Severity severity) {
  return severity == Severity::Error ? "ERROR" : "WARNING";
}

std::string DesignReport::render() const {
  std::string out;
  char line[256];
  for (const auto& v : violations) {
    std::snprintf(line, sizeof line, "%s %s %.12g %.12g\n", to_string(v.severity).c_str(),
                  v.constraint_id.c_str(), v.measured, v.limit);
    out += line;
  }
  return out;
}

DesignReport check_design(const CellGeometry& geometry, const LayerStack& anode,
                          const LayerStack& cathode, const CollectorSpec& anode_collector,
                          const CollectorSpec& cathode_collector,
                          const DesignConstraints& constraints) {
  geometry.validate();
  constraints.validate();
  DesignReport report;
  auto add = [&](std::string id, double measured, double limit, Severity severity) {
    report.violations.push_back({std::move(id), measured, limit, severity});
  };

  const ResistanceBreakdown r =
      series_resistance(geometry, anode, cathode, anode_collector, cathode_collector);
  if (r.total > constraints.max_series_resistance) {
    add("series_resistance_mohm_cm2", units::ohm_m2_to_mohm_cm2(r.total),
        units::ohm_m2_to_mohm_cm2(constraints.max_series_resistance), Severity::Error);
  }

  const double half_rib = 0.5 * geometry.rib_width();
  const double depletion = geometry.has_gdl ? constraints.max_depletion_distance_gdl
                                            : constraints.max_depletion_distance_no_gdl;
  if (half_rib > depletion) {
    add("depletion_distance_um", units::m_to_um(half_rib), units::m_to_um(depletion),
        Severity::Error);
  }

  // Both electrodes share the finger length; a shared material is reported once.
  std::vector<const CollectorSpec*> collectors{&cathode_collector};
  if (anode_collector.material != cathode_collector.material) {
    collectors.push_back(&anode_collector);
  }
  for (const CollectorSpec* c : collectors) {
    const double limit = constraints.length_limit(*c);
    if (geometry.finger_length > limit) {
      add("finger_length_cm_" + to_string(c->material), units::m_to_cm(geometry.finger_length),
          units::m_to_cm(limit), Severity::Error);
    }
  }

  const double guidance =
      geometry.has_gdl ? constraints.pitch_guidance_gdl : constraints.pitch_guidance_no_gdl;
  if (geometry.pitch > guidance) {
    add("pitch_um", units::m_to_um(geometry.pitch), units::m_to_um(guidance), Severity::Warning);
  }

  for (const auto& v : report.violations) {
    if (v.severity == Severity::Error) report.pass = false;
  }
  return report;
}

DesignReport check_design(const CellPreset& preset, const DesignConstraints& constraints) {
  return check_design(preset.geometry, preset.layers, preset.layers, preset.collector,
                      preset.collector, constraints);
}

std::vector<double> pitch_grid() {
  constexpr int kPoints = 256;
  constexpr double kLo = 20e-6;
  constexpr double kHi = 5e-3;
  std::vector<double> grid(kPoints);
  for (int k = 0; k < kPoints; ++k) {
    grid[k] = kLo * std::pow(kHi / kLo, static_cast<double>(k) / (kPoints - 1));
  }
  grid.back() = kHi;
  return grid;
}

PitchChoice optimize_pitch(const CellPreset& preset, double opening_ratio,
                           const DesignConstraints& constraints) {
  if (!(opening_ratio > 0.0 && opening_ratio < 1.0)) {
    throw ValidationError("opening ratio must lie in (0, 1)");
  }
  constraints.validate();
  const CellGeometry base = preset.geometry.with_opening_ratio(opening_ratio);
  // Through-plane, contact and metal terms depend on the opening ratio only.
  const ResistanceBreakdown at_base =
      side_resistance(base, preset.layers, preset.collector, ElectrodeSide::Cathode);
  const double fixed = at_base.through_plane + at_base.contact + at_base.metal;
  const double per_side = 0.5 * constraints.max_series_resistance;
  const double budget = constraints.in_plane_share * (per_side - fixed);
  if (!(budget > 0.0)) {
    throw InfeasibleError("pitch-independent resistances exceed the series budget",
                          units::ohm_m2_to_mohm_cm2(fixed));
  }

  const std::vector<double> grid = pitch_grid();
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    const CellGeometry g = base.with_pitch(*it);
    if (in_plane_resistance(g, preset.layers) <= budget) {
      return {*it, budget, side_resistance(g, preset.layers, preset.collector,
                                           ElectrodeSide::Cathode)};
    }
  }
  throw InfeasibleError("no pitch on the grid meets the in-plane budget", grid.front());
}

double max_efficiency_power_density(const PolarizationParams& params, double r_s) {
  params.validate();
  constexpr int kPoints = 10000;
  const double step = params.limiting_current_density / (kPoints + 1);
  double best_eta = -1.0;
  double best_power = 0.0;
  for (int k = 1; k <= kPoints; ++k) {
    const EfficiencyResult e = efficiency(params, step * k, r_s);
    if (e.total > best_eta) {
      best_eta = e.total;
      best_power = e.power_density;
    }
  }
  return best_power;
}

double size_fuel_cell_area(double mean_power, const PolarizationParams& params, double r_s) {
  if (!(mean_power >= 0.0)) throw ValidationError("mean power must be non-negative");
  if (mean_power == 0.0) return 0.0;
  const double p_opt = max_efficiency_power_density(params, r_s);
  if (!(p_opt > 0.0)) throw InfeasibleError("polarization curve delivers no power", 0.0);
  return mean_power / p_opt;
}

}  // namespace microcell
