#include "microcell/sweep.hpp"

#include "microcell/errors.hpp"
#include "microcell/parallel.hpp"
#include "microcell/polarization.hpp"
#include "microcell/resistance.hpp"
#include "microcell/units.hpp"

namespace microcell {

namespace {

std::vector<double> resistance_row(double first, const ResistanceBreakdown& b) {
  using units::ohm_m2_to_mohm_cm2;
  return {first,
          ohm_m2_to_mohm_cm2(b.in_plane),
          ohm_m2_to_mohm_cm2(b.through_plane),
          ohm_m2_to_mohm_cm2(b.contact),
          ohm_m2_to_mohm_cm2(b.metal),
          ohm_m2_to_mohm_cm2(b.total)};
}

std::vector<std::string> header_for(SweepVariable variable, const SweepContext& ctx) {
  switch (variable) {
    case SweepVariable::Pitch: return {"pitch_um", "R_i", "R_t", "R_c", "R_m", "R_s"};
    case SweepVariable::OpeningRatio: return {"opening_ratio", "R_i", "R_t", "R_c", "R_m", "R_s"};
    case SweepVariable::SeriesResistance:
      return {"r_s_mohmcm2", "i_mA_cm2", "V", "P_mW_cm2", "eta", "rel_power_loss"};
    case SweepVariable::Leakage: return {"i_leak_mA_cm2", "i_mA_cm2", "V", "P_mW_cm2", "eta_max"};
    case SweepVariable::LoadCurrent: {
      std::vector<std::string> h{"current_mA"};
      for (const auto& s : ctx.systems) {
        h.push_back(s.name + "_energy_J");
        h.push_back(s.name + "_fc_energy_J");
        h.push_back(s.name + "_efficiency");
      }
      return h;
    }
    case SweepVariable::Duty: {
      std::vector<std::string> h{"duty", "interval_s", "mean_power_mW"};
      for (const auto& s : ctx.systems) h.push_back("eta_" + s.name);
      return h;
    }
  }
  return {};
}

std::vector<double> evaluate(SweepVariable variable, double x, const SweepContext& ctx) {
  switch (variable) {
    case SweepVariable::Pitch: {
      const auto rows = resistance_sweep(ctx.preset, {x}, ctx.opening_ratio);
      return resistance_row(units::m_to_um(x), rows.front().breakdown);
    }
    case SweepVariable::OpeningRatio: {
      const CellGeometry g = ctx.preset.geometry.with_opening_ratio(x);
      return resistance_row(
          x, side_resistance(g, ctx.preset.layers, ctx.preset.collector, ElectrodeSide::Cathode));
    }
    case SweepVariable::SeriesResistance: {
      if (!(x >= 0.0)) throw ValidationError("r_s must be non-negative");
      const CurvePoint ref = max_efficiency_point(ctx.params);
      const EfficiencyResult e = efficiency(ctx.params, ref.current_density, x);
      const double loss = ref.power_density > 0.0 ? 1.0 - e.power_density / ref.power_density : 0.0;
      return {units::ohm_m2_to_mohm_cm2(x), units::A_m2_to_mA_cm2(ref.current_density),
              e.voltage_efficiency * kConstants.reference_voltage,
              units::W_m2_to_mW_cm2(e.power_density), e.total, loss};
    }
    case SweepVariable::Leakage: {
      const PolarizationParams p = ctx.params.with_leakage(x);
      p.validate();
      const CurvePoint best = max_efficiency_point(p);
      return {units::A_m2_to_mA_cm2(x), units::A_m2_to_mA_cm2(best.current_density),
              best.voltage, units::W_m2_to_mW_cm2(best.power_density), best.efficiency};
    }
    case SweepVariable::LoadCurrent: {
      std::vector<double> row{units::A_to_mA(x)};
      for (const auto& s : ctx.systems) {
        const EnergyRow e =
            obtainable_energy(s.model, ctx.gas, ctx.circuit, {x}, ctx.energy_steps).front();
        row.push_back(e.energy_full_system);
        row.push_back(e.energy_fc_only);
        row.push_back(e.system_efficiency);
      }
      return row;
    }
    case SweepVariable::Duty: {
      DutyCycleStudy study = ctx.duty;
      study.duties = {x};
      std::vector<double> row;
      for (const auto& s : ctx.systems) {
        const DutyPoint p = duty_cycle_points(s.model, ctx.gas, ctx.circuit, study).front();
        if (row.empty()) row = {p.duty, p.interval, units::W_to_mW(p.mean_power)};
        row.push_back(p.efficiency);
      }
      return row;
    }
  }
  throw ValidationError("unknown sweep variable");
}

}  // namespace

std::string to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::Pitch: return "pitch";
    case SweepVariable::OpeningRatio: return "opening_ratio";
    case SweepVariable::SeriesResistance: return "r_s";
    case SweepVariable::Leakage: return "i_leak";
    case SweepVariable::LoadCurrent: return "load_current";
    case SweepVariable::Duty: return "duty";
  }
  return "";
}

SweepVariable sweep_variable_from_string(const std::string& tag) {
  for (auto v : {SweepVariable::Pitch, SweepVariable::OpeningRatio, SweepVariable::SeriesResistance,
                 SweepVariable::Leakage, SweepVariable::LoadCurrent, SweepVariable::Duty}) {
    if (to_string(v) == tag) return v;
  }
  throw ValidationError("unknown sweep variable: " + tag);
}

Table parameter_sweep(SweepVariable variable, const std::vector<double>& grid,
                      const SweepContext& context) {
  if (grid.empty()) throw ValidationError("sweep grid must not be empty");
  if ((variable == SweepVariable::LoadCurrent || variable == SweepVariable::Duty) &&
      context.systems.empty()) {
    throw ValidationError("this sweep needs at least one system");
  }
  Table table;
  table.header = header_for(variable, context);
  auto rows = parallel_map(grid.size(),
                           [&](std::size_t k) { return evaluate(variable, grid[k], context); });
  for (auto& row : rows) table.add_row(std::move(row));
  return table;
}

}  // namespace microcell
