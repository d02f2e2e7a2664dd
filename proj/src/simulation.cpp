#include "microcell/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "microcell/errors.hpp"
#include "microcell/parallel.hpp"

namespace microcell {

namespace {

double ratio_or_zero(double num, double den) { return den > 0.0 ? num / den : 0.0; }

}  // namespace

void LoadProfile::validate() const {
  if (segments.empty()) throw ValidationError("load profile needs at least one segment");
  if (repeat_count < 1) throw ValidationError("repeat count must be at least 1");
  for (const auto& s : segments) s.validate();
}

double LoadProfile::period() const {
  double sum = 0.0;
  for (const auto& s : segments) sum += s.duration;
  return sum;
}

double LoadProfile::min_segment_duration() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& s : segments) m = std::min(m, s.duration);
  return m;
}

LoadProfile LoadProfile::constant(LoadMode mode, double value, double duration) {
  return {{{duration, mode, value}}, 1};
}

LoadProfile LoadProfile::pulsed(double power, double width, double interval, int periods) {
  if (!(width > 0.0 && interval > width)) {
    throw ValidationError("pulse width must be positive and shorter than the interval");
  }
  return {{{width, LoadMode::ConstantPower, power}, {interval - width, LoadMode::Open, 0.0}},
          periods};
}

double default_time_step(const LoadProfile& profile) {
  return std::min(1e-3, profile.min_segment_duration() / 10.0);
}

SimulationResult simulate(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                          const CircuitSpec& circuit, const LoadProfile& profile, double dt,
                          const SimulationOptions& options) {
  cell.validate();
  gas.validate();
  circuit.validate();
  profile.validate();
  if (!(dt > 0.0) || dt > profile.min_segment_duration() / 10.0 * (1.0 + 1e-12)) {
    throw ValidationError("time step must be positive and at most a tenth of the shortest segment");
  }
  if (!(gas.capacity > 0.0)) throw ValidationError("gas cell capacity is exhausted");

  const double two_f = kConstants.charge_per_mol_h2();
  const double leak_current = cell.leakage_current();
  GasCellState gas_state(gas.capacity);
  double plenum = options.start_with_empty_plenum ? 0.0 : circuit.full_plenum_moles();
  const double plenum_start = plenum;

  SimulationResult result;
  SimulationSummary& s = result.summary;
  double weighted_v = 0.0;
  double fc_charge = 0.0;
  double t = 0.0;
  bool done = false;

  for (int rep = 0; rep < profile.repeat_count && !done; ++rep) {
    for (const LoadSegment& seg : profile.segments) {
      if (done) break;
      const auto n = static_cast<long long>(std::ceil(seg.duration / dt - 1e-9));
      for (long long k = 0; k < n; ++k) {
        const double h = std::min(dt, seg.duration - static_cast<double>(k) * dt);
        if (!(h > 0.0)) break;
        OperatingPoint op = solve_operating_point(cell, gas, circuit, seg, plenum);
        if (!op.starved && op.i_fc > 0.0 && plenum + (op.i_gc - op.i_fc) * h / two_f < 0.0) {
          // The step would drain the plenum below empty; the cell starves now.
          op = solve_operating_point(cell, gas, circuit, seg, -1.0);
        }
        const double used = gas_state.draw(op.i_gc, h);
        const double gen = op.i_gc * used / two_f;
        const double cons = op.i_fc * used / two_f;
        const double leak = std::min(leak_current * used / two_f, std::max(0.0, plenum + gen - cons));
        plenum += gen - cons - leak;
        s.h2_consumed += cons;
        s.h2_leaked += leak;

        s.delivered_energy += op.i_load * op.v_system * used;
        s.fuel_cell_energy += op.i_load * op.v_fc * used;
        weighted_v += op.v_fc * op.i_fc * used;
        fc_charge += op.i_fc * used;
        if (op.starved) s.starvation_time += used;

        const CircuitResiduals r = circuit_residuals(op, cell, gas, circuit, seg);
        s.max_kcl_residual = std::max(s.max_kcl_residual, r.kcl);
        s.max_kvl_residual = std::max(s.max_kvl_residual, r.kvl);
        s.max_complementarity_residual = std::max(s.max_complementarity_residual, r.complementarity);

        t += used;
        ++s.steps;
        if (options.record_series) {
          result.series.push_back({t, op, circuit.plenum_pressure(plenum), plenum});
        }
        if (used < h || gas_state.exhausted()) {
          s.capacity_exhausted = true;
          done = true;
          break;
        }
      }
    }
  }

  s.duration = t;
  s.h2_generated = gas_state.hydrogen_generated();
  s.gas_cell_charge_used = gas_state.charge_drawn();
  s.plenum_delta = plenum - plenum_start;
  const double hydrogen_used = s.h2_consumed + s.h2_leaked + std::max(s.plenum_delta, 0.0);
  const double reference = two_f * kConstants.reference_voltage * hydrogen_used;
  s.eta_system = ratio_or_zero(s.delivered_energy, reference);
  s.eta_fuel_cell = ratio_or_zero(s.fuel_cell_energy, reference);
  s.eta_voltage_mean = ratio_or_zero(weighted_v, fc_charge * kConstants.reference_voltage);
  s.eta_faraday_mean = ratio_or_zero(s.h2_consumed, s.h2_consumed + s.h2_leaked);
  s.mean_power = ratio_or_zero(s.delivered_energy, t);
  const double scale =
      std::max({s.h2_generated, s.h2_consumed + s.h2_leaked + std::abs(s.plenum_delta), 1e-300});
  s.mole_balance_residual =
      std::abs(s.h2_generated - s.h2_consumed - s.h2_leaked - s.plenum_delta) / scale;
  return result;
}

void DutyCycleStudy::validate() const {
  if (!(pulse_power >= 0.0)) throw ValidationError("pulse power must be non-negative");
  if (!(pulse_width > 0.0)) throw ValidationError("pulse width must be positive");
  if (!(slot > pulse_width)) throw ValidationError("duty slot must exceed the pulse width");
  if (duties.empty()) throw ValidationError("duty list must not be empty");
  for (double d : duties) {
    if (!(d > 0.0 && d <= 1.0)) throw ValidationError("duties must lie in (0, 1]");
  }
  if (!(min_simulated_time > 0.0) || min_periods < 1) {
    throw ValidationError("simulated time and period count must be positive");
  }
}

int DutyCycleStudy::periods(double duty) const {
  return std::max(min_periods,
                  static_cast<int>(std::ceil(min_simulated_time / interval(duty) - 1e-9)));
}

std::vector<DutyPoint> duty_cycle_points(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                         const CircuitSpec& circuit,
                                         const DutyCycleStudy& study) {
  study.validate();
  return parallel_map(study.duties.size(), [&](std::size_t k) {
    const double duty = study.duties[k];
    const double interval = study.interval(duty);
    const LoadProfile profile =
        LoadProfile::pulsed(study.pulse_power, study.pulse_width, interval, study.periods(duty));
    SimulationOptions opts;
    opts.record_series = false;
    const SimulationSummary s =
        simulate(cell, gas, circuit, profile, default_time_step(profile), opts).summary;
    return DutyPoint{duty, interval, s.mean_power, s.eta_system};
  });
}

std::vector<DutyRow> duty_cycle_table(const std::vector<FuelCellModel>& cells,
                                      const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                                      const DutyCycleStudy& study) {
  if (cells.empty()) throw ValidationError("duty table needs at least one cell");
  std::vector<DutyRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto points = duty_cycle_points(cells[c], gas, circuit, study);
    if (c == 0) {
      for (const auto& p : points) rows.push_back({p.duty, p.interval, p.mean_power, {}});
    }
    for (std::size_t k = 0; k < points.size(); ++k) rows[k].efficiency.push_back(points[k].efficiency);
  }
  return rows;
}

std::vector<EnergyRow> obtainable_energy(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                         const CircuitSpec& circuit,
                                         const std::vector<double>& currents, int steps) {
  cell.validate();
  gas.validate();
  circuit.validate();
  if (steps < 10) throw ValidationError("energy study needs at least 10 steps");
  for (double i : currents) {
    if (!(i > 0.0)) throw ValidationError("discharge currents must be positive");
    if (i >= cell.limiting_current()) {
      throw InfeasibleError("discharge current beyond the fuel cell limiting current",
                            cell.limiting_current());
    }
  }
  return parallel_map(currents.size(), [&](std::size_t k) {
    const double i = currents[k];
    EnergyRow row;
    row.current = i;
    if (!(gas.capacity > 0.0)) return row;
    const double nominal = gas.capacity / i;
    // Twice the nominal time: a bypass resistor drains the cell faster, and
    // the run ends at exhaustion anyway.
    const LoadProfile profile =
        LoadProfile::constant(LoadMode::ConstantCurrent, i, 2.0 * nominal);
    SimulationOptions opts;
    opts.record_series = false;
    const SimulationSummary s =
        simulate(cell, gas, circuit, profile, nominal / steps, opts).summary;
    row.energy_full_system = s.delivered_energy;
    row.energy_fc_only = s.fuel_cell_energy;
    row.charge_used = s.gas_cell_charge_used;
    row.duration = s.duration;
    row.system_efficiency =
        ratio_or_zero(s.delivered_energy, kConstants.reference_voltage * s.gas_cell_charge_used);
    return row;
  });
}

}  // namespace microcell
