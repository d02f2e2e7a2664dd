#include "microcell/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "microcell/errors.hpp"

namespace microcell {

namespace {

using Fn = std::function<double(double)>;

double current_tolerance(double x) { return std::max(1e-9, 1e-9 * std::abs(x)); }

// Root of f on [lo, hi] given f(lo) > 0 >= f(hi). Converges to the first
// crossing when f is monotone.
double bisect(const Fn& f, double lo, double hi) {
  for (int it = 0; it < 300 && hi - lo > current_tolerance(hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

struct Peak {
  double x = 0.0;
  double value = 0.0;
};

// Maximum of a function that is unimodal up to clamping kinks: coarse scan,
// then golden section inside the best cell.
Peak maximize(const Fn& f, double lo, double hi) {
  constexpr int kScan = 512;
  int best = 0;
  double best_value = f(lo);
  for (int k = 1; k <= kScan; ++k) {
    const double x = lo + (hi - lo) * k / kScan;
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kScan;
  double b = lo + (hi - lo) * std::min(best + 1, kScan) / kScan;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 200 && b - a > 1e-13 * std::max(1.0, b); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  Peak p{0.5 * (a + b), f(0.5 * (a + b))};
  if (best_value > p.value) p = {lo + (hi - lo) * best / kScan, best_value};
  return p;
}

// Largest current the fuel-cell model accepts.
double current_ceiling(const FuelCellModel& cell) {
  return cell.limiting_current() * (1.0 - 1e-12);
}

double blocked_voltage(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                       const CircuitSpec& circuit, double i) {
  return cell.voltage(i) + gas_cell_point(gas, circuit, i).voltage;
}

OperatingPoint assemble(const GalvanicCellSpec& gas, const CircuitSpec& circuit, double i_load,
                        double i_fc, double v_fc, bool diode, bool starved) {
  const GasCellPoint g = gas_cell_point(gas, circuit, i_load);
  OperatingPoint op;
  op.i_load = i_load;
  op.i_fc = i_fc;
  op.v_fc = v_fc;
  op.i_gc = g.current;
  op.v_gc = g.voltage;
  op.i_diode = i_load - i_fc;
  op.i_bypass = circuit.has_bypass() ? g.voltage / circuit.bypass_resistance : 0.0;
  op.v_system = v_fc + g.voltage;
  op.diode_conducting = diode;
  op.starved = starved;
  return op;
}

OperatingPoint blocked_point(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                             const CircuitSpec& circuit, double i) {
  return assemble(gas, circuit, i, i, cell.voltage(i), false, false);
}

// Fuel cell idle. A positive load current flows through the diode; with no
// current the starved cell floats at whatever the loop leaves across it.
OperatingPoint diode_point(const GalvanicCellSpec& gas, const CircuitSpec& circuit, double i,
                           bool starved, double idle_v_fc) {
  if (i > 0.0) return assemble(gas, circuit, i, 0.0, -circuit.diode_forward_drop, true, starved);
  return assemble(gas, circuit, 0.0, 0.0, idle_v_fc, false, starved);
}

OperatingPoint diode_constant_current(const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                                      double i, bool starved) {
  return diode_point(gas, circuit, i, starved, 0.0);
}

OperatingPoint diode_constant_resistance(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                         const CircuitSpec& circuit, double r, bool starved) {
  const double v_d = circuit.diode_forward_drop;
  const Fn g = [&](double i) { return gas_cell_point(gas, circuit, i).voltage - v_d - r * i; };
  const double v_gc0 = gas_cell_point(gas, circuit, 0.0).voltage;
  if (!(g(0.0) > 0.0)) return diode_point(gas, circuit, 0.0, starved, -v_gc0);
  const double hi = current_ceiling(cell);
  const double i = g(hi) > 0.0 ? hi : bisect(g, 0.0, hi);
  return diode_point(gas, circuit, i, starved, -v_gc0);
}

// Starved constant-power load: the smallest current meeting the demand on the
// gas-cell-minus-diode curve, else the current of its maximum, else nothing.
OperatingPoint diode_constant_power(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                    const CircuitSpec& circuit, double power, bool starved) {
  const double v_d = circuit.diode_forward_drop;
  const Fn k = [&](double i) {
    return i * (gas_cell_point(gas, circuit, i).voltage - v_d);
  };
  const double v_gc0 = gas_cell_point(gas, circuit, 0.0).voltage;
  if (!(v_gc0 > v_d)) return diode_point(gas, circuit, 0.0, starved, -v_gc0);
  const Peak peak = maximize(k, 0.0, current_ceiling(cell));
  if (peak.value <= 0.0) return diode_point(gas, circuit, 0.0, starved, -v_gc0);
  if (peak.value < power) return diode_point(gas, circuit, peak.x, starved, -v_gc0);
  const double i = bisect([&](double x) { return power - k(x); }, 0.0, peak.x);
  return diode_point(gas, circuit, i, starved, -v_gc0);
}

}  // namespace

double CircuitSpec::full_plenum_moles() const {
  return ambient_pressure * plenum_volume / (kConstants.gas_constant * plenum_temperature);
}

double CircuitSpec::starvation_moles() const {
  return starvation_pressure_fraction * full_plenum_moles();
}

double CircuitSpec::plenum_pressure(double moles) const {
  return moles * kConstants.gas_constant * plenum_temperature / plenum_volume;
}

void CircuitSpec::validate() const {
  if (!(bypass_resistance > 0.0)) throw ValidationError("bypass resistor must be positive or absent");
  if (!(diode_forward_drop > 0.0 && diode_forward_drop < 1.0)) {
    throw ValidationError("diode forward drop must lie in (0, 1) V");
  }
  if (!(plenum_volume > 0.0)) throw ValidationError("plenum volume must be positive");
  if (!(plenum_temperature > 0.0)) throw ValidationError("plenum temperature must be positive");
  if (!(ambient_pressure > 0.0)) throw ValidationError("ambient pressure must be positive");
  if (!(starvation_pressure_fraction >= 0.0 && starvation_pressure_fraction < 1.0)) {
    throw ValidationError("starvation pressure fraction must lie in [0, 1)");
  }
}

void FuelCellModel::validate() const {
  if (!(area > 0.0)) throw ValidationError("fuel cell area must be positive");
  if (!(series_resistance >= 0.0)) throw ValidationError("series resistance must be non-negative");
  params.validate();
}

double FuelCellModel::voltage(double current) const {
  return cell_voltage(params, current / area, series_resistance);
}

std::string to_string(LoadMode mode) {
  switch (mode) {
    case LoadMode::ConstantCurrent: return "current";
    case LoadMode::ConstantPower: return "power";
    case LoadMode::ConstantResistance: return "resistance";
    case LoadMode::Open: return "open";
  }
  return "open";
}

LoadMode load_mode_from_string(const std::string& tag) {
  if (tag == "current") return LoadMode::ConstantCurrent;
  if (tag == "power") return LoadMode::ConstantPower;
  if (tag == "resistance") return LoadMode::ConstantResistance;
  if (tag == "open") return LoadMode::Open;
  throw ValidationError("unknown load mode: " + tag);
}

void LoadSegment::validate() const {
  if (!(duration > 0.0)) throw ValidationError("segment duration must be positive");
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw ValidationError("segment value must be finite and non-negative");
  }
}

GasCellPoint gas_cell_point(const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                            double i_load) {
  if (!(i_load >= 0.0)) throw ValidationError("load current must be non-negative");
  const double r_gc = gas.internal_resistance;
  double v = gas.open_circuit_voltage - r_gc * i_load;
  if (circuit.has_bypass()) v /= 1.0 + r_gc / circuit.bypass_resistance;
  // The clamped fixed point is the clamp of the linear one since the map is
  // non-increasing in v.
  v = std::clamp(v, gas.voltage_floor, gas.voltage_ceiling);
  const double i_gc = i_load + (circuit.has_bypass() ? v / circuit.bypass_resistance : 0.0);
  return {v, i_gc};
}

double max_deliverable_power(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                             const CircuitSpec& circuit) {
  return maximize([&](double i) { return i * blocked_voltage(cell, gas, circuit, i); }, 0.0,
                  current_ceiling(cell))
      .value;
}

OperatingPoint solve_operating_point(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                     const CircuitSpec& circuit, const LoadSegment& load,
                                     double plenum_moles) {
  const bool starved = plenum_moles < circuit.starvation_moles();
  const double hi = current_ceiling(cell);

  switch (load.mode) {
    case LoadMode::Open: {
      if (starved) {
        return assemble(gas, circuit, 0.0, 0.0, 0.0, false, true);
      }
      return blocked_point(cell, gas, circuit, 0.0);
    }
    case LoadMode::ConstantCurrent: {
      const double i = load.value;
      if (i == 0.0 && !starved) return blocked_point(cell, gas, circuit, 0.0);
      if (starved || i >= hi) return diode_constant_current(gas, circuit, i, starved);
      return blocked_point(cell, gas, circuit, i);
    }
    case LoadMode::ConstantResistance: {
      const double r = load.value;
      if (starved) return diode_constant_resistance(cell, gas, circuit, r, true);
      const Fn f = [&](double i) { return blocked_voltage(cell, gas, circuit, i) - r * i; };
      if (f(hi) > 0.0) return diode_constant_resistance(cell, gas, circuit, r, false);
      return blocked_point(cell, gas, circuit, bisect(f, 0.0, hi));
    }
    case LoadMode::ConstantPower: {
      const double p = load.value;
      if (starved) return diode_constant_power(cell, gas, circuit, p, true);
      if (p == 0.0) return blocked_point(cell, gas, circuit, 0.0);
      const Fn h = [&](double i) { return i * blocked_voltage(cell, gas, circuit, i); };
      const Peak peak = maximize(h, 0.0, hi);
      if (p > peak.value) {
        throw InfeasibleError("constant-power demand exceeds the maximum deliverable power",
                              peak.value);
      }
      // Lower root: the stable branch of the power curve.
      const double i = bisect([&](double x) { return p - h(x); }, 0.0, peak.x);
      return blocked_point(cell, gas, circuit, i);
    }
  }
  throw ValidationError("unknown load mode");
}

CircuitResiduals circuit_residuals(const OperatingPoint& op, const FuelCellModel& cell,
                                   const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                                   const LoadSegment& load) {
  CircuitResiduals r;
  const double bypass = circuit.has_bypass() ? op.v_gc / circuit.bypass_resistance : 0.0;
  r.kcl = std::max({std::abs(op.i_gc - op.i_load - op.i_bypass),
                    std::abs(op.i_load - op.i_fc - op.i_diode), std::abs(op.i_bypass - bypass)});
  r.kvl = std::max(std::abs(op.v_system - op.v_fc - op.v_gc),
                   std::abs(op.v_gc - terminal_voltage(gas, op.i_gc)));
  if (!op.diode_conducting && !op.starved) {
    r.kvl = std::max(r.kvl, std::abs(op.v_fc - cell.voltage(op.i_fc)));
  }
  const double v_d = circuit.diode_forward_drop;
  const double neg_current = std::max(0.0, -op.i_diode);
  const double reverse_violation = std::max(0.0, -(op.v_fc + v_d));
  r.complementarity =
      std::max({std::abs(op.i_diode * (op.v_fc + v_d)), neg_current, reverse_violation});
  switch (load.mode) {
    case LoadMode::Open: r.load = std::abs(op.i_load); break;
    case LoadMode::ConstantCurrent: r.load = std::abs(op.i_load - load.value); break;
    case LoadMode::ConstantResistance:
      r.load = std::abs(op.v_system - load.value * op.i_load);
      break;
    case LoadMode::ConstantPower: r.load = std::abs(op.i_load * op.v_system - load.value); break;
  }
  return r;
}

}  // namespace microcell
