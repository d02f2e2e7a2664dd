#pragma once

#include <cstddef>
#include <vector>

#include "microcell/circuit.hpp"

namespace microcell {

struct LoadProfile {
  std::vector<LoadSegment> segments;
  int repeat_count = 1;

  void validate() const;
  double period() const;
  double total_duration() const { return period() * repeat_count; }
  double min_segment_duration() const;

  /// `value` in mode `mode` held for `duration` seconds.
  static LoadProfile constant(LoadMode mode, double value, double duration);
  /// Constant-power pulses of `width` s every `interval` s, open in between.
  static LoadProfile pulsed(double power, double width, double interval, int periods);
};

/// min(1 ms, shortest segment / 10).
double default_time_step(const LoadProfile& profile);

struct SimulationOptions {
  bool start_with_empty_plenum = false;
  bool record_series = true;
};

struct TimeSample {
  double t = 0.0;  // s, end of the step
  OperatingPoint point;
  double plenum_pressure = 0.0;  // Pa
  double plenum_moles = 0.0;     // mol
};

struct SimulationSummary {
  double duration = 0.0;              // s actually simulated
  std::size_t steps = 0;
  bool capacity_exhausted = false;
  double delivered_energy = 0.0;      // J into the load
  double fuel_cell_energy = 0.0;      // J, fuel-cell branch voltage times load current
  double h2_generated = 0.0;          // mol
  double h2_consumed = 0.0;           // mol, by the cell reaction
  double h2_leaked = 0.0;             // mol, through the membrane
  double plenum_delta = 0.0;          // mol
  double eta_system = 0.0;
  double eta_fuel_cell = 0.0;
  double eta_voltage_mean = 0.0;      // charge-weighted
  double eta_faraday_mean = 0.0;
  double starvation_time = 0.0;       // s
  double gas_cell_charge_used = 0.0;  // C
  double mean_power = 0.0;            // W
  double max_kcl_residual = 0.0;      // A
  double max_kvl_residual = 0.0;      // V
  double max_complementarity_residual = 0.0;
  double mole_balance_residual = 0.0; // relative
};

struct SimulationResult {
  std::vector<TimeSample> series;
  SimulationSummary summary;
};

/// Fixed-step transient run. Each step solves the quasi-static operating
/// point, then advances gas-cell charge and plenum hydrogen. Stops early when
/// the gas cell runs out. Requires dt <= shortest segment / 10.
SimulationResult simulate(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                          const CircuitSpec& circuit, const LoadProfile& profile, double dt,
                          const SimulationOptions& options = {});

/// Pulsed-load study. The pulse interval of a duty d is slot / d.
struct DutyCycleStudy {
  double pulse_power = 0.070;       // W
  double pulse_width = 0.007;       // s
  double slot = 0.010;              // s
  std::vector<double> duties{0.1, 0.01, 0.001};
  double min_simulated_time = 10.0; // s
  int min_periods = 3;

  void validate() const;
  double interval(double duty) const { return slot / duty; }
  int periods(double duty) const;
};

struct DutyPoint {
  double duty = 0.0;
  double interval = 0.0;    // s
  double mean_power = 0.0;  // W
  double efficiency = 0.0;  // system efficiency
};

/// One cell over the study's duties, in input order.
std::vector<DutyPoint> duty_cycle_points(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                         const CircuitSpec& circuit, const DutyCycleStudy& study);

struct DutyRow {
  double duty = 0.0;
  double interval = 0.0;
  double mean_power = 0.0;  // W, of the first system
  std::vector<double> efficiency;  // one per system
};

/// Efficiency table for several systems sharing a gas cell and circuit.
std::vector<DutyRow> duty_cycle_table(const std::vector<FuelCellModel>& cells,
                                      const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                                      const DutyCycleStudy& study);

struct EnergyRow {
  double current = 0.0;             // A
  double energy_full_system = 0.0;  // J, (v_fc + v_gc) i
  double energy_fc_only = 0.0;      // J, v_fc i
  double charge_used = 0.0;         // C
  double duration = 0.0;            // s
  double system_efficiency = 0.0;   // energy / (1.23 V * charge)
};

/// Constant-current discharge of a full gas cell for each current. The run
/// uses `steps` fixed steps over the nominal discharge time.
std::vector<EnergyRow> obtainable_energy(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                         const CircuitSpec& circuit,
                                         const std::vector<double>& currents,
                                         int steps = 20000);

}  // namespace microcell
