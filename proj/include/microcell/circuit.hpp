#pragma once

#include <limits>
#include <string>

#include "microcell/hydrogen.hpp"
#include "microcell/polarization.hpp"

namespace microcell {

/// Fuel cell in series with the gas cell, a bypass diode across the fuel
/// cell (anode to the load's return) and an optional resistor R_L across the
/// gas cell. SI units.
struct CircuitSpec {
  double bypass_resistance = std::numeric_limits<double>::infinity();  // R_L, ohm; inf = absent
  double diode_forward_drop = 0.3;                                     // V
  double plenum_volume = 1e-7;                                         // m^3 (0.1 cm^3)
  double plenum_temperature = kConstants.standard_temperature;         // K
  double ambient_pressure = kConstants.standard_pressure;              // Pa
  double starvation_pressure_fraction = 0.5;

  bool has_bypass() const { return bypass_resistance < std::numeric_limits<double>::infinity(); }
  /// Hydrogen in the plenum at ambient pressure, mol.
  double full_plenum_moles() const;
  /// Below this the anode is starved, mol.
  double starvation_moles() const;
  double plenum_pressure(double moles) const;
  void validate() const;
};

/// One fuel cell (or a cell of `area` standing for the whole stack) with an
/// extra series resistance from its collectors.
struct FuelCellModel {
  double area = 0.0;  // m^2
  PolarizationParams params;
  double series_resistance = 0.0;  // ohm*m^2

  void validate() const;
  /// Terminal voltage at total current `current` A.
  double voltage(double current) const;
  /// Current at the limiting current density, A.
  double limiting_current() const { return params.limiting_current_density * area; }
  /// Equivalent current of hydrogen crossing the membrane, A.
  double leakage_current() const { return params.leakage_current_density * area; }
};

enum class LoadMode { ConstantCurrent, ConstantPower, ConstantResistance, Open };

std::string to_string(LoadMode mode);
LoadMode load_mode_from_string(const std::string& tag);

struct LoadSegment {
  double duration = 0.0;  // s
  LoadMode mode = LoadMode::Open;
  double value = 0.0;  // A, W or ohm by mode

  void validate() const;
};

struct OperatingPoint {
  double i_load = 0.0;   // A
  double i_fc = 0.0;     // A
  double v_fc = 0.0;     // V
  double i_gc = 0.0;     // A
  double v_gc = 0.0;     // V
  double i_diode = 0.0;  // A
  double i_bypass = 0.0; // A
  double v_system = 0.0; // V across the load
  bool diode_conducting = false;
  bool starved = false;
};

/// Worst residuals of the network equations at a point.
struct CircuitResiduals {
  double kcl = 0.0;             // A
  double kvl = 0.0;             // V
  double complementarity = 0.0; // diode: i_diode * (v_fc + V_d) and sign violations
  double load = 0.0;            // load-law residual in the unit of the law (A, W or V)
};

/// Gas-cell voltage and current for a load current `i_load` A, solved in
/// closed form (the fixed point of a clamped linear drop).
struct GasCellPoint {
  double voltage = 0.0;
  double current = 0.0;
};
GasCellPoint gas_cell_point(const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                            double i_load);

/// Quasi-static operating point for a load segment given the hydrogen in the
/// plenum. With the anode starved, or when the load cannot be met with the
/// diode blocked, the diode carries the load and the fuel cell is idle.
/// Throws InfeasibleError (limit = maximum power, W) for constant power above
/// what the circuit can deliver.
OperatingPoint solve_operating_point(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                                     const CircuitSpec& circuit, const LoadSegment& load,
                                     double plenum_moles);

CircuitResiduals circuit_residuals(const OperatingPoint& point, const FuelCellModel& cell,
                                   const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                                   const LoadSegment& load);

/// Maximum of I * v_system(I) with the diode blocked, W.
double max_deliverable_power(const FuelCellModel& cell, const GalvanicCellSpec& gas,
                             const CircuitSpec& circuit);

}  // namespace microcell
