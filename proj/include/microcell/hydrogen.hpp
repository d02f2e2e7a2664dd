#pragma once

#include "microcell/constants.hpp"

namespace microcell {

/// Zn/H2O button cell evolving hydrogen at its cathode. The terminal voltage
/// is a clamped linear drop; the real curve is only bounded to 0..0.4 V.
struct GalvanicCellSpec {
  double open_circuit_voltage = 0.4;  // V
  double internal_resistance = 3.0;   // ohm
  double voltage_floor = 0.0;         // V
  double voltage_ceiling = 0.4;       // V
  double capacity = 2160.0;           // C (600 mAh)
  double volume = 3.5e-6;             // m^3, informational

  void validate() const;
};

/// Coulomb counter of one gas cell. Hydrogen is derived from charge so the
/// two can never drift apart.
class GasCellState {
 public:
  explicit GasCellState(double capacity) : capacity_(capacity) {}

  double charge_drawn() const { return charge_drawn_; }
  double hydrogen_generated() const {
    return charge_drawn_ / kConstants.charge_per_mol_h2();
  }
  double remaining_charge() const { return capacity_ - charge_drawn_; }
  bool exhausted() const { return charge_drawn_ >= capacity_; }

  /// Draws `current` for `dt` seconds, truncated at the remaining capacity.
  /// Returns the time actually spent drawing.
  double draw(double current, double dt);

 private:
  double capacity_;
  double charge_drawn_ = 0.0;
};

/// Hydrogen evolution rate, mol/s, for a discharge current in A.
double h2_rate(double current);

/// Terminal voltage at `current` A: clamp(V_oc - R_gc I, floor, ceiling).
double terminal_voltage(const GalvanicCellSpec& spec, double current);

/// Hydrogen obtainable from the full capacity, mol.
double total_h2_capacity(const GalvanicCellSpec& spec);

}  // namespace microcell
