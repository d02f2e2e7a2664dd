#include "microcell/hydrogen.hpp"

#include <algorithm>

#include "microcell/errors.hpp"

namespace microcell {

void GalvanicCellSpec::validate() const {
  if (!(voltage_floor == 0.0)) throw ValidationError("gas cell voltage floor must be 0 V");
  if (!(voltage_ceiling > voltage_floor && voltage_ceiling <= 0.4)) {
    throw ValidationError("gas cell voltage ceiling must lie in (0, 0.4] V");
  }
  if (!(open_circuit_voltage >= 0.0)) {
    throw ValidationError("gas cell open-circuit voltage must be non-negative");
  }
  if (!(internal_resistance >= 0.0)) {
    throw ValidationError("gas cell internal resistance must be non-negative");
  }
  if (!(capacity >= 0.0)) throw ValidationError("gas cell capacity must be non-negative");
  if (!(volume >= 0.0)) throw ValidationError("gas cell volume must be non-negative");
}

double GasCellState::draw(double current, double dt) {
  if (!(current >= 0.0)) throw ValidationError("gas cell current must be non-negative");
  if (!(dt >= 0.0)) throw ValidationError("time step must be non-negative");
  const double remaining = std::max(0.0, remaining_charge());
  if (current * dt <= remaining) {
    charge_drawn_ += current * dt;
    return dt;
  }
  charge_drawn_ = capacity_;
  return current > 0.0 ? remaining / current : dt;
}

double h2_rate(double current) {
  if (!(current >= 0.0)) throw ValidationError("gas cell current must be non-negative");
  return current / kConstants.charge_per_mol_h2();
}

double terminal_voltage(const GalvanicCellSpec& spec, double current) {
  if (!(current >= 0.0)) throw ValidationError("gas cell current must be non-negative");
  const double v = spec.open_circuit_voltage - spec.internal_resistance * current;
  return std::clamp(v, spec.voltage_floor, spec.voltage_ceiling);
}

double total_h2_capacity(const GalvanicCellSpec& spec) {
  return spec.capacity / kConstants.charge_per_mol_h2();
}

}  // namespace microcell
