#pragma once

namespace microcell {

struct PhysicalConstants {
  double faraday_constant = 96485.33;     // C/mol
  double electrons_per_h2 = 2.0;
  double reference_voltage = 1.23;        // V, reversible H2/O2 cell voltage
  double gas_constant = 8.314;            // J/(mol K)
  double standard_temperature = 298.15;   // K
  double standard_pressure = 101325.0;    // Pa

  /// Charge carried per mole of hydrogen, 2F.
  constexpr double charge_per_mol_h2() const { return electrons_per_h2 * faraday_constant; }
};

inline constexpr PhysicalConstants kConstants{};

}  // namespace microcell
