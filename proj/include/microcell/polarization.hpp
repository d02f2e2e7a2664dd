#pragma once

#include <vector>

#include "microcell/constants.hpp"

namespace microcell {

/// Empirical polarization curve of one cell, SI units:
///
///   V(i) = E - b ln((i + i_leak) / i0) - (r_mea + r_s) i - m exp(n i),  V >= 0
///
/// The hydrogen crossover current i_leak is folded into the activation term
/// so the open-circuit voltage stays finite. The activation term is floored
/// at zero, so V never exceeds E.
struct PolarizationParams {
  double open_circuit_voltage = 0.0;       // E, V
  double tafel_slope = 0.0;                // b, V per natural-log unit
  double exchange_current_density = 0.0;   // i0, A/m^2
  double mea_resistance = 0.0;             // r_mea, ohm*m^2
  double mass_transport_m = 0.0;           // V
  double mass_transport_n = 0.0;           // m^2/A
  double leakage_current_density = 0.0;    // A/m^2
  double limiting_current_density = 0.0;   // A/m^2

  void validate() const;

  /// Same voltage parameters with a different crossover current density.
  PolarizationParams with_leakage(double leakage) const;

  friend bool operator==(const PolarizationParams&, const PolarizationParams&) = default;
};

struct EfficiencyResult {
  double voltage_efficiency = 0.0;
  double faraday_efficiency = 0.0;
  double total = 0.0;
  double power_density = 0.0;  // W/m^2
};

/// Cell voltage at current density `i` (A/m^2) with extra series resistance
/// `r_s` (ohm*m^2). Throws OutOfRangeError for i >= i_lim, ValidationError
/// for i < 0.
double cell_voltage(const PolarizationParams& params, double i, double r_s = 0.0);

/// dV/di at `i`; zero where the voltage is clamped.
double cell_voltage_slope(const PolarizationParams& params, double i, double r_s = 0.0);

/// Voltage efficiency V/v_ref times Faraday efficiency i/(i + i_leak).
EfficiencyResult efficiency(const PolarizationParams& params, double i, double r_s = 0.0,
                            double v_ref = kConstants.reference_voltage);

/// As efficiency() for one cell of a planar stack whose neighbours shunt an
/// extra `shunt_leak_density` (A/m^2) through the shared membrane. A single
/// cell has no neighbour, so the shunt only applies for n_cells > 1.
EfficiencyResult stack_efficiency(const PolarizationParams& params, double i, int n_cells,
                                  double shunt_leak_density, double r_s = 0.0,
                                  double v_ref = kConstants.reference_voltage);

struct CurvePoint {
  double current_density = 0.0;  // A/m^2
  double voltage = 0.0;          // V
  double power_density = 0.0;    // W/m^2
  double efficiency = 0.0;
};

/// Location of the maximum of total efficiency, found as the root of its
/// analytic derivative.
CurvePoint max_efficiency_point(const PolarizationParams& params, double r_s = 0.0,
                                double v_ref = kConstants.reference_voltage);

/// Location of the maximum of i * V(i).
CurvePoint peak_power_point(const PolarizationParams& params, double r_s = 0.0,
                            double v_ref = kConstants.reference_voltage);

struct CurveFamilyRow {
  double r_s = 0.0;  // ohm*m^2
  CurvePoint point;
  double relative_power_loss = 0.0;  // 1 - P(i; r_s) / P(i; 0)
};

/// Ohmic-loss curve family: one block of rows per r_s, in input order.
/// `r_s_list` must contain 0 as the reference curve.
std::vector<CurveFamilyRow> curve_family(const PolarizationParams& params,
                                         const std::vector<double>& r_s_list,
                                         const std::vector<double>& i_grid,
                                         double v_ref = kConstants.reference_voltage);

struct LeakageRow {
  double leakage = 0.0;  // A/m^2
  double current_density = 0.0;
  double efficiency = 0.0;
};

/// Efficiency curves with r_s = 0 for each crossover current density.
std::vector<LeakageRow> efficiency_vs_leakage(const PolarizationParams& params,
                                              const std::vector<double>& leak_list,
                                              const std::vector<double>& i_grid,
                                              double v_ref = kConstants.reference_voltage);

/// `count` points uniformly spaced over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
/// `count` points geometrically spaced over [lo, hi], lo > 0.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

}  // namespace microcell
