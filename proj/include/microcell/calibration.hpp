#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "microcell/polarization.hpp"

namespace microcell {

/// Scalar anchors a polarization curve is fitted to. SI units.
struct CalibrationTargets {
  double open_circuit_voltage = 0.74;         // V, model voltage at i = 0
  double max_efficiency = 0.56;               // maximum of voltage x Faraday efficiency
  double power_at_max_efficiency = 200.0;     // W/m^2 (20 mW/cm^2)
  double peak_power_min = 1500.0;             // W/m^2 (150 mW/cm^2)
  double peak_power_max = 2000.0;             // W/m^2 (200 mW/cm^2)
  double leakage_current_density = 5.5;       // A/m^2 (0.55 mA/cm^2)
  double exchange_current_density = 0.01;     // A/m^2, held fixed
  double mass_transport_n = 8e-4;             // m^2/A, held fixed
  double limiting_current_density = 6000.0;   // A/m^2, held fixed
  double tolerance = 1e-6;                    // max relative anchor residual
  double v_ref = kConstants.reference_voltage;

  /// The fit aims at the middle of the peak-power window.
  double peak_power_target() const { return 0.5 * (peak_power_min + peak_power_max); }
  void validate() const;
};

/// Relative residuals: OCV, max efficiency, power at max efficiency, peak power.
using AnchorResiduals = std::array<double, 4>;

struct CalibrationResult {
  PolarizationParams params;
  AnchorResiduals residuals{};
  double residual = 0.0;  // max |residual|
  int iterations = 0;
};

/// Fit failed; carries the best parameters found.
class CalibrationError : public std::runtime_error {
 public:
  CalibrationError(const std::string& what, CalibrationResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const CalibrationResult& best() const { return best_; }

 private:
  CalibrationResult best_;
};

/// Fixed starting point of the fit (E 0.8 V, b 8 mV, r_mea 100 mOhm cm^2,
/// m 10 mV) with the held parameters taken from the targets.
PolarizationParams initial_guess(const CalibrationTargets& targets);

AnchorResiduals anchor_residuals(const PolarizationParams& params,
                                 const CalibrationTargets& targets);

/// Damped least squares over (E, b, r_mea, m); 200 iterations at most, stops
/// once the residual norm changes by less than 1e-10 between accepted steps.
/// Throws CalibrationError if the anchors are not met within tolerance.
CalibrationResult calibrate(const CalibrationTargets& targets);

}  // namespace microcell
