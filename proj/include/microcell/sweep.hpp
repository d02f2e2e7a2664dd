#pragma once

#include <string>
#include <utility>
#include <vector>

#include "microcell/circuit.hpp"
#include "microcell/model.hpp"
#include "microcell/simulation.hpp"
#include "microcell/table.hpp"

namespace microcell {

enum class SweepVariable { Pitch, OpeningRatio, SeriesResistance, Leakage, LoadCurrent, Duty };

std::string to_string(SweepVariable variable);
SweepVariable sweep_variable_from_string(const std::string& tag);

struct NamedCell {
  std::string name;
  FuelCellModel model;
};

/// Everything a sweep point may need; each variable reads only its part.
struct SweepContext {
  CellPreset preset;            // pitch, opening_ratio
  double opening_ratio = 0.6;   // pitch
  PolarizationParams params;    // r_s, i_leak
  std::vector<NamedCell> systems;  // load_current, duty
  GalvanicCellSpec gas;
  CircuitSpec circuit;
  DutyCycleStudy duty;          // pulse settings for duty
  int energy_steps = 20000;
};

/// Evaluates `grid` (SI values of the variable) point by point, concurrently,
/// returning rows in grid order in practical units with the swept variable
/// in the first column:
///   pitch          pitch_um,R_i,R_t,R_c,R_m,R_s              (cathode, mOhm cm^2)
///   opening_ratio  opening_ratio,R_i,R_t,R_c,R_m,R_s
///   r_s            r_s_mohmcm2,i_mA_cm2,V,P_mW_cm2,eta,rel_power_loss
///                  (at the max-efficiency current of the r_s = 0 curve)
///   i_leak         i_leak_mA_cm2,i_mA_cm2,V,P_mW_cm2,eta_max
///   load_current   current_mA,<name>_energy_J,<name>_fc_energy_J,<name>_efficiency...
///   duty           duty,interval_s,mean_power_mW,eta_<name>...
Table parameter_sweep(SweepVariable variable, const std::vector<double>& grid,
                      const SweepContext& context);

}  // namespace microcell
