#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "microcell/calibration.hpp"
#include "microcell/polarization.hpp"

namespace microcell {

using PolarizationPresets = std::map<std::string, PolarizationParams>;

/// Crossover current densities of the two measured cell types, A/m^2.
inline constexpr double kPcbLeakage = 5.5;  // 0.55 mA/cm^2
inline constexpr double kDfLeakage = 4.0;   // 0.40 mA/cm^2

/// Anchors for the PCB cell.
CalibrationTargets default_calibration_targets();

/// Fits the PCB curve and derives DF from it. Both cells share the MEA, so DF
/// keeps the fitted voltage parameters and differs only in crossover current.
PolarizationPresets calibrate_builtin_presets();

/// Calibrated curves shipped with the library (parsed from the committed data
/// file embedded at build time).
const PolarizationPresets& builtin_polarization_presets();

/// Lookup in builtin_polarization_presets(); throws ValidationError if unknown.
PolarizationParams polarization_preset(const std::string& name);

/// Text of the embedded data file.
const std::string& embedded_presets_document();

/// JSON document in practical units (V, mA/cm^2, mOhm*cm^2, cm^2/mA), with
/// the fit residuals when given.
std::string format_polarization_presets(const PolarizationPresets& presets,
                                        const AnchorResiduals* residuals = nullptr);
PolarizationPresets parse_polarization_presets(const std::string& document);

/// One parameter set in the practical-unit form of the data file.
nlohmann::json polarization_to_json(const PolarizationParams& params);
/// Inverse of polarization_to_json; validates the result.
PolarizationParams polarization_from_json(const nlohmann::json& object);

}  // namespace microcell
