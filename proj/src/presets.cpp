#include "microcell/presets.hpp"

#include "embedded_presets.hpp"
#include "microcell/errors.hpp"
#include "microcell/units.hpp"

namespace microcell {

using nlohmann::json;

json polarization_to_json(const PolarizationParams& p) {
  return json{
      {"open_circuit_voltage_V", p.open_circuit_voltage},
      {"tafel_slope_V", p.tafel_slope},
      {"exchange_current_density_mA_cm2",
       units::A_m2_to_mA_cm2(p.exchange_current_density)},
      {"mea_resistance_mohm_cm2", units::ohm_m2_to_mohm_cm2(p.mea_resistance)},
      {"mass_transport_m_V", p.mass_transport_m},
      {"mass_transport_n_cm2_mA", units::m2_A_to_cm2_mA(p.mass_transport_n)},
      {"leakage_current_density_mA_cm2", units::A_m2_to_mA_cm2(p.leakage_current_density)},
      {"limiting_current_density_mA_cm2",
       units::A_m2_to_mA_cm2(p.limiting_current_density)},
  };
}

PolarizationParams polarization_from_json(const json& j) try {
  PolarizationParams p;
  p.open_circuit_voltage = j.at("open_circuit_voltage_V").get<double>();
  p.tafel_slope = j.at("tafel_slope_V").get<double>();
  p.exchange_current_density =
      units::mA_cm2_to_A_m2(j.at("exchange_current_density_mA_cm2").get<double>());
  p.mea_resistance = units::mohm_cm2_to_ohm_m2(j.at("mea_resistance_mohm_cm2").get<double>());
  p.mass_transport_m = j.at("mass_transport_m_V").get<double>();
  p.mass_transport_n = units::cm2_mA_to_m2_A(j.at("mass_transport_n_cm2_mA").get<double>());
  p.leakage_current_density =
      units::mA_cm2_to_A_m2(j.at("leakage_current_density_mA_cm2").get<double>());
  p.limiting_current_density =
      units::mA_cm2_to_A_m2(j.at("limiting_current_density_mA_cm2").get<double>());
  p.validate();
  return p;
} catch (const json::exception& e) {
  throw ValidationError(std::string("invalid polarization parameters: ") + e.what());
}

CalibrationTargets default_calibration_targets() {
  CalibrationTargets t;
  t.leakage_current_density = kPcbLeakage;
  return t;
}

PolarizationPresets calibrate_builtin_presets() {
  const CalibrationResult pcb = calibrate(default_calibration_targets());
  return {{"PCB", pcb.params}, {"DF", pcb.params.with_leakage(kDfLeakage)}};
}

const std::string& embedded_presets_document() {
  static const std::string doc = detail::kEmbeddedPresets;
  return doc;
}

const PolarizationPresets& builtin_polarization_presets() {
  static const PolarizationPresets presets = parse_polarization_presets(embedded_presets_document());
  return presets;
}

PolarizationParams polarization_preset(const std::string& name) {
  const auto& presets = builtin_polarization_presets();
  const auto it = presets.find(name);
  if (it == presets.end()) throw ValidationError("unknown polarization preset: " + name);
  return it->second;
}

std::string format_polarization_presets(const PolarizationPresets& presets,
                                        const AnchorResiduals* residuals) {
  json doc = json::object();
  for (const auto& [name, params] : presets) doc["presets"][name] = polarization_to_json(params);
  if (residuals) {
    doc["anchor_residuals"] = {(*residuals)[0], (*residuals)[1], (*residuals)[2], (*residuals)[3]};
  }
  return doc.dump(2) + "\n";
}

PolarizationPresets parse_polarization_presets(const std::string& document) {
  try {
    const json doc = json::parse(document);
    PolarizationPresets out;
    for (const auto& [name, value] : doc.at("presets").items()) out[name] = polarization_from_json(value);
    return out;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid polarization preset document: ") + e.what());
  }
}

}  // namespace microcell
