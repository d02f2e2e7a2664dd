#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "microcell/calibration.hpp"
#include "microcell/circuit.hpp"
#include "microcell/design.hpp"
#include "microcell/hydrogen.hpp"
#include "microcell/model.hpp"
#include "microcell/polarization.hpp"
#include "microcell/presets.hpp"
#include "microcell/simulation.hpp"
#include "microcell/sweep.hpp"

namespace microcell {

using Json = nlohmann::json;

/// A parsed run configuration. Files use practical units (um, cm, cm^2,
/// mOhm*cm, mA/cm^2, mW, mAh); everything here is SI.
struct RunConfig {
  Json document;                  // effective document after overrides
  std::filesystem::path base_dir; // relative paths resolve against this
  CellPreset cell;
  PolarizationParams polarization;
  std::optional<CalibrationTargets> targets;  // set when the curve was fitted
  GalvanicCellSpec gas;
  CircuitSpec circuit;
  DesignConstraints constraints;
  std::vector<NamedCell> systems;  // defaults to one system built from cell + polarization
  Json study;                      // per-command settings, read on demand
};

/// Reads a JSON file and applies `key=value` overrides (dotted paths; the
/// value is parsed as JSON, else taken as a string).
Json load_document(const std::filesystem::path& path, const std::vector<std::string>& overrides);

void apply_override(Json& document, const std::string& assignment);

/// Throws ValidationError on unknown keys, missing or conflicting sections,
/// or values breaking a type invariant. Throws CalibrationError when the
/// polarization section asks for a fit that fails.
RunConfig parse_config(const Json& document, const std::filesystem::path& base_dir = {});

// Section readers, exposed for tests and for the command handlers.
CellPreset parse_cell(const Json& section);
PolarizationParams parse_polarization(const Json& section, const std::filesystem::path& base_dir,
                                      std::optional<CalibrationTargets>* fitted = nullptr);
CalibrationTargets parse_targets(const Json& section);
GalvanicCellSpec parse_gas_cell(const Json& section);
CircuitSpec parse_circuit(const Json& section);
DesignConstraints parse_constraints(const Json& section);
LoadProfile parse_profile(const Json& section);
DutyCycleStudy parse_duty_study(const Json& section);

/// Either an explicit list or {"from", "to", "count", "spacing": "linear"|"log"}.
std::vector<double> parse_grid(const Json& value, const std::string& what);

/// View of one JSON object that remembers which keys were read, so that
/// finish() can reject anything unexpected.
class ConfigSection {
 public:
  ConfigSection(const Json& object, std::string name);

  bool has(const std::string& key);
  double number(const std::string& key);
  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key);
  std::string text(const std::string& key, const std::string& fallback);
  const Json& raw(const std::string& key);
  const std::string& name() const { return name_; }
  std::string path(const std::string& key) const { return name_ + "." + key; }
  /// Throws ValidationError naming the first key never asked for.
  void finish() const;

 private:
  const Json& object_;
  std::string name_;
  std::vector<std::string> seen_;
};

}  // namespace microcell
