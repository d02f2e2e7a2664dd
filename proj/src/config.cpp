#include "microcell/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "microcell/errors.hpp"
#include "microcell/units.hpp"

namespace microcell {

namespace fs = std::filesystem;

ConfigSection::ConfigSection(const Json& object, std::string name)
    : object_(object), name_(std::move(name)) {
  if (!object_.is_object()) throw ValidationError(name_ + " must be a JSON object");
}

bool ConfigSection::has(const std::string& key) {
  seen_.push_back(key);
  return object_.contains(key) && !object_.at(key).is_null();
}

double ConfigSection::number(const std::string& key) {
  if (!has(key)) throw ValidationError("missing " + path(key));
  const Json& v = object_.at(key);
  if (!v.is_number()) throw ValidationError(path(key) + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(path(key) + " must be finite");
  return x;
}

double ConfigSection::number(const std::string& key, double fallback) {
  return has(key) ? number(key) : fallback;
}

int ConfigSection::integer(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const Json& v = object_.at(key);
  if (!v.is_number_integer()) throw ValidationError(path(key) + " must be an integer");
  return v.get<int>();
}

bool ConfigSection::boolean(const std::string& key, bool fallback) {
  if (!has(key)) return fallback;
  const Json& v = object_.at(key);
  if (!v.is_boolean()) throw ValidationError(path(key) + " must be true or false");
  return v.get<bool>();
}

std::string ConfigSection::text(const std::string& key) {
  if (!has(key)) throw ValidationError("missing " + path(key));
  const Json& v = object_.at(key);
  if (!v.is_string()) throw ValidationError(path(key) + " must be a string");
  return v.get<std::string>();
}

std::string ConfigSection::text(const std::string& key, const std::string& fallback) {
  return has(key) ? text(key) : fallback;
}

const Json& ConfigSection::raw(const std::string& key) {
  if (!has(key)) throw ValidationError("missing " + path(key));
  return object_.at(key);
}

void ConfigSection::finish() const {
  for (const auto& [key, value] : object_.items()) {
    if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
      throw ValidationError("unknown key " + path(key));
    }
  }
}

namespace {

const Json kEmpty = Json::object();

const Json& section_or_empty(const Json& doc, const std::string& key) {
  return doc.contains(key) && !doc.at(key).is_null() ? doc.at(key) : kEmpty;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

LayerSpec parse_layer(const Json& value, const std::string& name) {
  ConfigSection s(value, name);
  const std::string tag = s.text("name");
  LayerSpec layer{tag, 0.0, 0.0, 0.0};
  if (tag == "catalyst") layer = catalyst_layer();
  if (tag == "gdl") layer = gdl_layer();
  layer.in_plane_resistivity = units::mohm_cm_to_ohm_m(
      s.number("in_plane_resistivity_mohm_cm", units::ohm_m_to_mohm_cm(layer.in_plane_resistivity)));
  layer.through_plane_resistivity = units::mohm_cm_to_ohm_m(s.number(
      "through_plane_resistivity_mohm_cm", units::ohm_m_to_mohm_cm(layer.through_plane_resistivity)));
  layer.thickness = units::um_to_m(s.number("thickness_um", units::m_to_um(layer.thickness)));
  s.finish();
  layer.validate();
  return layer;
}

CollectorSpec builtin_collector(CollectorMaterial material) {
  switch (material) {
    case CollectorMaterial::GoldFilm: return gold_film_collector();
    case CollectorMaterial::CopperPcb: return copper_pcb_collector();
    case CollectorMaterial::SteelMesh: return steel_mesh_collector();
    case CollectorMaterial::Custom: break;
  }
  CollectorSpec c;
  c.material = CollectorMaterial::Custom;
  c.max_length_hint = default_max_length(CollectorMaterial::Custom);
  return c;
}

CollectorSpec parse_collector(const Json& value) {
  ConfigSection s(value, "cell.collector");
  CollectorSpec c = builtin_collector(collector_material_from_string(s.text("material")));
  c.metal_resistivity = units::ohm_cm_to_ohm_m(
      1e-6 * s.number("metal_resistivity_uohm_cm", 1e6 * units::ohm_m_to_ohm_cm(c.metal_resistivity)));
  c.metal_thickness = units::um_to_m(s.number("metal_thickness_um", units::m_to_um(c.metal_thickness)));
  c.contact_resistivity = units::mohm_cm2_to_ohm_m2(
      s.number("contact_resistivity_mohm_cm2", units::ohm_m2_to_mohm_cm2(c.contact_resistivity)));
  c.max_length_hint = units::cm_to_m(s.number("max_length_hint_cm", units::m_to_cm(c.max_length_hint)));
  s.finish();
  c.validate();
  return c;
}

CellGeometry parse_geometry(const Json& value) {
  ConfigSection s(value, "cell.geometry");
  CellGeometry g;
  g.active_area = units::cm2_to_m2(s.number("active_area_cm2"));
  g.pitch = units::um_to_m(s.number("pitch_um"));
  g.channel_width = units::um_to_m(s.number("channel_width_um"));
  g.finger_length = units::cm_to_m(s.number("finger_length_cm"));
  g.has_gdl = s.boolean("has_gdl", false);
  g.n_cells = s.integer("n_cells", 1);
  g.intercell_gap = units::um_to_m(s.number("intercell_gap_um", 0.0));
  s.finish();
  return g;
}

PolarizationParams parse_params_object(const Json& value, const std::string& name) {
  ConfigSection s(value, name);
  for (const char* key :
       {"open_circuit_voltage_V", "tafel_slope_V", "exchange_current_density_mA_cm2",
        "mea_resistance_mohm_cm2", "mass_transport_m_V", "mass_transport_n_cm2_mA",
        "leakage_current_density_mA_cm2", "limiting_current_density_mA_cm2"}) {
    s.number(key);
  }
  s.finish();
  return polarization_from_json(value);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Json load_document(const fs::path& path, const std::vector<std::string>& overrides) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config root must be a JSON object");
  for (const auto& o : overrides) apply_override(doc, o);
  return doc;
}

void apply_override(Json& document, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("override must look like key=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  Json value;
  try {
    value = Json::parse(text);
  } catch (const Json::exception&) {
    value = text;
  }
  Json* node = &document;
  for (const auto& part : split(key, '.')) {
    if (part.empty()) throw ValidationError("empty path segment in override " + key);
    if (node->is_array()) {
      if (!is_index(part)) throw ValidationError("override " + key + " indexes an array by name");
      const auto idx = std::stoul(part);
      if (idx >= node->size()) throw ValidationError("override " + key + " index out of range");
      node = &(*node)[idx];
    } else {
      if (node->is_null()) *node = Json::object();
      if (!node->is_object()) throw ValidationError("override " + key + " descends into a value");
      node = &(*node)[part];
    }
  }
  *node = std::move(value);
}

std::vector<double> parse_grid(const Json& value, const std::string& what) {
  std::vector<double> out;
  if (value.is_array()) {
    for (const auto& v : value) {
      if (!v.is_number()) throw ValidationError(what + " must contain numbers only");
      out.push_back(v.get<double>());
    }
  } else if (value.is_object()) {
    ConfigSection s(value, what);
    const double from = s.number("from");
    const double to = s.number("to");
    const int count = s.integer("count", 0);
    const std::string spacing = s.text("spacing", "linear");
    s.finish();
    if (count < 1) throw ValidationError(what + ".count must be at least 1");
    if (spacing == "linear") {
      out = linear_grid(from, to, static_cast<std::size_t>(count));
    } else if (spacing == "log") {
      if (!(from > 0.0 && to > 0.0)) throw ValidationError(what + " log grid needs positive ends");
      out = log_grid(from, to, static_cast<std::size_t>(count));
    } else {
      throw ValidationError(what + ".spacing must be linear or log");
    }
  } else {
    throw ValidationError(what + " must be a list or a grid object");
  }
  if (out.empty()) throw ValidationError(what + " must not be empty");
  return out;
}

CellPreset parse_cell(const Json& section) {
  ConfigSection s(section, "cell");
  const bool has_preset = s.has("preset");
  const bool has_geometry = s.has("geometry");
  if (has_preset == has_geometry) {
    throw ValidationError("cell needs exactly one of preset or geometry");
  }
  CellPreset cell;
  if (has_preset) {
    cell = cell_preset(s.text("preset"));
    CellGeometry& g = cell.geometry;
    if (s.has("active_area_cm2")) g.active_area = units::cm2_to_m2(s.number("active_area_cm2"));
    if (s.has("finger_length_cm")) g.finger_length = units::cm_to_m(s.number("finger_length_cm"));
    if (s.has("n_cells")) g.n_cells = s.integer("n_cells", 1);
    if (s.has("intercell_gap_um")) g.intercell_gap = units::um_to_m(s.number("intercell_gap_um"));
    if (s.has("pitch_um")) g = g.with_pitch(units::um_to_m(s.number("pitch_um")));
    const bool ratio = s.has("opening_ratio");
    const bool width = s.has("channel_width_um");
    if (ratio && width) throw ValidationError("cell sets both opening_ratio and channel_width_um");
    if (ratio) g = g.with_opening_ratio(s.number("opening_ratio"));
    if (width) g.channel_width = units::um_to_m(s.number("channel_width_um"));
    if (s.has("collector")) cell.collector = parse_collector(s.raw("collector"));
  } else {
    cell.name = s.text("name", "custom");
    cell.geometry = parse_geometry(s.raw("geometry"));
    const Json& layers = s.raw("layers");
    if (!layers.is_array() || layers.empty()) {
      throw ValidationError("cell.layers must be a non-empty list");
    }
    for (std::size_t k = 0; k < layers.size(); ++k) {
      cell.layers.push_back(parse_layer(layers[k], "cell.layers." + std::to_string(k)));
    }
    cell.collector = parse_collector(s.raw("collector"));
  }
  s.finish();
  cell.validate();
  return cell;
}

CalibrationTargets parse_targets(const Json& section) {
  ConfigSection s(section, "polarization.targets");
  CalibrationTargets t = default_calibration_targets();
  using namespace units;
  t.open_circuit_voltage = s.number("open_circuit_voltage_V", t.open_circuit_voltage);
  t.max_efficiency = s.number("max_efficiency", t.max_efficiency);
  t.power_at_max_efficiency = mW_cm2_to_W_m2(
      s.number("power_at_max_efficiency_mW_cm2", W_m2_to_mW_cm2(t.power_at_max_efficiency)));
  t.peak_power_min =
      mW_cm2_to_W_m2(s.number("peak_power_min_mW_cm2", W_m2_to_mW_cm2(t.peak_power_min)));
  t.peak_power_max =
      mW_cm2_to_W_m2(s.number("peak_power_max_mW_cm2", W_m2_to_mW_cm2(t.peak_power_max)));
  t.leakage_current_density = mA_cm2_to_A_m2(
      s.number("leakage_current_density_mA_cm2", A_m2_to_mA_cm2(t.leakage_current_density)));
  t.exchange_current_density = mA_cm2_to_A_m2(
      s.number("exchange_current_density_mA_cm2", A_m2_to_mA_cm2(t.exchange_current_density)));
  t.mass_transport_n =
      cm2_mA_to_m2_A(s.number("mass_transport_n_cm2_mA", m2_A_to_cm2_mA(t.mass_transport_n)));
  t.limiting_current_density = mA_cm2_to_A_m2(
      s.number("limiting_current_density_mA_cm2", A_m2_to_mA_cm2(t.limiting_current_density)));
  t.tolerance = s.number("tolerance", t.tolerance);
  s.finish();
  t.validate();
  return t;
}

PolarizationParams parse_polarization(const Json& section, const fs::path& base_dir,
                                      std::optional<CalibrationTargets>* fitted) {
  if (section.is_string()) return polarization_preset(section.get<std::string>());
  ConfigSection s(section, "polarization");
  const int sources = int(s.has("preset")) + int(s.has("params")) + int(s.has("targets"));
  if (sources != 1) {
    throw ValidationError("polarization needs exactly one of preset, params or targets");
  }
  PolarizationParams p;
  if (s.has("preset")) {
    const std::string name = s.text("preset");
    if (s.has("file")) {
      const fs::path file = base_dir / s.text("file");
      const auto presets = parse_polarization_presets(read_file(file));
      const auto it = presets.find(name);
      if (it == presets.end()) {
        throw ValidationError("preset " + name + " not found in " + file.string());
      }
      p = it->second;
    } else {
      p = polarization_preset(name);
    }
  } else if (s.has("params")) {
    p = parse_params_object(s.raw("params"), "polarization.params");
  } else {
    const CalibrationTargets t = parse_targets(s.raw("targets"));
    p = calibrate(t).params;
    if (fitted) *fitted = t;
  }
  if (s.has("leakage_current_density_mA_cm2")) {
    p = p.with_leakage(units::mA_cm2_to_A_m2(s.number("leakage_current_density_mA_cm2")));
  }
  s.finish();
  p.validate();
  return p;
}

GalvanicCellSpec parse_gas_cell(const Json& section) {
  ConfigSection s(section, "gas_cell");
  GalvanicCellSpec g;
  g.open_circuit_voltage = s.number("open_circuit_voltage_V", g.open_circuit_voltage);
  g.internal_resistance = s.number("internal_resistance_ohm", g.internal_resistance);
  g.voltage_ceiling = s.number("voltage_ceiling_V", g.voltage_ceiling);
  g.capacity = units::mAh_to_C(s.number("capacity_mAh", units::C_to_mAh(g.capacity)));
  g.volume = units::cm3_to_m3(s.number("volume_cm3", units::m3_to_cm3(g.volume)));
  s.finish();
  g.validate();
  return g;
}

CircuitSpec parse_circuit(const Json& section) {
  ConfigSection s(section, "circuit");
  CircuitSpec c;
  if (s.has("bypass_resistor_ohm")) c.bypass_resistance = s.number("bypass_resistor_ohm");
  c.diode_forward_drop = s.number("diode_forward_drop_V", c.diode_forward_drop);
  c.plenum_volume = units::cm3_to_m3(s.number("plenum_volume_cm3", units::m3_to_cm3(c.plenum_volume)));
  c.plenum_temperature = s.number("plenum_temperature_K", c.plenum_temperature);
  c.ambient_pressure = s.number("ambient_pressure_Pa", c.ambient_pressure);
  c.starvation_pressure_fraction =
      s.number("starvation_pressure_fraction", c.starvation_pressure_fraction);
  s.finish();
  c.validate();
  return c;
}

DesignConstraints parse_constraints(const Json& section) {
  ConfigSection s(section, "constraints");
  DesignConstraints d;
  using namespace units;
  d.max_series_resistance = mohm_cm2_to_ohm_m2(
      s.number("max_series_resistance_mohm_cm2", ohm_m2_to_mohm_cm2(d.max_series_resistance)));
  d.max_depletion_distance_no_gdl = um_to_m(
      s.number("max_depletion_distance_no_gdl_um", m_to_um(d.max_depletion_distance_no_gdl)));
  d.max_depletion_distance_gdl =
      um_to_m(s.number("max_depletion_distance_gdl_um", m_to_um(d.max_depletion_distance_gdl)));
  d.pitch_guidance_no_gdl =
      um_to_m(s.number("pitch_guidance_no_gdl_um", m_to_um(d.pitch_guidance_no_gdl)));
  d.pitch_guidance_gdl = um_to_m(s.number("pitch_guidance_gdl_um", m_to_um(d.pitch_guidance_gdl)));
  d.in_plane_share = s.number("in_plane_share", d.in_plane_share);
  if (s.has("collector_length_limits_cm")) {
    const Json& limits = s.raw("collector_length_limits_cm");
    if (!limits.is_object()) {
      throw ValidationError("constraints.collector_length_limits_cm must be an object");
    }
    for (const auto& [tag, value] : limits.items()) {
      collector_material_from_string(tag);
      if (!value.is_number()) {
        throw ValidationError("collector length limit for " + tag + " must be a number");
      }
      d.collector_length_limits[tag] = cm_to_m(value.get<double>());
    }
  }
  s.finish();
  d.validate();
  return d;
}

LoadProfile parse_profile(const Json& section) {
  ConfigSection s(section, "profile");
  LoadProfile profile;
  if (s.has("pulsed")) {
    if (s.has("segments")) throw ValidationError("profile sets both pulsed and segments");
    ConfigSection p(s.raw("pulsed"), "profile.pulsed");
    profile = LoadProfile::pulsed(units::mW_to_W(p.number("power_mW")),
                                  units::ms_to_s(p.number("width_ms")),
                                  units::ms_to_s(p.number("interval_ms")), p.integer("periods", 1));
    p.finish();
  } else {
    const Json& segments = s.raw("segments");
    if (!segments.is_array() || segments.empty()) {
      throw ValidationError("profile.segments must be a non-empty list");
    }
    for (std::size_t k = 0; k < segments.size(); ++k) {
      ConfigSection seg(segments[k], "profile.segments." + std::to_string(k));
      LoadSegment out;
      out.duration = seg.number("duration_s");
      out.mode = load_mode_from_string(seg.text("mode"));
      switch (out.mode) {
        case LoadMode::ConstantCurrent: out.value = units::mA_to_A(seg.number("value_mA")); break;
        case LoadMode::ConstantPower: out.value = units::mW_to_W(seg.number("value_mW")); break;
        case LoadMode::ConstantResistance: out.value = seg.number("value_ohm"); break;
        case LoadMode::Open: break;
      }
      seg.finish();
      profile.segments.push_back(out);
    }
    profile.repeat_count = s.integer("repeat", 1);
  }
  s.finish();
  profile.validate();
  return profile;
}

DutyCycleStudy parse_duty_study(const Json& section) {
  ConfigSection s(section, "study.duty");
  DutyCycleStudy d;
  d.pulse_power = units::mW_to_W(s.number("pulse_power_mW", units::W_to_mW(d.pulse_power)));
  d.pulse_width = units::ms_to_s(s.number("pulse_width_ms", units::s_to_ms(d.pulse_width)));
  d.slot = units::ms_to_s(s.number("slot_ms", units::s_to_ms(d.slot)));
  if (s.has("duties")) d.duties = parse_grid(s.raw("duties"), "study.duty.duties");
  d.min_simulated_time = s.number("min_simulated_time_s", d.min_simulated_time);
  d.min_periods = s.integer("min_periods", d.min_periods);
  s.finish();
  d.validate();
  return d;
}

RunConfig parse_config(const Json& document, const fs::path& base_dir) {
  ConfigSection root(document, "config");
  RunConfig rc;
  rc.document = document;
  rc.base_dir = base_dir;
  rc.cell = parse_cell(root.raw("cell"));
  rc.polarization = root.has("polarization")
                        ? parse_polarization(root.raw("polarization"), base_dir, &rc.targets)
                        : polarization_preset("PCB");
  rc.gas = parse_gas_cell(section_or_empty(document, "gas_cell"));
  root.has("gas_cell");
  rc.circuit = parse_circuit(section_or_empty(document, "circuit"));
  root.has("circuit");
  rc.constraints = parse_constraints(section_or_empty(document, "constraints"));
  root.has("constraints");

  if (root.has("systems")) {
    const Json& list = root.raw("systems");
    if (!list.is_array() || list.empty()) throw ValidationError("systems must be a non-empty list");
    for (std::size_t k = 0; k < list.size(); ++k) {
      ConfigSection s(list[k], "systems." + std::to_string(k));
      NamedCell sys;
      sys.name = s.text("name");
      if (s.has("cell") == s.has("area_cm2")) {
        throw ValidationError(s.name() + " needs exactly one of cell or area_cm2");
      }
      sys.model.area = s.has("cell") ? cell_preset(s.text("cell")).geometry.active_area
                                     : units::cm2_to_m2(s.number("area_cm2"));
      sys.model.params = s.has("polarization")
                             ? parse_polarization(s.raw("polarization"), base_dir)
                             : rc.polarization;
      sys.model.series_resistance =
          units::mohm_cm2_to_ohm_m2(s.number("series_resistance_mohm_cm2", 0.0));
      s.finish();
      sys.model.validate();
      rc.systems.push_back(sys);
    }
  } else {
    rc.systems.push_back({rc.cell.name, {rc.cell.geometry.active_area, rc.polarization, 0.0}});
  }

  if (root.has("study")) {
    rc.study = root.raw("study");
    if (!rc.study.is_object()) throw ValidationError("study must be a JSON object");
  } else {
    rc.study = Json::object();
  }
  root.finish();
  return rc;
}

}  // namespace microcell
