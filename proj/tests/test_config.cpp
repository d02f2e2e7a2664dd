#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "microcell/config.hpp"
#include "microcell/errors.hpp"
#include "microcell/units.hpp"

using namespace microcell;
using namespace microcell::units;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = fs::path(MICROCELL_SOURCE_DIR) / "configs";

Json base() { return Json::parse(R"({"cell": {"preset": "PCB"}})"); }

}  // namespace

TEST_CASE("committed configs parse") {
  for (const auto& entry : fs::directory_iterator(kConfigs)) {
    CAPTURE(entry.path().string());
    const Json doc = load_document(entry.path(), {});
    CHECK_NOTHROW(parse_config(doc, kConfigs));
  }
}

TEST_CASE("default config values") {
  const RunConfig rc = parse_config(load_document(kConfigs / "default.json", {}), kConfigs);
  CHECK(rc.cell.name == "PCB");
  CHECK(rc.polarization == polarization_preset("PCB"));
  CHECK(rc.gas.capacity == doctest::Approx(2160.0));
  CHECK(rc.gas.internal_resistance == 3.0);
  CHECK_FALSE(rc.circuit.has_bypass());
  CHECK(rc.circuit.plenum_volume == doctest::Approx(1e-7));
  REQUIRE(rc.systems.size() == 2);
  CHECK(rc.systems[0].name == "DF");
  CHECK(rc.systems[0].model.area == doctest::Approx(cm2_to_m2(0.5)));
  CHECK(rc.systems[0].model.params == polarization_preset("DF"));
  CHECK(rc.constraints.max_series_resistance == doctest::Approx(1e-5));
}

TEST_CASE("minimal config falls back to defaults") {
  const RunConfig rc = parse_config(base());
  CHECK(rc.polarization == polarization_preset("PCB"));
  REQUIRE(rc.systems.size() == 1);
  CHECK(rc.systems[0].model.area == doctest::Approx(cm2_to_m2(2.0)));
  CHECK_FALSE(rc.targets.has_value());
}

TEST_CASE("cell needs exactly one source") {
  CHECK_THROWS_AS(parse_config(Json::parse(R"({})")), ValidationError);
  CHECK_THROWS_AS(parse_cell(Json::parse(R"({})")), ValidationError);
  const Json both = Json::parse(R"({"preset": "PCB", "geometry": {}})");
  CHECK_THROWS_AS(parse_cell(both), ValidationError);
}

TEST_CASE("explicit geometry") {
  const Json cell = Json::parse(R"({
    "name": "mine",
    "geometry": {"active_area_cm2": 1, "pitch_um": 500, "channel_width_um": 300,
                 "finger_length_cm": 0.8, "has_gdl": false},
    "layers": [{"name": "catalyst", "in_plane_resistivity_mohm_cm": 360,
                "through_plane_resistivity_mohm_cm": 360, "thickness_um": 10}],
    "collector": {"material": "gold-film", "metal_resistivity_uohm_cm": 2.44,
                  "metal_thickness_um": 2, "contact_resistivity_mohm_cm2": 4}
  })");
  const CellPreset p = parse_cell(cell);
  CHECK(p.name == "mine");
  CHECK(p.geometry.pitch == doctest::Approx(500e-6));
  CHECK(p.geometry.opening_ratio() == doctest::Approx(0.6));
  CHECK(p.layers[0].in_plane_resistivity == doctest::Approx(3.6e-3));
  CHECK(p.collector.metal_resistivity == doctest::Approx(2.44e-8));
  CHECK(p.collector.material == CollectorMaterial::GoldFilm);

  Json bad = cell;
  bad["geometry"]["channel_width_um"] = 600;
  CHECK_THROWS_AS(parse_cell(bad), ValidationError);
  bad = cell;
  bad["layers"][0]["thickness_um"] = 0;
  CHECK_THROWS_AS(parse_cell(bad), ValidationError);
}

TEST_CASE("preset overrides") {
  const CellPreset p =
      parse_cell(Json::parse(R"({"preset": "DF", "pitch_um": 200, "opening_ratio": 0.5})"));
  CHECK(p.geometry.pitch == doctest::Approx(200e-6));
  CHECK(p.geometry.channel_width == doctest::Approx(100e-6));
  CHECK_THROWS_AS(
      parse_cell(Json::parse(R"({"preset": "DF", "opening_ratio": 0.5, "channel_width_um": 10})")),
      ValidationError);
}

TEST_CASE("unknown keys are rejected") {
  Json doc = base();
  doc["colour"] = "blue";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = base();
  doc["cell"]["pich_um"] = 400;
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
  doc = base();
  doc["gas_cell"] = Json::parse(R"({"capacity_Ah": 1})");
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
}

TEST_CASE("polarization sources") {
  const PolarizationParams pcb = polarization_preset("PCB");
  CHECK(parse_polarization(Json("DF"), {}) == polarization_preset("DF"));
  CHECK(parse_polarization(Json::parse(R"({"preset": "PCB"})"), {}) == pcb);
  const PolarizationParams leaky =
      parse_polarization(Json::parse(R"({"preset": "PCB", "leakage_current_density_mA_cm2": 0.7})"), {});
  CHECK(leaky.leakage_current_density == doctest::Approx(7.0));
  Json params = {{"params", polarization_to_json(pcb)}};
  const PolarizationParams explicit_params = parse_polarization(params, {});
  CHECK(explicit_params.open_circuit_voltage == doctest::Approx(pcb.open_circuit_voltage));
  CHECK_THROWS_AS(parse_polarization(Json::parse(R"({"preset": "PCB", "targets": {}})"), {}),
                  ValidationError);
  CHECK_THROWS_AS(parse_polarization(Json::parse(R"({})"), {}), ValidationError);

  std::optional<CalibrationTargets> fitted;
  const PolarizationParams fit = parse_polarization(
      Json::parse(R"({"targets": {"leakage_current_density_mA_cm2": 0.55}})"), {}, &fitted);
  CHECK(fitted.has_value());
  CHECK(fit.open_circuit_voltage == doctest::Approx(pcb.open_circuit_voltage).epsilon(1e-9));
}

TEST_CASE("polarization from a presets file") {
  const fs::path dir = fs::temp_directory_path() / "microcell_config_test";
  fs::create_directories(dir);
  PolarizationPresets presets{{"X", polarization_preset("PCB").with_leakage(6.0)}};
  std::ofstream(dir / "p.json") << format_polarization_presets(presets);
  const PolarizationParams p =
      parse_polarization(Json::parse(R"({"preset": "X", "file": "p.json"})"), dir);
  CHECK(p.leakage_current_density == doctest::Approx(6.0));
  CHECK_THROWS_AS(parse_polarization(Json::parse(R"({"preset": "Y", "file": "p.json"})"), dir),
                  ValidationError);
  fs::remove_all(dir);
}

TEST_CASE("gas cell and circuit sections") {
  const GalvanicCellSpec g = parse_gas_cell(Json::parse(R"({"capacity_mAh": 100})"));
  CHECK(g.capacity == doctest::Approx(360.0));
  CHECK(g.open_circuit_voltage == 0.4);
  const CircuitSpec c = parse_circuit(Json::parse(R"({"bypass_resistor_ohm": 400})"));
  CHECK(c.bypass_resistance == 400.0);
  CHECK_FALSE(parse_circuit(Json::parse(R"({"bypass_resistor_ohm": null})")).has_bypass());
  CHECK_THROWS_AS(parse_circuit(Json::parse(R"({"diode_forward_drop_V": 2})")), ValidationError);
}

TEST_CASE("profiles") {
  const LoadProfile pulsed = parse_profile(
      Json::parse(R"({"pulsed": {"power_mW": 70, "width_ms": 7, "interval_ms": 100, "periods": 3}})"));
  CHECK(pulsed.total_duration() == doctest::Approx(0.3));
  CHECK(pulsed.segments[0].mode == LoadMode::ConstantPower);
  CHECK(pulsed.segments[0].value == doctest::Approx(0.07));

  const LoadProfile seg = parse_profile(Json::parse(R"({"segments": [
      {"duration_s": 1, "mode": "current", "value_mA": 10},
      {"duration_s": 2, "mode": "resistance", "value_ohm": 50},
      {"duration_s": 1, "mode": "open"}], "repeat": 2})"));
  REQUIRE(seg.segments.size() == 3);
  CHECK(seg.segments[0].value == doctest::Approx(0.01));
  CHECK(seg.segments[1].value == 50.0);
  CHECK(seg.total_duration() == doctest::Approx(8.0));
  CHECK_THROWS_AS(parse_profile(Json::parse(R"({"segments": [{"duration_s": 1, "mode": "current", "value_mW": 1}]})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_profile(Json::parse(R"({})")), ValidationError);
}

TEST_CASE("grids") {
  CHECK(parse_grid(Json::parse("[1, 2, 3]"), "g") == std::vector<double>{1, 2, 3});
  const auto lin = parse_grid(Json::parse(R"({"from": 0, "to": 1, "count": 5})"), "g");
  CHECK(lin.size() == 5);
  CHECK(lin[1] == doctest::Approx(0.25));
  const auto lg =
      parse_grid(Json::parse(R"({"from": 1, "to": 100, "count": 3, "spacing": "log"})"), "g");
  CHECK(lg[1] == doctest::Approx(10.0));
  CHECK_THROWS_AS(parse_grid(Json::parse("[]"), "g"), ValidationError);
  CHECK_THROWS_AS(parse_grid(Json::parse(R"(["a"])"), "g"), ValidationError);
  CHECK_THROWS_AS(parse_grid(Json::parse(R"({"from": 0, "to": 1, "count": 5, "spacing": "cubic"})"), "g"),
                  ValidationError);
}

TEST_CASE("overrides") {
  Json doc = Json::parse(R"({"a": {"b": 1}, "list": [{"x": 1}, {"x": 2}]})");
  apply_override(doc, "a.b=2.5");
  CHECK(doc["a"]["b"] == 2.5);
  apply_override(doc, "list.1.x=7");
  CHECK(doc["list"][1]["x"] == 7);
  apply_override(doc, "a.c=hello");
  CHECK(doc["a"]["c"] == "hello");
  apply_override(doc, "new.deep=[1,2]");
  CHECK(doc["new"]["deep"].size() == 2);
  apply_override(doc, "a.n=null");
  CHECK(doc["a"]["n"].is_null());
  CHECK_THROWS_AS(apply_override(doc, "novalue"), ValidationError);
  CHECK_THROWS_AS(apply_override(doc, "list.5.x=1"), ValidationError);
  CHECK_THROWS_AS(apply_override(doc, "list.x=1"), ValidationError);
  CHECK_THROWS_AS(apply_override(doc, "a.b.c=1"), ValidationError);
  CHECK_THROWS_AS(load_document("/nonexistent/config.json", {}), ValidationError);
}

TEST_CASE("systems") {
  Json doc = base();
  doc["systems"] = Json::parse(R"([{"name": "small", "area_cm2": 0.1, "polarization": "DF",
                                     "series_resistance_mohm_cm2": 50}])");
  const RunConfig rc = parse_config(doc);
  REQUIRE(rc.systems.size() == 1);
  CHECK(rc.systems[0].model.area == doctest::Approx(1e-5));
  CHECK(rc.systems[0].model.series_resistance == doctest::Approx(5e-6));
  CHECK(rc.systems[0].model.params == polarization_preset("DF"));
  doc["systems"][0]["cell"] = "PCB";
  CHECK_THROWS_AS(parse_config(doc), ValidationError);
}
