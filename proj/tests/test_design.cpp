#include <doctest.h>

#include <algorithm>
#include <random>

#include "microcell/design.hpp"
#include "microcell/errors.hpp"
#include "microcell/presets.hpp"
#include "microcell/units.hpp"

using namespace microcell;
using namespace microcell::units;

namespace {

bool has(const DesignReport& r, const std::string& id) {
  for (const auto& v : r.violations) {
    if (v.constraint_id == id) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("depletion distance without GDL") {
  CellPreset p = cell_preset("PCB");
  p.geometry.channel_width = p.geometry.pitch - um_to_m(120.0);  // half rib 60 um
  const DesignReport r = check_design(p, DesignConstraints{});
  CHECK(has(r, "depletion_distance_um"));
  CHECK_FALSE(r.pass);
  for (const auto& v : r.violations) {
    if (v.constraint_id == "depletion_distance_um") {
      CHECK(v.measured == doctest::Approx(60.0));
      CHECK(v.limit == doctest::Approx(25.0));
      CHECK(v.severity == Severity::Error);
    }
  }
}

TEST_CASE("gold film finger length") {
  CellPreset p = cell_preset("DF");
  p.geometry.finger_length = cm_to_m(0.5);
  CHECK_FALSE(has(check_design(p, DesignConstraints{}), "finger_length_cm_gold-film"));
  p.geometry.finger_length = cm_to_m(1.5);
  const DesignReport r = check_design(p, DesignConstraints{});
  CHECK(has(r, "finger_length_cm_gold-film"));
  CHECK(r.render().find("ERROR finger_length_cm_gold-film 1.5 1\n") != std::string::npos);
}

TEST_CASE("zero-resistance stack passes the series budget") {
  CellPreset p = cell_preset("PCB");
  for (auto& l : p.layers) {
    l.in_plane_resistivity = 0.0;
    l.through_plane_resistivity = 0.0;
  }
  p.collector.contact_resistivity = 0.0;
  p.collector.metal_resistivity = 0.0;
  CHECK(series_resistance(p.geometry, p.layers, p.layers, p.collector, p.collector).total == 0.0);
  CHECK_FALSE(has(check_design(p, DesignConstraints{}), "series_resistance_mohm_cm2"));
}

TEST_CASE("pitch guidance is a warning") {
  DesignConstraints c;
  c.max_series_resistance = 1.0;  // isolate the pitch check
  CellPreset p = cell_preset("PCB");
  p.geometry = p.geometry.with_pitch(um_to_m(300.0));
  p.geometry.channel_width = p.geometry.pitch - um_to_m(40.0);
  const DesignReport ok = check_design(p, c);
  CHECK(ok.violations.empty());
  CHECK(ok.pass);
  CHECK(ok.render().empty());
  p.geometry = p.geometry.with_pitch(um_to_m(500.0));
  p.geometry.channel_width = p.geometry.pitch - um_to_m(40.0);
  const DesignReport warn = check_design(p, c);
  CHECK(has(warn, "pitch_um"));
  CHECK(warn.pass);
  CHECK(warn.render().rfind("WARNING pitch_um 500 400", 0) == 0);
}

TEST_CASE("loosening a limit never adds a violation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto presets = builtin_cell_presets();
  for (int k = 0; k < 300; ++k) {
    CellPreset p = presets[k % 3];
    p.geometry = p.geometry.with_pitch(um_to_m(50.0 + 4000.0 * u(rng)));
    p.geometry = p.geometry.with_opening_ratio(0.2 + 0.75 * u(rng));
    p.geometry.finger_length = cm_to_m(0.1 + 4.0 * u(rng));
    DesignConstraints tight;
    tight.max_series_resistance = mohm_cm2_to_ohm_m2(20.0 + 200.0 * u(rng));
    tight.max_depletion_distance_no_gdl = um_to_m(5.0 + 100.0 * u(rng));
    tight.max_depletion_distance_gdl = um_to_m(50.0 + 800.0 * u(rng));
    for (auto& [tag, limit] : tight.collector_length_limits) limit = cm_to_m(0.2 + 3.0 * u(rng));
    DesignConstraints loose = tight;
    const double f = 1.0 + 2.0 * u(rng);
    switch (k % 4) {
      case 0: loose.max_series_resistance *= f; break;
      case 1: loose.max_depletion_distance_no_gdl *= f; loose.max_depletion_distance_gdl *= f; break;
      case 2: for (auto& [tag, limit] : loose.collector_length_limits) limit *= f; break;
      default: loose.pitch_guidance_gdl *= f; loose.pitch_guidance_no_gdl *= f; break;
    }
    const DesignReport a = check_design(p, tight);
    const DesignReport b = check_design(p, loose);
    for (const auto& v : b.violations) CHECK(has(a, v.constraint_id));
    if (a.pass) CHECK(b.pass);
  }
}

TEST_CASE("pitch optimization follows the guidance") {
  const DesignConstraints c;
  for (const char* name : {"DF", "PCB"}) {
    CAPTURE(name);
    const PitchChoice choice = optimize_pitch(cell_preset(name), 0.6, c);
    CHECK(m_to_um(choice.pitch) == doctest::Approx(400.0).epsilon(0.25));
    CHECK(choice.breakdown.in_plane <= choice.in_plane_budget);
  }
  const PitchChoice pg = optimize_pitch(cell_preset("PG"), 0.6, c);
  CHECK(m_to_um(pg.pitch) == doctest::Approx(2000.0).epsilon(0.25));
  CHECK(pg.breakdown.in_plane <= pg.in_plane_budget);
  // the next grid point would exceed the budget
  const auto grid = pitch_grid();
  const auto it = std::find(grid.begin(), grid.end(), pg.pitch);
  REQUIRE(it != grid.end());
  REQUIRE(it + 1 != grid.end());
  const CellPreset p = cell_preset("PG");
  CHECK(in_plane_resistance(p.geometry.with_opening_ratio(0.6).with_pitch(*(it + 1)), p.layers) >
        pg.in_plane_budget);
}

TEST_CASE("unbounded budget returns the largest pitch") {
  DesignConstraints c;
  c.max_series_resistance = 1e300;
  CHECK(optimize_pitch(cell_preset("PCB"), 0.6, c).pitch == doctest::Approx(5e-3));
  c.max_series_resistance = mohm_cm2_to_ohm_m2(1.0);
  CHECK_THROWS_AS(optimize_pitch(cell_preset("PCB"), 0.6, c), InfeasibleError);
  CHECK_THROWS_AS(optimize_pitch(cell_preset("PCB"), 1.0, DesignConstraints{}), ValidationError);
}

TEST_CASE("pitch grid") {
  const auto g = pitch_grid();
  REQUIRE(g.size() == 256);
  CHECK(g.front() == doctest::Approx(20e-6));
  CHECK(g.back() == 5e-3);
  for (std::size_t k = 1; k < g.size(); ++k) CHECK(g[k] > g[k - 1]);
}

TEST_CASE("fuel cell sizing") {
  const PolarizationParams p = polarization_preset("PCB");
  CHECK(m2_to_mm2(size_fuel_cell_area(mW_to_W(0.5), p)) == doctest::Approx(2.5).epsilon(0.2));
  CHECK(m2_to_mm2(size_fuel_cell_area(mW_to_W(0.07), p)) == doctest::Approx(0.35).epsilon(0.2));
  CHECK(size_fuel_cell_area(0.0, p) == 0.0);
  CHECK_THROWS_AS(size_fuel_cell_area(-1.0, p), ValidationError);
  const double a = size_fuel_cell_area(1e-3, p), b = size_fuel_cell_area(3e-3, p);
  CHECK(size_fuel_cell_area(4e-3, p) == doctest::Approx(a + b).epsilon(1e-14));
  CHECK(size_fuel_cell_area(2e-3, p) == doctest::Approx(2.0 * a).epsilon(1e-14));

  // The sized cell runs at the max-efficiency current within one grid step.
  const double step = p.limiting_current_density / 10001.0;
  double best_i = 0.0, best_eta = -1.0;
  for (int k = 1; k <= 10000; ++k) {
    const double eta = efficiency(p, step * k).total;
    if (eta > best_eta) {
      best_eta = eta;
      best_i = step * k;
    }
  }
  const double target = 1e-3 / a;  // W/m^2 demanded of the sized cell
  double lo = 0.0, hi = best_i + 2.0 * step;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid * cell_voltage(p, mid) < target) lo = mid; else hi = mid;
  }
  CHECK(std::abs(0.5 * (lo + hi) - best_i) <= step);
}

TEST_CASE("constraint validation") {
  DesignConstraints c;
  c.max_series_resistance = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.in_plane_share = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  CHECK(c.length_limit(gold_film_collector()) == doctest::Approx(0.01));
  CollectorSpec custom = gold_film_collector();
  custom.material = CollectorMaterial::Custom;
  custom.max_length_hint = 0.03;
  CHECK(c.length_limit(custom) == doctest::Approx(0.03));
}
