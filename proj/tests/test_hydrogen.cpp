#include <doctest.h>

#include <random>

#include "microcell/errors.hpp"
#include "microcell/hydrogen.hpp"
#include "microcell/units.hpp"

using namespace microcell;

TEST_CASE("faraday rates") {
  CHECK(h2_rate(0.0) == 0.0);
  CHECK(h2_rate(1.0) == doctest::Approx(5.1821e-6).epsilon(1e-4));
  CHECK(h2_rate(0.010) == doctest::Approx(5.1821e-8).epsilon(1e-4));
  // ideal gas at 25 C and 1 atm, ml/min
  const double ml_min = h2_rate(1.0) * 8.314 * 298.15 / 101325.0 * 1e6 * 60.0;
  CHECK(ml_min == doctest::Approx(7.6).epsilon(0.01));
  CHECK_THROWS_AS(h2_rate(-1e-3), ValidationError);
}

TEST_CASE("terminal voltage") {
  GalvanicCellSpec spec;
  CHECK(terminal_voltage(spec, 0.0) == doctest::Approx(0.4));
  CHECK(terminal_voltage(spec, spec.open_circuit_voltage / spec.internal_resistance) ==
        doctest::Approx(0.0));
  spec.internal_resistance = 8.0;
  CHECK(terminal_voltage(spec, 0.025) == doctest::Approx(0.2).epsilon(1e-12));
  double last = 1.0;
  for (double i = 0.0; i < 0.2; i += 0.001) {
    const double v = terminal_voltage(spec, i);
    CHECK(v >= 0.0);
    CHECK(v <= 0.4);
    CHECK(v <= last);
    last = v;
  }
  spec.open_circuit_voltage = 0.6;  // above the ceiling
  CHECK(terminal_voltage(spec, 0.0) == 0.4);
}

TEST_CASE("capacity") {
  GalvanicCellSpec spec;
  spec.capacity = units::mAh_to_C(600.0);
  CHECK(total_h2_capacity(spec) == doctest::Approx(1.119e-2).epsilon(1e-3));
  const double ml = total_h2_capacity(spec) * 8.314 * 298.15 / 101325.0 * 1e6;
  CHECK(ml == doctest::Approx(274.0).epsilon(0.01));
  GalvanicCellSpec twice = spec;
  twice.capacity *= 2.0;
  CHECK(total_h2_capacity(twice) == doctest::Approx(2.0 * total_h2_capacity(spec)));
  spec.capacity = 0.0;
  CHECK(total_h2_capacity(spec) == 0.0);
}

TEST_CASE("coulomb counting is exact") {
  GasCellState state(100.0);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> cur(0.0, 0.05), dt(1e-4, 1.0);
  for (int k = 0; k < 10000 && !state.exhausted(); ++k) {
    state.draw(cur(rng), dt(rng));
    const double back = state.hydrogen_generated() * kConstants.charge_per_mol_h2();
    CHECK(std::abs(back - state.charge_drawn()) <= 1e-12 * std::max(1.0, state.charge_drawn()));
    CHECK(state.remaining_charge() <= 100.0);
    CHECK(state.remaining_charge() >= -1e-12);
  }
}

TEST_CASE("draw truncates at the capacity") {
  GasCellState state(1.0);
  CHECK(state.draw(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(state.draw(0.5, 2.0) == doctest::Approx(1.0));
  CHECK(state.exhausted());
  CHECK(state.charge_drawn() == doctest::Approx(1.0));
  CHECK(state.draw(0.5, 1.0) == 0.0);
  CHECK_THROWS_AS(state.draw(-1.0, 1.0), ValidationError);
}

TEST_CASE("spec validation") {
  GalvanicCellSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.internal_resistance = -1.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec = {};
  spec.capacity = -1.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
}
