#include <doctest.h>

#include "microcell/circuit.hpp"
#include "microcell/errors.hpp"
#include "microcell/presets.hpp"
#include "microcell/units.hpp"
#include "oracles.hpp"

using namespace microcell;
using namespace microcell::units;

namespace {

FuelCellModel pcb_cell() { return {cm2_to_m2(2.0), polarization_preset("PCB"), 0.0}; }

void check_consistent(const OperatingPoint& op, const FuelCellModel& cell,
                      const GalvanicCellSpec& gas, const CircuitSpec& circuit,
                      const LoadSegment& load) {
  const CircuitResiduals r = circuit_residuals(op, cell, gas, circuit, load);
  CHECK(r.kcl < 1e-9);
  CHECK(r.kvl < 1e-9);
  CHECK(r.complementarity < 1e-9);
  CHECK(op.v_gc >= 0.0);
  CHECK(op.v_gc <= 0.4);
}

}  // namespace

TEST_CASE("grid-scan oracle on random scenarios") {
  const auto scenarios = oracle::random_scenarios(2024, 20);
  for (std::size_t k = 0; k < scenarios.size(); ++k) {
    CAPTURE(k);
    const auto& s = scenarios[k];
    const double full = s.circuit.full_plenum_moles();
    const OperatingPoint op = solve_operating_point(s.cell, s.gas, s.circuit, s.load, full);
    CHECK_FALSE(op.diode_conducting);
    check_consistent(op, s.cell, s.gas, s.circuit, s.load);
    CHECK(circuit_residuals(op, s.cell, s.gas, s.circuit, s.load).load < 1e-6);
    const oracle::GridAnswer g = oracle::grid_scan(s.cell, s.gas, s.circuit, s.load, 1000000);
    CHECK(std::abs(op.i_fc - g.current) <= g.step);
  }
}

TEST_CASE("gas-cell closed form matches the fixed point") {
  GalvanicCellSpec gas;
  for (double rl : {std::numeric_limits<double>::infinity(), 10.0, 400.0}) {
    CircuitSpec c;
    c.bypass_resistance = rl;
    for (double i : {0.0, 0.01, 0.05, 0.2}) {
      const GasCellPoint p = gas_cell_point(gas, c, i);
      CHECK(p.voltage == doctest::Approx(oracle::gc_voltage(gas, c, i)).epsilon(1e-12));
      CHECK(p.voltage == doctest::Approx(terminal_voltage(gas, p.current)).epsilon(1e-12));
      const double bypass = c.has_bypass() ? p.voltage / rl : 0.0;
      CHECK(p.current == doctest::Approx(i + bypass).epsilon(1e-15));
    }
  }
}

TEST_CASE("open circuit") {
  const FuelCellModel cell = pcb_cell();
  const GalvanicCellSpec gas;
  const CircuitSpec c;
  const LoadSegment open{1.0, LoadMode::Open, 0.0};
  const OperatingPoint op = solve_operating_point(cell, gas, c, open, c.full_plenum_moles());
  CHECK(op.i_fc == 0.0);
  CHECK(op.i_gc == 0.0);
  CHECK(op.i_diode == 0.0);
  CHECK(op.v_fc == doctest::Approx(cell_voltage(cell.params, 0.0)));
  check_consistent(op, cell, gas, c, open);

  CircuitSpec with_rl;
  with_rl.bypass_resistance = 400.0;
  const OperatingPoint trickle =
      solve_operating_point(cell, gas, with_rl, open, with_rl.full_plenum_moles());
  CHECK(trickle.i_gc == doctest::Approx(trickle.v_gc / 400.0));
  CHECK(trickle.i_gc > 0.0);
  check_consistent(trickle, cell, gas, with_rl, open);
}

TEST_CASE("empty plenum puts the load on the diode") {
  const FuelCellModel cell = pcb_cell();
  const GalvanicCellSpec gas;
  CircuitSpec c;
  c.bypass_resistance = 400.0;
  for (const LoadSegment load : {LoadSegment{1.0, LoadMode::ConstantCurrent, 0.01},
                                 LoadSegment{1.0, LoadMode::ConstantResistance, 2.0},
                                 LoadSegment{1.0, LoadMode::ConstantPower, 0.0005}}) {
    CAPTURE(to_string(load.mode));
    const OperatingPoint op = solve_operating_point(cell, gas, c, load, 0.0);
    CHECK(op.starved);
    CHECK(op.diode_conducting);
    CHECK(op.i_fc == 0.0);
    CHECK(op.v_fc == doctest::Approx(-c.diode_forward_drop));
    CHECK(op.i_diode == doctest::Approx(op.i_load));
    CHECK(op.i_gc == doctest::Approx(op.i_load + op.v_gc / 400.0));
    CHECK(op.i_gc > 0.0);
    check_consistent(op, cell, gas, c, load);
    CHECK(circuit_residuals(op, cell, gas, c, load).load < 1e-9);
  }
}

TEST_CASE("starved point with zero current keeps the diode blocked") {
  const FuelCellModel cell = pcb_cell();
  const GalvanicCellSpec gas;
  const CircuitSpec c;
  for (const LoadSegment load : {LoadSegment{1.0, LoadMode::Open, 0.0},
                                 LoadSegment{1.0, LoadMode::ConstantCurrent, 0.0}}) {
    const OperatingPoint op = solve_operating_point(cell, gas, c, load, 0.0);
    CHECK(op.starved);
    CHECK_FALSE(op.diode_conducting);
    CHECK(op.i_diode == 0.0);
    check_consistent(op, cell, gas, c, load);
  }
}

TEST_CASE("constant current without R_L draws i_gc = i_fc") {
  const FuelCellModel cell = pcb_cell();
  const GalvanicCellSpec gas;
  const CircuitSpec c;
  const LoadSegment load{1.0, LoadMode::ConstantCurrent, 0.02};
  const OperatingPoint op = solve_operating_point(cell, gas, c, load, c.full_plenum_moles());
  CHECK(op.i_gc == op.i_fc);
  CHECK(op.i_fc == 0.02);
  CHECK(op.v_system == doctest::Approx(op.v_fc + op.v_gc));
  check_consistent(op, cell, gas, c, load);
}

TEST_CASE("power above the maximum is infeasible") {
  const FuelCellModel cell = pcb_cell();
  const GalvanicCellSpec gas;
  const CircuitSpec c;
  const double pmax = max_deliverable_power(cell, gas, c);
  CHECK(pmax > 0.0);
  const LoadSegment ok{1.0, LoadMode::ConstantPower, 0.999 * pmax};
  CHECK_NOTHROW(solve_operating_point(cell, gas, c, ok, c.full_plenum_moles()));
  const LoadSegment too_much{1.0, LoadMode::ConstantPower, 1.01 * pmax};
  try {
    solve_operating_point(cell, gas, c, too_much, c.full_plenum_moles());
    FAIL("expected InfeasibleError");
  } catch (const InfeasibleError& e) {
    CHECK(e.limit() == doctest::Approx(pmax).epsilon(1e-9));
  }
}

TEST_CASE("plenum bookkeeping") {
  CircuitSpec c;
  const double full = c.full_plenum_moles();
  CHECK(c.plenum_pressure(full) == doctest::Approx(c.ambient_pressure));
  CHECK(c.starvation_moles() == doctest::Approx(0.5 * full));
  CHECK(full == doctest::Approx(101325.0 * 1e-7 / (8.314 * 298.15)));
  c.diode_forward_drop = 1.2;
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c = {};
  c.bypass_resistance = 0.0;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}

TEST_CASE("load mode tags") {
  for (auto m : {LoadMode::ConstantCurrent, LoadMode::ConstantPower, LoadMode::ConstantResistance,
                 LoadMode::Open}) {
    CHECK(load_mode_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(load_mode_from_string("pulse"), ValidationError);
}
