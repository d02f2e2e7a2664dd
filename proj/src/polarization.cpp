#include "microcell/polarization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "microcell/errors.hpp"

namespace microcell {

namespace {

// Unclamped model voltage.
double raw_voltage(const PolarizationParams& p, double i, double r_s) {
  const double activation =
      std::max(0.0, p.tafel_slope * std::log((i + p.leakage_current_density) /
                                             p.exchange_current_density));
  return p.open_circuit_voltage - activation - (p.mea_resistance + r_s) * i -
         p.mass_transport_m * std::exp(p.mass_transport_n * i);
}

void check_current(const PolarizationParams& p, double i) {
  if (!(i >= 0.0)) throw ValidationError("current density must be non-negative");
  if (!(i < p.limiting_current_density)) {
    throw OutOfRangeError("current density at or beyond the limiting current density");
  }
}

double safe_ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

// Sign change of `g` from positive to non-positive on (lo, hi), located by a
// geometric scan followed by bisection to machine precision. Returns `lo`
// when g is never positive and the last scan point when it never turns.
double first_descent_root(const std::function<double(double)>& g, double lo, double hi) {
  constexpr std::size_t kScan = 4000;
  const double ratio = std::pow(hi / lo, 1.0 / static_cast<double>(kScan - 1));
  double prev_x = lo;
  if (!(g(lo) > 0.0)) return lo;
  double x = lo;
  for (std::size_t k = 1; k < kScan; ++k) {
    x = (k + 1 == kScan) ? hi : lo * std::pow(ratio, static_cast<double>(k));
    if (!(g(x) > 0.0)) {
      double a = prev_x;
      double b = x;
      for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b;
           ++it) {
        const double mid = 0.5 * (a + b);
        if (g(mid) > 0.0) a = mid; else b = mid;
      }
      return 0.5 * (a + b);
    }
    prev_x = x;
  }
  return hi;
}

CurvePoint make_point(const PolarizationParams& p, double i, double r_s, double v_ref) {
  const EfficiencyResult e = efficiency(p, i, r_s, v_ref);
  return {i, e.voltage_efficiency * v_ref, e.power_density, e.total};
}

}  // namespace

void PolarizationParams::validate() const {
  if (!(open_circuit_voltage > 0.0 && open_circuit_voltage <= kConstants.reference_voltage)) {
    throw ValidationError("open_circuit_voltage must lie in (0, 1.23] V");
  }
  if (!(tafel_slope > 0.0)) throw ValidationError("tafel_slope must be positive");
  if (!(exchange_current_density > 0.0)) {
    throw ValidationError("exchange_current_density must be positive");
  }
  if (!(limiting_current_density > 0.0)) {
    throw ValidationError("limiting_current_density must be positive");
  }
  if (!(leakage_current_density >= 0.0)) {
    throw ValidationError("leakage_current_density must be non-negative");
  }
  if (!(mass_transport_m >= 0.0) || !(mass_transport_n >= 0.0)) {
    throw ValidationError("mass transport coefficients must be non-negative");
  }
  if (!(mea_resistance >= 0.0)) throw ValidationError("mea_resistance must be non-negative");
}

PolarizationParams PolarizationParams::with_leakage(double leakage) const {
  PolarizationParams p = *this;
  p.leakage_current_density = leakage;
  return p;
}

double cell_voltage(const PolarizationParams& params, double i, double r_s) {
  check_current(params, i);
  return std::max(0.0, raw_voltage(params, i, r_s));
}

double cell_voltage_slope(const PolarizationParams& params, double i, double r_s) {
  check_current(params, i);
  if (raw_voltage(params, i, r_s) <= 0.0) return 0.0;
  const double arg = i + params.leakage_current_density;
  const double activation =
      arg > params.exchange_current_density ? params.tafel_slope / arg : 0.0;
  return -activation - (params.mea_resistance + r_s) -
         params.mass_transport_m * params.mass_transport_n *
             std::exp(params.mass_transport_n * i);
}

EfficiencyResult efficiency(const PolarizationParams& params, double i, double r_s,
                            double v_ref) {
  const double v = cell_voltage(params, i, r_s);
  EfficiencyResult r;
  r.voltage_efficiency = v / v_ref;
  r.faraday_efficiency = safe_ratio(i, i + params.leakage_current_density);
  r.total = r.voltage_efficiency * r.faraday_efficiency;
  r.power_density = i * v;
  return r;
}

EfficiencyResult stack_efficiency(const PolarizationParams& params, double i, int n_cells,
                                  double shunt_leak_density, double r_s, double v_ref) {
  if (n_cells < 1) throw ValidationError("n_cells must be at least 1");
  if (!(shunt_leak_density >= 0.0)) throw ValidationError("shunt leakage must be non-negative");
  const double extra = n_cells > 1 ? shunt_leak_density : 0.0;
  // Voltage stays that of the single cell; only the Faraday term sees the shunt.
  EfficiencyResult r = efficiency(params, i, r_s, v_ref);
  r.faraday_efficiency = safe_ratio(i, i + params.leakage_current_density + extra);
  r.total = r.voltage_efficiency * r.faraday_efficiency;
  return r;
}

CurvePoint max_efficiency_point(const PolarizationParams& params, double r_s, double v_ref) {
  const double leak = params.leakage_current_density;
  const double hi = params.limiting_current_density * (1.0 - 1e-12);
  const double lo = params.limiting_current_density * 1e-9;
  // d(eta)/di has the sign of V'(i) i (i + leak) + V(i) leak.
  auto g = [&](double i) {
    return cell_voltage_slope(params, i, r_s) * i * (i + leak) +
           cell_voltage(params, i, r_s) * leak;
  };
  return make_point(params, first_descent_root(g, lo, hi), r_s, v_ref);
}

CurvePoint peak_power_point(const PolarizationParams& params, double r_s, double v_ref) {
  const double hi = params.limiting_current_density * (1.0 - 1e-12);
  const double lo = params.limiting_current_density * 1e-9;
  auto g = [&](double i) {
    return cell_voltage(params, i, r_s) + i * cell_voltage_slope(params, i, r_s);
  };
  return make_point(params, first_descent_root(g, lo, hi), r_s, v_ref);
}

std::vector<CurveFamilyRow> curve_family(const PolarizationParams& params,
                                         const std::vector<double>& r_s_list,
                                         const std::vector<double>& i_grid, double v_ref) {
  if (r_s_list.empty()) throw ValidationError("r_s list must not be empty");
  if (std::find(r_s_list.begin(), r_s_list.end(), 0.0) == r_s_list.end()) {
    throw ValidationError("r_s list must include 0 as the reference curve");
  }
  std::vector<CurveFamilyRow> rows;
  rows.reserve(r_s_list.size() * i_grid.size());
  for (double r_s : r_s_list) {
    for (double i : i_grid) {
      const CurvePoint pt = make_point(params, i, r_s, v_ref);
      const double reference = i * cell_voltage(params, i, 0.0);
      const double loss = reference > 0.0 ? 1.0 - pt.power_density / reference : 0.0;
      rows.push_back({r_s, pt, r_s == 0.0 ? 0.0 : loss});
    }
  }
  return rows;
}

std::vector<LeakageRow> efficiency_vs_leakage(const PolarizationParams& params,
                                              const std::vector<double>& leak_list,
                                              const std::vector<double>& i_grid,
                                              double v_ref) {
  std::vector<LeakageRow> rows;
  rows.reserve(leak_list.size() * i_grid.size());
  for (double leak : leak_list) {
    if (!(leak >= 0.0)) throw ValidationError("leakage must be non-negative");
    // Voltage curve held fixed; leakage only moves the Faraday factor.
    for (double i : i_grid) {
      const double v = cell_voltage(params, i, 0.0);
      rows.push_back({leak, i, v / v_ref * safe_ratio(i, i + leak)});
    }
  }
  return rows;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo + step * static_cast<double>(k);
  out.back() = hi;
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw ValidationError("log grid bounds must be positive");
  if (count == 0) return {};
  if (count == 1) return {lo};
  std::vector<double> out(count);
  const double ratio = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t k = 0; k < count; ++k) out[k] = lo * std::exp(ratio * static_cast<double>(k));
  out.back() = hi;
  return out;
}

}  // namespace microcell
