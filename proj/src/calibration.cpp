#include "microcell/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "microcell/errors.hpp"
#include "microcell/units.hpp"

namespace microcell {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kResidualChangeTol = 1e-10;

// Free parameters, scaled to order one: E [V], b [10 mV], r_mea [100 mOhm cm^2], m [10 mV].
using Vec4 = Eigen::Matrix<double, 4, 1>;
using Mat4 = Eigen::Matrix<double, 4, 4>;

const Vec4 kScale = (Vec4() << 1.0, 1e-2, units::mohm_cm2_to_ohm_m2(100.0), 1e-2).finished();
const Vec4 kLower = (Vec4() << 0.05, 1e-5, 0.0, 0.0).finished();
const Vec4 kUpper =
    (Vec4() << kConstants.reference_voltage, 20.0, std::numeric_limits<double>::infinity(),
     100.0).finished();

Vec4 to_vector(const PolarizationParams& p) {
  Vec4 x;
  x << p.open_circuit_voltage, p.tafel_slope, p.mea_resistance, p.mass_transport_m;
  return x.cwiseQuotient(kScale);
}

PolarizationParams from_vector(const Vec4& x, const PolarizationParams& base) {
  const Vec4 v = x.cwiseProduct(kScale);
  PolarizationParams p = base;
  p.open_circuit_voltage = v(0);
  p.tafel_slope = v(1);
  p.mea_resistance = v(2);
  p.mass_transport_m = v(3);
  return p;
}

Vec4 project(const Vec4& x) { return x.cwiseMax(kLower).cwiseMin(kUpper); }

// Residual vector, or nullopt-like NaN marker when the curve has no interior
// efficiency or power maximum.
Vec4 evaluate(const Vec4& x, const PolarizationParams& base, const CalibrationTargets& t) {
  try {
    const AnchorResiduals r = anchor_residuals(from_vector(x, base), t);
    return Vec4(r[0], r[1], r[2], r[3]);
  } catch (const ValidationError&) {
    return Vec4::Constant(std::numeric_limits<double>::quiet_NaN());
  }
}

double max_abs(const Vec4& r) { return r.cwiseAbs().maxCoeff(); }

}  // namespace

void CalibrationTargets::validate() const {
  if (!(open_circuit_voltage > 0.0 && open_circuit_voltage <= v_ref)) {
    throw ValidationError("OCV target must lie in (0, v_ref]");
  }
  if (!(max_efficiency > 0.0 && max_efficiency < 1.0)) {
    throw ValidationError("max efficiency target must lie in (0, 1)");
  }
  if (!(power_at_max_efficiency > 0.0)) throw ValidationError("power anchor must be positive");
  if (!(peak_power_min > 0.0 && peak_power_max >= peak_power_min)) {
    throw ValidationError("peak power window must be positive and ordered");
  }
  if (!(leakage_current_density >= 0.0)) throw ValidationError("leakage must be non-negative");
  if (!(exchange_current_density > 0.0 && mass_transport_n >= 0.0 &&
        limiting_current_density > 0.0)) {
    throw ValidationError("held polarization parameters are invalid");
  }
  if (!(tolerance > 0.0)) throw ValidationError("tolerance must be positive");
}

PolarizationParams initial_guess(const CalibrationTargets& t) {
  PolarizationParams p;
  p.open_circuit_voltage = 0.8;
  p.tafel_slope = 0.008;
  p.mea_resistance = units::mohm_cm2_to_ohm_m2(100.0);
  p.mass_transport_m = 0.01;
  p.exchange_current_density = t.exchange_current_density;
  p.mass_transport_n = t.mass_transport_n;
  p.leakage_current_density = t.leakage_current_density;
  p.limiting_current_density = t.limiting_current_density;
  return p;
}

AnchorResiduals anchor_residuals(const PolarizationParams& params,
                                 const CalibrationTargets& t) {
  const double ocv = cell_voltage(params, 0.0);
  const CurvePoint best = max_efficiency_point(params, 0.0, t.v_ref);
  const CurvePoint peak = peak_power_point(params, 0.0, t.v_ref);
  return {(ocv - t.open_circuit_voltage) / t.open_circuit_voltage,
          (best.efficiency - t.max_efficiency) / t.max_efficiency,
          (best.power_density - t.power_at_max_efficiency) / t.power_at_max_efficiency,
          (peak.power_density - t.peak_power_target()) / t.peak_power_target()};
}

CalibrationResult calibrate(const CalibrationTargets& targets) {
  targets.validate();
  const PolarizationParams base = initial_guess(targets);

  Vec4 x = to_vector(base);
  Vec4 r = evaluate(x, base, targets);
  if (!r.allFinite()) {
    throw CalibrationError("initial guess has no interior efficiency maximum",
                           {base, {}, std::numeric_limits<double>::infinity(), 0});
  }
  double norm = r.norm();
  double lambda = 1e-3;
  int iteration = 0;

  for (; iteration < kMaxIterations && max_abs(r) > targets.tolerance * 1e-3; ++iteration) {
    Eigen::Matrix<double, 4, 4> jac;
    for (int j = 0; j < 4; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(x(j)));
      Vec4 xp = x;
      Vec4 xm = x;
      xp(j) += h;
      xm(j) -= h;
      const Vec4 rp = evaluate(xp, base, targets);
      const Vec4 rm = evaluate(xm, base, targets);
      jac.col(j) = (rp.allFinite() && rm.allFinite()) ? Vec4((rp - rm) / (2.0 * h))
                                                      : Vec4::Zero();
    }
    const Mat4 jtj = jac.transpose() * jac;
    const Vec4 gradient = jac.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 30 && !accepted; ++attempt) {
      Mat4 damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Vec4 step = damped.ldlt().solve(-gradient);
      const Vec4 candidate = project(x + step);
      const Vec4 rc = evaluate(candidate, base, targets);
      if (rc.allFinite() && rc.norm() < norm) {
        const double change = norm - rc.norm();
        x = candidate;
        r = rc;
        norm = rc.norm();
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (change < kResidualChangeTol) iteration = kMaxIterations;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) break;
  }

  CalibrationResult result;
  result.params = from_vector(x, base);
  const AnchorResiduals final_residuals = anchor_residuals(result.params, targets);
  result.residuals = final_residuals;
  result.residual = 0.0;
  for (double v : final_residuals) result.residual = std::max(result.residual, std::abs(v));
  result.iterations = std::min(iteration, kMaxIterations);
  if (result.residual > targets.tolerance) {
    throw CalibrationError("calibration did not meet the anchors (max relative residual " +
                               std::to_string(result.residual) + ")",
                           result);
  }
  return result;
}

}  // namespace microcell
