#pragma once

// Conversions between the practical units used in configs, tables and CSV
// files and the SI units used internally. Internal values are always SI:
// m, m^2, ohm*m, ohm*m^2, A, A/m^2, C, mol, s, V, W, J.

namespace microcell::units {

// length
constexpr double um_to_m(double v) { return v * 1e-6; }
constexpr double m_to_um(double v) { return v * 1e6; }
constexpr double cm_to_m(double v) { return v * 1e-2; }
constexpr double m_to_cm(double v) { return v * 1e2; }

// area
constexpr double cm2_to_m2(double v) { return v * 1e-4; }
constexpr double m2_to_cm2(double v) { return v * 1e4; }
constexpr double mm2_to_m2(double v) { return v * 1e-6; }
constexpr double m2_to_mm2(double v) { return v * 1e6; }

// volume
constexpr double cm3_to_m3(double v) { return v * 1e-6; }
constexpr double m3_to_cm3(double v) { return v * 1e6; }

// resistivity
constexpr double mohm_cm_to_ohm_m(double v) { return v * 1e-5; }
constexpr double ohm_m_to_mohm_cm(double v) { return v * 1e5; }
constexpr double ohm_cm_to_ohm_m(double v) { return v * 1e-2; }
constexpr double ohm_m_to_ohm_cm(double v) { return v * 1e2; }

// area-specific resistance
constexpr double mohm_cm2_to_ohm_m2(double v) { return v * 1e-7; }
constexpr double ohm_m2_to_mohm_cm2(double v) { return v * 1e7; }

// current density
constexpr double mA_cm2_to_A_m2(double v) { return v * 10.0; }
constexpr double A_m2_to_mA_cm2(double v) { return v * 0.1; }

// inverse current density (mass-transport exponent)
constexpr double cm2_mA_to_m2_A(double v) { return v * 0.1; }
constexpr double m2_A_to_cm2_mA(double v) { return v * 10.0; }

// power density
constexpr double mW_cm2_to_W_m2(double v) { return v * 10.0; }
constexpr double W_m2_to_mW_cm2(double v) { return v * 0.1; }

// current, power, charge, time
constexpr double mA_to_A(double v) { return v * 1e-3; }
constexpr double A_to_mA(double v) { return v * 1e3; }
constexpr double mW_to_W(double v) { return v * 1e-3; }
constexpr double W_to_mW(double v) { return v * 1e3; }
constexpr double mAh_to_C(double v) { return v * 3.6; }
constexpr double C_to_mAh(double v) { return v / 3.6; }
constexpr double ms_to_s(double v) { return v * 1e-3; }
constexpr double s_to_ms(double v) { return v * 1e3; }

}  // namespace microcell::units
