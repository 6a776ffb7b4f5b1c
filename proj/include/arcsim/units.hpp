#pragma once

#include <numbers>

// Conversions between file/CLI units (mm, mm/min, m/min, ms, degrees) and
// the SI units used everywhere inside the library.
namespace arcsim::units {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double mm_to_m(double mm) { return mm / 1000.0; }
constexpr double m_to_mm(double m) { return m * 1000.0; }
constexpr double m_to_um(double m) { return m * 1e6; }

constexpr double mm_min_to_m_s(double v) { return v / 60000.0; }
constexpr double m_s_to_mm_min(double v) { return v * 60000.0; }
constexpr double m_min_to_m_s(double v) { return v / 60.0; }
constexpr double m_s_to_m_min(double v) { return v * 60.0; }

constexpr double ms_to_s(double t) { return t / 1000.0; }
constexpr double s_to_ms(double t) { return t * 1000.0; }

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace arcsim::units
