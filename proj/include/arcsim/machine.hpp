#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace arcsim {

// Kinematic capacity of one machine axis, SI units.
struct AxisCapacity {
  std::string name;
  double v_max = 0.0;  // m/s
  double a_max = 0.0;  // m/s^2
  double j_max = 0.0;  // m/s^3

  bool operator==(const AxisCapacity&) const = default;
};

// Numerical-control-unit settings that shape the feed law.
struct NcuSettings {
  double j_curv = 0.0;   // curvilinear jerk, m/s^3
  double r_jct = 0.0;    // share of j_curv allowed as tangential jerk
  double r_jcc = 0.0;    // share allowed as central jerk (stored, unused)
  double t_cy = 0.0;     // interpolation cycle time, s
  double delta_t = 0.0;  // curvature-discontinuity crossing time, s

  bool operator==(const NcuSettings&) const = default;
};

struct MachineParameters {
  std::vector<AxisCapacity> axes;
  NcuSettings ncu;

  const AxisCapacity& axis(std::string_view name) const;
  const AxisCapacity& x() const { return axis("X"); }
  const AxisCapacity& y() const { return axis("Y"); }

  bool operator==(const MachineParameters&) const = default;
};

// The X/Y pair that planar circular interpolation actually uses.
struct PlanarCapacity {
  AxisCapacity x;
  AxisCapacity y;
};

PlanarCapacity planar(const MachineParameters& machine);

// Throws ValidationError naming the first offending field.
void validate(const MachineParameters& machine);

// File schema: speeds in mm/min, accelerations m/s^2, jerks m/s^3, times ms.
// A missing "dt_ms" defaults to the interpolation cycle time.
MachineParameters machine_from_json(const nlohmann::json& doc);
nlohmann::json machine_to_json(const MachineParameters& machine);

MachineParameters load_machine(const std::filesystem::path& path);
void save_machine(const std::filesystem::path& path, const MachineParameters& machine);

// MIKRON UCP 710 with a SIEMENS 840D: the reference HSM centre.
MachineParameters mikron_ucp710();

}  // namespace arcsim
