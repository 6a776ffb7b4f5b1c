#include "arcsim/machine.hpp"

#include <cmath>
#include <fstream>
#include <optional>

#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/units.hpp"

namespace arcsim {
namespace {

using nlohmann::json;

double required_number(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(where + ": missing field \"" + key + "\"");
  }
  if (!it->is_number()) {
    throw ValidationError(where + ": field \"" + key + "\" must be a number");
  }
  return it->get<double>();
}

// Finds a file-unit value f close to si*scale such that f / scale == si
// exactly, so that load(save(p)) reproduces p bit for bit.
double exact_file_value(double si, double scale) {
  const double guess = si * scale;
  if (guess / scale == si) return guess;
  double up = guess;
  double down = guess;
  for (int i = 0; i < 64; ++i) {
    up = std::nextafter(up, INFINITY);
    if (up / scale == si) return up;
    down = std::nextafter(down, -INFINITY);
    if (down / scale == si) return down;
  }
  return guess;
}

void require_positive(double value, const std::string& field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError("invalid machine parameter " + field + ": must be > 0");
  }
}

}  // namespace

const AxisCapacity& MachineParameters::axis(std::string_view name) const {
  for (const auto& a : axes) {
    if (a.name == name) return a;
  }
  throw ValidationError("machine has no axis " + std::string(name));
}

PlanarCapacity planar(const MachineParameters& machine) {
  return PlanarCapacity{machine.x(), machine.y()};
}

void validate(const MachineParameters& machine) {
  for (const auto& a : machine.axes) {
    require_positive(a.v_max, a.name + ".v_max");
    require_positive(a.a_max, a.name + ".a_max");
    require_positive(a.j_max, a.name + ".j_max");
  }
  machine.x();
  machine.y();

  const auto& ncu = machine.ncu;
  require_positive(ncu.j_curv, "ncu.j_curv");
  if (!(ncu.r_jct > 0.0 && ncu.r_jct <= 1.0)) {
    throw ValidationError("invalid machine parameter ncu.r_jct: must be in (0, 1]");
  }
  if (!(ncu.r_jcc >= 0.0 && ncu.r_jcc <= 1.0)) {
    throw ValidationError("invalid machine parameter ncu.r_jcc: must be in [0, 1]");
  }
  require_positive(ncu.t_cy, "ncu.t_cy");
  require_positive(ncu.delta_t, "ncu.delta_t");
}

MachineParameters machine_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("machine file: top level must be an object");
  auto axes_it = doc.find("axes");
  if (axes_it == doc.end() || !axes_it->is_array()) {
    throw ValidationError("machine file: missing array \"axes\"");
  }
  MachineParameters m;
  for (std::size_t i = 0; i < axes_it->size(); ++i) {
    const json& a = (*axes_it)[i];
    const std::string where = "axes[" + std::to_string(i) + "]";
    if (!a.is_object()) throw ValidationError(where + ": must be an object");
    auto name_it = a.find("name");
    if (name_it == a.end() || !name_it->is_string()) {
      throw ValidationError(where + ": missing string field \"name\"");
    }
    AxisCapacity cap;
    cap.name = name_it->get<std::string>();
    cap.v_max = units::mm_min_to_m_s(required_number(a, "vmax_mm_min", where));
    cap.a_max = required_number(a, "amax_m_s2", where);
    cap.j_max = required_number(a, "jmax_m_s3", where);
    m.axes.push_back(std::move(cap));
  }

  auto ncu_it = doc.find("ncu");
  if (ncu_it == doc.end() || !ncu_it->is_object()) {
    throw ValidationError("machine file: missing object \"ncu\"");
  }
  const json& n = *ncu_it;
  m.ncu.j_curv = required_number(n, "jcurv_m_s3", "ncu");
  m.ncu.r_jct = required_number(n, "rjct", "ncu");
  m.ncu.r_jcc = n.contains("rjcc") ? required_number(n, "rjcc", "ncu") : 0.0;
  m.ncu.t_cy = units::ms_to_s(required_number(n, "tcy_ms", "ncu"));
  m.ncu.delta_t = n.contains("dt_ms") ? units::ms_to_s(required_number(n, "dt_ms", "ncu"))
                                      : m.ncu.t_cy;

  for (const char* axis : {"X", "Y"}) {
    bool found = false;
    for (const auto& a : m.axes) found = found || a.name == axis;
    if (!found) throw ValidationError(std::string("machine file: axis ") + axis + " is required");
  }
  validate(m);
  return m;
}

json machine_to_json(const MachineParameters& machine) {
  json axes = json::array();
  for (const auto& a : machine.axes) {
    axes.push_back({{"name", a.name},
                    {"vmax_mm_min", exact_file_value(a.v_max, 60000.0)},
                    {"amax_m_s2", a.a_max},
                    {"jmax_m_s3", a.j_max}});
  }
  const auto& n = machine.ncu;
  return {{"axes", axes},
          {"ncu",
           {{"jcurv_m_s3", n.j_curv},
            {"rjct", n.r_jct},
            {"rjcc", n.r_jcc},
            {"tcy_ms", exact_file_value(n.t_cy, 1000.0)},
            {"dt_ms", exact_file_value(n.delta_t, 1000.0)}}}};
}

MachineParameters load_machine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open machine file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("machine file " + path.string() + ": " + e.what());
  }
  return machine_from_json(doc);
}

void save_machine(const std::filesystem::path& path, const MachineParameters& machine) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write machine file " + path.string());
  out << machine_to_json(machine).dump(2) << '\n';
}

MachineParameters mikron_ucp710() {
  MachineParameters m;
  m.axes = {
      {"X", units::mm_min_to_m_s(30000.0), 2.5, 5.0},
      {"Y", units::mm_min_to_m_s(30000.0), 3.0, 5.0},
      {"Z", units::mm_min_to_m_s(30000.0), 2.1, 50.0},
  };
  m.ncu = {10.0, 0.6, 0.4, 0.012, 0.012};
  return m;
}

}  // namespace arcsim
