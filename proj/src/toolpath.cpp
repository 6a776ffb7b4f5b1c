#include "arcsim/toolpath.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/units.hpp"

namespace arcsim {

using units::kPi;
using units::kTwoPi;

double norm(Point2 p) { return std::hypot(p.x, p.y); }

double normalize_angle(double alpha) {
  double a = std::fmod(alpha, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

Point2 radial_unit(double alpha) { return {std::sin(alpha), -std::cos(alpha)}; }

double angle_of(Point2 center, Point2 p) {
  const Point2 d = p - center;
  return normalize_angle(std::atan2(d.x, -d.y));
}

double ArcBlock::span() const { return std::abs(sweep()); }

Point2 ArcBlock::tangent_at(double alpha) const {
  const double s = sign(direction);
  return {s * std::cos(alpha), s * std::sin(alpha)};
}

double Toolpath::length() const {
  double total = 0.0;
  for (const auto& b : blocks) total += b.length();
  return total;
}

std::vector<Violation> validate(const Toolpath& path) {
  using Kind = Violation::Kind;
  std::vector<Violation> out;
  const auto& blocks = path.blocks;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const ArcBlock& b = blocks[i];
    if (!(b.r > 0.0) || !std::isfinite(b.r)) {
      out.push_back({Kind::kRadius, i, b.r, fmt::format("block {}: radius {} m must be > 0", i, b.r)});
    }
    if (!(b.span() > 0.0) || !std::isfinite(b.span())) {
      out.push_back({Kind::kSpan, i, b.span(), fmt::format("block {}: zero angular span", i)});
    } else if ((b.sweep() > 0.0) != (b.direction == Direction::kCcw)) {
      out.push_back({Kind::kDirection, i, b.sweep(),
                     fmt::format("block {}: sweep sign disagrees with direction", i)});
    }
    if (!(b.v_prog > 0.0) || !std::isfinite(b.v_prog)) {
      out.push_back({Kind::kFeed, i, b.v_prog,
                     fmt::format("block {}: programmed feed {} m/s must be > 0", i, b.v_prog)});
    }
  }
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    const ArcBlock& prev = blocks[i - 1];
    const ArcBlock& next = blocks[i];
    const double gap = norm(next.start_point() - prev.end_point());
    if (!(gap <= kPositionTolerance)) {
      out.push_back({Kind::kPosition, i, gap,
                     fmt::format("junction {}->{}: position gap {:.3g} mm", i - 1, i,
                                 units::m_to_mm(gap))});
    }
    const Point2 t0 = prev.tangent_at(prev.alpha_end);
    const Point2 t1 = next.tangent_at(next.alpha_start);
    const double angle = std::abs(std::atan2(t0.x * t1.y - t0.y * t1.x, t0.x * t1.x + t0.y * t1.y));
    if (!(angle <= kTangentTolerance)) {
      out.push_back({Kind::kTangent, i, angle,
                     fmt::format("junction {}->{}: tangent jump {:.6g} deg", i - 1, i,
                                 units::rad_to_deg(angle))});
    }
  }
  return out;
}

void ensure_valid(const Toolpath& path) {
  if (path.blocks.empty()) throw ValidationError("toolpath has no blocks");
  const auto violations = validate(path);
  if (!violations.empty()) throw ValidationError(violations.front().message);
}

Toolpath make_circle(double radius, double feed, Direction dir, double alpha_start,
                     Point2 center) {
  if (!(radius > 0.0)) throw ValidationError("circle radius must be > 0");
  ArcBlock b{center, radius, alpha_start, alpha_start + sign(dir) * kTwoPi, dir, feed};
  Toolpath path{{b}};
  ensure_valid(path);
  return path;
}

Toolpath make_spiral(double r_first, double r_last, double step, double arc_span, double feed,
                     double incline, Direction dir, Point2 center) {
  if (!(r_first > 0.0)) throw ValidationError("spiral first radius must be > 0");
  if (!(step > 0.0)) throw ValidationError("spiral radius step must be > 0");
  if (!(r_last >= r_first)) throw ValidationError("spiral last radius must be >= first radius");
  if (!(arc_span > 0.0)) throw ValidationError("spiral arc span must be > 0");
  const double steps = (r_last - r_first) / step;
  const double count = std::round(steps);
  if (std::abs(steps - count) > 1e-9 * std::max(1.0, steps)) {
    throw ValidationError("spiral radius range is not a whole number of steps");
  }
  const double s = sign(dir);
  Toolpath path;
  Point2 c = center;
  double alpha = incline;
  for (int k = 0; k <= static_cast<int>(count); ++k) {
    const double r = r_first + k * step;
    if (k > 0) {
      // Shift the centre along the junction normal so the tangents agree.
      const double r_prev = path.blocks.back().r;
      c = c + (r_prev - r) * radial_unit(alpha);
    }
    path.blocks.push_back({c, r, alpha, alpha + s * arc_span, dir, feed});
    alpha += s * arc_span;
  }
  ensure_valid(path);
  return path;
}

Toolpath make_bore(double bore_diameter, double tool_diameter, double approach_radius,
                   double feed, double approach_span, double junction_angle, Direction dir,
                   Point2 center) {
  const double r_bore = 0.5 * (bore_diameter - tool_diameter);
  if (!(r_bore > 0.0)) throw ValidationError("bore diameter must exceed tool diameter");
  if (!(approach_radius > 0.0)) throw ValidationError("approach radius must be > 0");
  if (!(approach_span > 0.0)) throw ValidationError("approach span must be > 0");
  const double s = sign(dir);
  const double a = junction_angle;
  const Point2 c_approach = center + (r_bore - approach_radius) * radial_unit(a);
  Toolpath path;
  path.blocks.push_back({c_approach, approach_radius, a - s * approach_span, a, dir, feed});
  path.blocks.push_back({center, r_bore, a, a + s * kTwoPi, dir, feed});
  path.blocks.push_back({c_approach, approach_radius, a, a + s * approach_span, dir, feed});
  ensure_valid(path);
  return path;
}

Toolpath generate_test_path(const TestPathParams& p) {
  switch (p.kind) {
    case PathKind::kCircle:
      return make_circle(p.radius, p.feed, p.direction, 0.0, p.center);
    case PathKind::kSemiSpiral:
      return make_spiral(p.r_first, p.r_last, p.step, kPi, p.feed, p.incline, p.direction,
                         p.center);
    case PathKind::kQuarterSpiral:
      return make_spiral(p.r_first, p.r_last, p.step, 0.5 * kPi, p.feed, p.incline,
                         p.direction, p.center);
    case PathKind::kBore:
      return make_bore(p.bore_diameter, p.tool_diameter, p.approach_radius, p.feed,
                       p.approach_span, p.junction_angle, p.direction, p.center);
  }
  throw ValidationError("unknown test path kind");
}

namespace {

using nlohmann::json;

double number_field(const json& obj, const char* key, std::size_t index) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw ValidationError(fmt::format("toolpath block {}: missing number \"{}\"", index, key));
  }
  return it->get<double>();
}

}  // namespace

Toolpath toolpath_from_json(const json& doc) {
  if (!doc.is_array()) throw ValidationError("toolpath JSON must be an array of blocks");
  Toolpath path;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& e = doc[i];
    if (!e.is_object()) throw ValidationError(fmt::format("toolpath block {}: not an object", i));
    const std::string dir_text = e.value("dir", std::string("ccw"));
    Direction dir;
    if (dir_text == "ccw") {
      dir = Direction::kCcw;
    } else if (dir_text == "cw") {
      dir = Direction::kCw;
    } else {
      throw ValidationError(fmt::format("toolpath block {}: dir must be \"cw\" or \"ccw\"", i));
    }
    const double a_start = units::deg_to_rad(number_field(e, "a_start_deg", i));
    const double a_end = units::deg_to_rad(number_field(e, "a_end_deg", i));
    const double span = std::abs(a_end - a_start);
    const double end = a_start + sign(dir) * span;
    const double mismatch = std::abs(std::remainder(end - a_end, kTwoPi));
    if (mismatch > 1e-9) {
      throw ValidationError(fmt::format(
          "toolpath block {}: a_end_deg is not reachable from a_start_deg going {}", i, dir_text));
    }
    ArcBlock b;
    b.center = {units::mm_to_m(number_field(e, "cx_mm", i)),
                units::mm_to_m(number_field(e, "cy_mm", i))};
    b.r = units::mm_to_m(number_field(e, "r_mm", i));
    b.alpha_start = a_start;
    b.alpha_end = end;
    b.direction = dir;
    b.v_prog = units::mm_min_to_m_s(number_field(e, "feed_mm_min", i));
    path.blocks.push_back(b);
  }
  ensure_valid(path);
  return path;
}

json toolpath_to_json(const Toolpath& path) {
  json out = json::array();
  for (const auto& b : path.blocks) {
    out.push_back({{"cx_mm", units::m_to_mm(b.center.x)},
                   {"cy_mm", units::m_to_mm(b.center.y)},
                   {"r_mm", units::m_to_mm(b.r)},
                   {"a_start_deg", units::rad_to_deg(b.alpha_start)},
                   {"a_end_deg", units::rad_to_deg(b.alpha_end)},
                   {"dir", b.direction == Direction::kCcw ? "ccw" : "cw"},
                   {"feed_mm_min", units::m_s_to_mm_min(b.v_prog)}});
  }
  return out;
}

Toolpath load_toolpath(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open toolpath file " + file.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("toolpath file " + file.string() + ": " + e.what());
  }
  return toolpath_from_json(doc);
}

}  // namespace arcsim
