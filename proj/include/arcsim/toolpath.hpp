#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace arcsim {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 p) { return {k * p.x, k * p.y}; }
double norm(Point2 p);

enum class Direction { kCw, kCcw };

// +1 for CCW (angular position increases), -1 for CW.
inline double sign(Direction d) { return d == Direction::kCcw ? 1.0 : -1.0; }

// Angular position convention used by every limit formula:
//   P(alpha) = C + r * (sin alpha, -cos alpha)
// so the travel tangent is +-(cos alpha, sin alpha) and the normal is
// along (sin alpha, -cos alpha). CCW travel increases alpha.
double normalize_angle(double alpha);  // into [0, 2pi)
Point2 radial_unit(double alpha);
double angle_of(Point2 center, Point2 p);

// One circular block in the XY plane. alpha_end = alpha_start + signed sweep;
// the sweep sign always agrees with direction.
struct ArcBlock {
  Point2 center;
  double r = 0.0;            // m
  double alpha_start = 0.0;  // rad
  double alpha_end = 0.0;    // rad
  Direction direction = Direction::kCcw;
  double v_prog = 0.0;  // m/s

  double sweep() const { return alpha_end - alpha_start; }
  double span() const;
  double length() const { return r * span(); }
  Point2 point_at(double alpha) const { return center + r * radial_unit(alpha); }
  Point2 start_point() const { return point_at(alpha_start); }
  Point2 end_point() const { return point_at(alpha_end); }
  // Unit direction of travel.
  Point2 tangent_at(double alpha) const;
  // Angular position after travelling arc length s from the block start.
  double alpha_at(double s) const { return alpha_start + sign(direction) * s / r; }
};

struct Toolpath {
  std::vector<ArcBlock> blocks;

  double length() const;
};

struct Violation {
  enum class Kind { kRadius, kSpan, kFeed, kDirection, kPosition, kTangent };
  Kind kind;
  std::size_t block;  // offending block; for junctions, the downstream block
  double magnitude;   // gap in m or rad, or the bad value
  std::string message;
};

inline constexpr double kPositionTolerance = 1e-9;  // m
inline constexpr double kTangentTolerance = 1e-9;   // rad

std::vector<Violation> validate(const Toolpath& path);

// Throws ValidationError carrying the first violation.
void ensure_valid(const Toolpath& path);

// ---- test trajectories -------------------------------------------------

enum class PathKind { kCircle, kSemiSpiral, kQuarterSpiral, kBore };

// All lengths in m, angles in rad, feed in m/s.
struct TestPathParams {
  PathKind kind = PathKind::kCircle;
  double feed = 0.1;
  Direction direction = Direction::kCcw;
  Point2 center;
  // circle
  double radius = 0.03;
  // spirals
  double r_first = 0.010;
  double r_last = 0.030;
  double step = 0.005;
  double incline = 0.0;  // rotates every junction angular position
  // bore
  double bore_diameter = 0.080;
  double tool_diameter = 0.020;
  double approach_radius = 0.020;
  double approach_span = 0.5 * 3.14159265358979323846;
  double junction_angle = 0.0;
};

Toolpath generate_test_path(const TestPathParams& params);

Toolpath make_circle(double radius, double feed, Direction dir = Direction::kCcw,
                     double alpha_start = 0.0, Point2 center = {});
// Arcs of increasing radius r_first, r_first + step, ..., r_last joined
// tangentially; each spans `arc_span` (pi for half circles, pi/2 quarters).
Toolpath make_spiral(double r_first, double r_last, double step, double arc_span,
                     double feed, double incline = 0.0, Direction dir = Direction::kCcw,
                     Point2 center = {});
// Approach arc, full bore circle, clearance arc. Junctions sit at
// junction_angle; the bore circle is centred on `center`.
Toolpath make_bore(double bore_diameter, double tool_diameter, double approach_radius,
                   double feed, double approach_span, double junction_angle = 0.0,
                   Direction dir = Direction::kCcw, Point2 center = {});

// ---- JSON --------------------------------------------------------------
// [{"cx_mm":0,"cy_mm":30,"r_mm":30,"a_start_deg":0,"a_end_deg":360,
//   "dir":"ccw","feed_mm_min":6000}, ...]
// The sweep magnitude is |a_end - a_start| and its sign comes from "dir";
// an a_end that disagrees with that (mod 360) is rejected.
Toolpath toolpath_from_json(const nlohmann::json& doc);
nlohmann::json toolpath_to_json(const Toolpath& path);
Toolpath load_toolpath(const std::filesystem::path& path);

}  // namespace arcsim
