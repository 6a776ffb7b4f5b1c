#include "arcsim/gcode.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "arcsim/error.hpp"
#include "arcsim/units.hpp"

namespace arcsim {
namespace {

struct Word {
  char letter;
  double value;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw ValidationError(fmt::format("G-code line {}: {}", line, what));
}

std::vector<Word> tokenize(std::string_view line, int line_no) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == ';') break;
    if (c == '(') {
      const auto close = line.find(')', i);
      if (close == std::string_view::npos) fail(line_no, "unterminated comment");
      i = close + 1;
      continue;
    }
    if (c == '%') {
      ++i;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) {
      fail(line_no, fmt::format("unexpected character '{}'", c));
    }
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    ++i;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t end = i;
    while (end < line.size() &&
           (std::isdigit(static_cast<unsigned char>(line[end])) || line[end] == '.' ||
            line[end] == '-' || line[end] == '+')) {
      ++end;
    }
    std::string number(line.substr(i, end - i));
    if (!number.empty() && number.front() == '+') number.erase(0, 1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (number.empty() || ec != std::errc() || ptr != number.data() + number.size()) {
      fail(line_no, fmt::format("word {} has no valid number", letter));
    }
    words.push_back({letter, value});
    i = end;
  }
  return words;
}

}  // namespace

Toolpath parse_gcode(std::string_view text, const GcodeOptions& options) {
  Toolpath path;
  std::optional<Direction> motion;
  std::optional<double> feed;
  Point2 position = options.start;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto words = tokenize(line, line_no);
    std::optional<double> x, y;
    double i_off = 0.0;
    double j_off = 0.0;
    bool has_center = false;
    for (const Word& w : words) {
      switch (w.letter) {
        case 'G': {
          const double g = w.value;
          if (g == 2.0) {
            motion = Direction::kCw;
          } else if (g == 3.0) {
            motion = Direction::kCcw;
          } else if (g == 17.0 || g == 21.0 || g == 90.0 || g == 94.0) {
            // Already the only supported modes.
          } else if (g == 0.0 || g == 1.0) {
            fail(line_no, fmt::format("linear move G{} is not supported (arcs only)", g));
          } else {
            fail(line_no, fmt::format("unsupported word G{}", g));
          }
          break;
        }
        case 'X': x = units::mm_to_m(w.value); break;
        case 'Y': y = units::mm_to_m(w.value); break;
        case 'I': i_off = units::mm_to_m(w.value); has_center = true; break;
        case 'J': j_off = units::mm_to_m(w.value); has_center = true; break;
        case 'F':
          if (!(w.value > 0.0)) fail(line_no, "feed F must be > 0");
          feed = units::mm_min_to_m_s(w.value);
          break;
        case 'N': break;
        default:
          fail(line_no, fmt::format("unsupported word {}{}", w.letter, w.value));
      }
    }

    const bool moves = x || y || has_center;
    if (!moves) continue;
    if (!motion) fail(line_no, "coordinates without an active G2/G3 motion mode");
    if (!has_center) fail(line_no, "arc needs an I/J centre offset");
    if (!feed) fail(line_no, "no feed rate programmed (F)");

    const Point2 start = position;
    const Point2 end{x.value_or(position.x), y.value_or(position.y)};
    const Point2 center{start.x + i_off, start.y + j_off};
    const double r = norm(start - center);
    if (!(r > 0.0)) fail(line_no, "arc radius is zero");
    const double r_end = norm(end - center);
    if (std::abs(r_end - r) > options.position_tolerance) {
      fail(line_no, fmt::format("end point is {:.6g} mm off the arc", units::m_to_mm(r_end - r)));
    }

    const double a0 = angle_of(center, start);
    const double a1 = angle_of(center, end);
    const double s = sign(*motion);
    double sweep = normalize_angle(s * (a1 - a0));
    if (norm(end - start) <= options.position_tolerance || sweep == 0.0) {
      sweep = units::kTwoPi;
    }
    ArcBlock block{center, r, a0, a0 + s * sweep, *motion, *feed};
    path.blocks.push_back(block);
    position = end;
  }

  if (path.blocks.empty()) throw ValidationError("G-code contains no arc moves");

  for (std::size_t i = 1; i < path.blocks.size(); ++i) {
    const ArcBlock& prev = path.blocks[i - 1];
    const ArcBlock& next = path.blocks[i];
    const Point2 t0 = prev.tangent_at(prev.alpha_end);
    const Point2 t1 = next.tangent_at(next.alpha_start);
    const double gap = std::abs(std::atan2(t0.x * t1.y - t0.y * t1.x, t0.x * t1.x + t0.y * t1.y));
    if (gap > options.tangent_tolerance) {
      throw ValidationError(fmt::format("tangency violation at block {}: tangent jump {:.6g} deg",
                                        i, units::rad_to_deg(gap)));
    }
  }
  for (const auto& v : validate(path)) {
    if (v.kind == Violation::Kind::kPosition &&
        v.magnitude <= options.position_tolerance) {
      continue;
    }
    if (v.kind == Violation::Kind::kTangent) continue;  // checked above
    throw ValidationError(v.message);
  }
  return path;
}

}  // namespace arcsim
