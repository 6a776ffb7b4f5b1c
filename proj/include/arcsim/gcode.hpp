#pragma once

#include <string_view>

#include "arcsim/toolpath.hpp"

namespace arcsim {

struct GcodeOptions {
  Point2 start;  // tool position before the first block, m
  double position_tolerance = kPositionTolerance;
  double tangent_tolerance = kTangentTolerance;
};

// Restricted dialect: G17 (XY plane), G21 (mm), G90 (absolute), G94 and
// circular moves G2/G3 with X Y I J F words; N line numbers and comments in
// parentheses or after ';' are skipped. Units are mm and mm/min; G2/G3 and F
// are modal. Anything else is rejected with its line number, and the result
// must satisfy the toolpath continuity rules.
Toolpath parse_gcode(std::string_view text, const GcodeOptions& options = {});

}  // namespace arcsim
