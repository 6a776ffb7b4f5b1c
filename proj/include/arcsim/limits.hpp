#pragma once

#include <string_view>

#include "arcsim/machine.hpp"
#include "arcsim/toolpath.hpp"

namespace arcsim {

// Feed-rate limitations of circular interpolation. Angle-dependent limits take
// the angular position alpha_c in the convention of toolpath.hpp; a term whose
// direction cosine vanishes is unconstrained.

// Tangential speed allowed by the axis feed capacities.
double axis_feed_limit(double alpha_c, const PlanarCapacity& caps);
// Normal acceleration the axes can deliver at alpha_c.
double normal_accel_limit(double alpha_c, const PlanarCapacity& caps);
// Tangential jerk the axes can deliver at alpha_c.
double tangential_jerk_limit(double alpha_c, const PlanarCapacity& caps);

// Steady feed whose centripetal acceleration v^2/r equals a_n.
double feed_from_accel(double a_n, double r);
// Steady feed whose jerk v^3/r^2 equals j_t.
double feed_from_jerk(double j_t, double r);

struct StaticLookahead {
  double v_t = 0.0;
  double v_an = 0.0;
  double v_jt = 0.0;
  double v_s = 0.0;  // min of the three
};

StaticLookahead static_lookahead_terms(double alpha_c, double r, const PlanarCapacity& caps);
inline double static_lookahead(double alpha_c, double r, const PlanarCapacity& caps) {
  return static_lookahead_terms(alpha_c, r, caps).v_s;
}

// Feed at which the block takes exactly one interpolation cycle.
double cycle_time_limit(double r, double alpha_s, double alpha_e, double t_cy);

// Tangential jerk allowed by the NCU curvilinear jerk setting.
double ncu_tangential_jerk(const NcuSettings& ncu);

enum class LimitTerm { kProgrammed, kNcuJerk, kCycleTime, kAxisJerk, kAxisAccel, kAxisFeed };
std::string_view to_string(LimitTerm term);

struct LimitBreakdown {
  double v_t = 0.0;
  double v_an = 0.0;
  double v_jt = 0.0;
  double v_jtcurv = 0.0;
  double v_tcy = 0.0;
  double v_prog = 0.0;
  double v_st = 0.0;
  LimitTerm binding = LimitTerm::kProgrammed;
  double alpha_eval = 0.0;  // normalized to [0, 2pi)
  int iterations = 0;
  // No position on the block sustains the target feed; the axis terms were
  // taken as their minimum over the whole arc instead.
  bool conservative = false;
};

// Feed-rate set point of one block.
//
// The axis terms are evaluated at the angular position where the feed
// becomes constant: the first position along the block, in the direction of
// travel, at which the candidate feed v can be held in steady state
// (axis jerk >= v^3/r^2, normal acceleration >= v^2/r, axis feed >= v). The
// candidate starts at min(Vprog, VJtcurv, Vtcy) and is replaced by the set
// point found at that position until it changes by less than 1e-6 m/s
// (at most 10 rounds).
LimitBreakdown feed_setpoint(const ArcBlock& block, const PlanarCapacity& caps,
                             const NcuSettings& ncu);

}  // namespace arcsim
