#pragma once

#include <array>
#include <vector>

#include "arcsim/machine.hpp"
#include "arcsim/toolpath.hpp"

namespace arcsim {

// Jerk-limited speed change with a triangular tangential-acceleration
// profile: jerk +j for half the ramp, -j for the other half.
double ramp_duration(double v0, double v1, double j);
// Distance covered by that ramp: (v0 + v1) * sqrt(|v1 - v0| / j).
double ramp_distance(double v0, double v1, double j);
// Highest speed reachable from v_from within `length` of ramping.
double max_reachable_speed(double v_from, double length, double j);

// Peak feed of a block of length arc_len entered at v_start and left at
// v_end: the root V of
//   (V + v_end) sqrt((V - v_end)/j) + (V + v_start) sqrt((V - v_start)/j) = L
// clamped to v_cap (v_cap means a constant-feed phase fits). Throws
// InfeasibleError when even V = max(v_start, v_end) needs more than arc_len.
double solve_peak_feed(double arc_len, double v_start, double v_end, double j, double v_cap);

// Tangential jerk used for the block's ramps: the smallest axis jerk limit
// over the block's angular span, capped by the NCU tangential jerk.
double block_jerk(const ArcBlock& block, const PlanarCapacity& caps, const NcuSettings& ncu);

enum Phase { kPhaseA = 0, kPhaseB = 1, kPhaseC = 2 };

struct BlockPlan {
  double v_entry = 0.0;
  double v_exit = 0.0;
  double v_peak = 0.0;
  double v_st = 0.0;
  double j_used = 0.0;
  bool has_phase_b = false;
  std::array<double, 3> durations{};  // s
  std::array<double, 3> lengths{};    // m
  double peak_tangential_accel = 0.0;
  // The triangular ramp's peak tangential acceleration exceeds the weaker
  // planar axis acceleration. Reported, not re-shaped.
  bool exceeds_axis_accel = false;

  double duration() const { return durations[0] + durations[1] + durations[2]; }
  double length() const { return lengths[0] + lengths[1] + lengths[2]; }
};

BlockPlan plan_block(double arc_len, double v_entry, double v_exit, double v_st, double j_used);
BlockPlan plan_block(const ArcBlock& block, double v_entry, double v_exit, double v_st,
                     const PlanarCapacity& caps, const NcuSettings& ncu);

// Constant-jerk piece of a block's feed law; times relative to block start.
struct JerkSegment {
  double t0 = 0.0;
  double duration = 0.0;
  double jerk = 0.0;
  double a0 = 0.0;
  double v0 = 0.0;
  double s0 = 0.0;
};

struct MotionState {
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;
};

// Non-empty segments of the plan in time order (up to five: A+, A-, B, C-, C+).
std::vector<JerkSegment> jerk_segments(const BlockPlan& plan);
MotionState evaluate(const JerkSegment& seg, double tau);

}  // namespace arcsim
