#include "arcsim/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "arcsim/error.hpp"
#include "arcsim/limits.hpp"

namespace arcsim {

double ramp_duration(double v0, double v1, double j) {
  return 2.0 * std::sqrt(std::abs(v1 - v0) / j);
}

double ramp_distance(double v0, double v1, double j) {
  return (v0 + v1) * std::sqrt(std::abs(v1 - v0) / j);
}

double max_reachable_speed(double v_from, double length, double j) {
  if (!(length > 0.0)) return v_from;
  double lo = v_from;
  double hi = v_from + std::max(1e-3, std::cbrt(length * length * j));
  while (ramp_distance(v_from, hi, j) < length) hi = 2.0 * hi + 1e-3;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (ramp_distance(v_from, mid, j) <= length ? lo : hi) = mid;
  }
  return lo;
}

double solve_peak_feed(double arc_len, double v_start, double v_end, double j, double v_cap) {
  auto needed = [&](double v) { return ramp_distance(v_start, v, j) + ramp_distance(v, v_end, j); };
  double lo = std::max(v_start, v_end);
  const double slack = 1e-12 * arc_len + 1e-15;
  if (needed(lo) > arc_len + slack) {
    throw InfeasibleError(fmt::format(
        "boundary speeds {:.6g} -> {:.6g} m/s need {:.6g} m of ramp, block has {:.6g} m", v_start,
        v_end, needed(lo), arc_len));
  }
  if (needed(v_cap) <= arc_len) return v_cap;
  double hi = v_cap;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (needed(mid) <= arc_len ? lo : hi) = mid;
  }
  return lo;
}

double block_jerk(const ArcBlock& block, const PlanarCapacity& caps, const NcuSettings& ncu) {
  double j = std::min(tangential_jerk_limit(block.alpha_start, caps),
                      tangential_jerk_limit(block.alpha_end, caps));
  // Between consecutive axis directions |cos| and |sin| are monotone, so
  // the minimum sits at an endpoint or on an axis direction.
  const double quarter = 0.5 * std::numbers::pi;
  const double lo = std::min(block.alpha_start, block.alpha_end);
  const double hi = std::max(block.alpha_start, block.alpha_end);
  for (double k = std::ceil(lo / quarter); k * quarter <= hi; k += 1.0) {
    j = std::min(j, tangential_jerk_limit(k * quarter, caps));
  }
  return std::min(j, ncu_tangential_jerk(ncu));
}

BlockPlan plan_block(double arc_len, double v_entry, double v_exit, double v_st, double j_used) {
  if (!(arc_len > 0.0)) throw InfeasibleError("block has no length");
  if (!(j_used > 0.0)) throw InfeasibleError("block jerk must be > 0");
  const double tol = 1e-12 * std::max(1.0, v_st);
  if (v_entry > v_st + tol || v_exit > v_st + tol) {
    throw InfeasibleError(fmt::format("boundary speed above set point {:.6g} m/s", v_st));
  }
  v_entry = std::min(v_entry, v_st);
  v_exit = std::min(v_exit, v_st);

  BlockPlan p;
  p.v_entry = v_entry;
  p.v_exit = v_exit;
  p.v_st = v_st;
  p.j_used = j_used;

  const double full = ramp_distance(v_entry, v_st, j_used) + ramp_distance(v_st, v_exit, j_used);
  if (full <= arc_len) {
    p.v_peak = v_st;
    p.has_phase_b = true;
  } else {
    p.v_peak = solve_peak_feed(arc_len, v_entry, v_exit, j_used, v_st);
    p.has_phase_b = false;
  }
  p.lengths[kPhaseA] = ramp_distance(v_entry, p.v_peak, j_used);
  p.lengths[kPhaseC] = ramp_distance(p.v_peak, v_exit, j_used);
  p.durations[kPhaseA] = ramp_duration(v_entry, p.v_peak, j_used);
  p.durations[kPhaseC] = ramp_duration(p.v_peak, v_exit, j_used);
  if (p.has_phase_b) {
    p.lengths[kPhaseB] = std::max(0.0, arc_len - p.lengths[kPhaseA] - p.lengths[kPhaseC]);
    p.durations[kPhaseB] = p.lengths[kPhaseB] / p.v_peak;
  } else {
    // Put the bisection residue (sub-nanometre) into phase C.
    p.lengths[kPhaseC] = std::max(0.0, arc_len - p.lengths[kPhaseA]);
  }
  p.peak_tangential_accel = std::sqrt(j_used * std::max(p.v_peak - v_entry, p.v_peak - v_exit));
  return p;
}

BlockPlan plan_block(const ArcBlock& block, double v_entry, double v_exit, double v_st,
                     const PlanarCapacity& caps, const NcuSettings& ncu) {
  BlockPlan p = plan_block(block.length(), v_entry, v_exit, v_st, block_jerk(block, caps, ncu));
  p.exceeds_axis_accel = p.peak_tangential_accel > std::min(caps.x.a_max, caps.y.a_max);
  return p;
}

std::vector<JerkSegment> jerk_segments(const BlockPlan& p) {
  std::vector<JerkSegment> segs;
  double t = 0.0;
  MotionState state{0.0, p.v_entry, 0.0};
  auto push = [&](double duration, double jerk) {
    if (!(duration > 0.0)) return;
    JerkSegment seg{t, duration, jerk, state.a, state.v, state.s};
    // Sub-picosecond pieces are rounding leftovers; keep their effect only.
    if (duration > 1e-12) segs.push_back(seg);
    state = evaluate(seg, duration);
    t += duration;
  };
  const double j = p.j_used;
  const double half_a = 0.5 * p.durations[kPhaseA];
  const double half_c = 0.5 * p.durations[kPhaseC];
  push(half_a, j);
  push(half_a, -j);
  // Ramps land on the exact target speed; drop the rounding residue.
  state.a = 0.0;
  state.v = p.v_peak;
  push(p.durations[kPhaseB], 0.0);
  push(half_c, -j);
  push(half_c, j);
  return segs;
}

MotionState evaluate(const JerkSegment& seg, double tau) {
  const double j = seg.jerk;
  return {seg.s0 + seg.v0 * tau + 0.5 * seg.a0 * tau * tau + j * tau * tau * tau / 6.0,
          seg.v0 + seg.a0 * tau + 0.5 * j * tau * tau, seg.a0 + j * tau};
}

}  // namespace arcsim
