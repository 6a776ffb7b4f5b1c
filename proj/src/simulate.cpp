#include "arcsim/simulate.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "arcsim/error.hpp"

namespace arcsim {

Simulation simulate_toolpath(const Toolpath& path, const MachineParameters& machine,
                             const SimulationOptions& options) {
  ensure_valid(path);
  validate(machine);
  if (!(options.sample_step > 0.0)) throw ValidationError("sample step must be > 0");

  const PlanarCapacity caps = planar(machine);
  const NcuSettings& ncu = machine.ncu;
  const auto& blocks = path.blocks;
  const std::size_t n = blocks.size();

  Simulation sim;
  for (const auto& b : blocks) sim.limits.push_back(feed_setpoint(b, caps, ncu));

  auto& speeds = sim.boundary_speeds;
  speeds.assign(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    sim.junctions.push_back(make_junction(i - 1, blocks[i - 1], blocks[i], sim.limits[i - 1].v_st,
                                          sim.limits[i].v_st, caps, ncu.delta_t));
    speeds[i] = sim.junctions.back().v_effective;
  }

  std::vector<double> jerks(n);
  for (std::size_t i = 0; i < n; ++i) jerks[i] = block_jerk(blocks[i], caps, ncu);

  for (std::size_t k = n; k-- > 0;) {
    const double len = blocks[k].length();
    if (speeds[k] > speeds[k + 1] && ramp_distance(speeds[k + 1], speeds[k], jerks[k]) > len) {
      speeds[k] = max_reachable_speed(speeds[k + 1], len, jerks[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double len = blocks[k].length();
    if (speeds[k + 1] > speeds[k] && ramp_distance(speeds[k], speeds[k + 1], jerks[k]) > len) {
      speeds[k + 1] = max_reachable_speed(speeds[k], len, jerks[k]);
    }
  }

  double t = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    try {
      BlockPlan p = plan_block(blocks[i].length(), speeds[i], speeds[i + 1], sim.limits[i].v_st,
                               jerks[i]);
      p.exceeds_axis_accel = p.peak_tangential_accel > std::min(caps.x.a_max, caps.y.a_max);
      sim.plans.push_back(p);
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(fmt::format("block {}: {}", i, e.what()));
    }
    sim.block_start_times.push_back(t);
    t += sim.plans.back().duration();
  }
  sim.total_time = t;
  sim.trace = sample_trace(path, sim.plans, options.sample_step);
  return sim;
}

KinematicTrace sample_trace(const Toolpath& path, const std::vector<BlockPlan>& plans,
                            double sample_step) {
  KinematicTrace trace;
  const auto& blocks = path.blocks;
  double t_block = 0.0;
  double s_block = 0.0;
  // Global grid index of the next uniform sample.
  long long next_k = 0;

  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const ArcBlock& b = blocks[i];
    const auto segs = jerk_segments(plans[i]);
    const double len = b.length();
    auto emit = [&](double t_abs, const JerkSegment& seg, double tau, double jerk) {
      const MotionState st = evaluate(seg, tau);
      const double s_local = std::clamp(st.s, 0.0, len);
      const Point2 p = b.point_at(b.alpha_at(s_local));
      TraceSample smp;
      smp.t = t_abs;
      smp.s = s_block + s_local;
      smp.x = p.x;
      smp.y = p.y;
      smp.v = st.v;
      smp.a_t = st.a;
      smp.a_n = st.v * st.v / b.r;
      smp.j_t = jerk;
      smp.block = i;
      trace.samples.push_back(smp);
    };

    for (const JerkSegment& seg : segs) {
      const double t0 = t_block + seg.t0;
      const double t1 = t0 + seg.duration;
      emit(t0, seg, 0.0, seg.jerk);
      while (static_cast<double>(next_k) * sample_step <= t0 + 1e-12) ++next_k;
      for (;;) {
        const double tk = static_cast<double>(next_k) * sample_step;
        if (tk >= t1 - 1e-12) break;
        emit(tk, seg, tk - t0, seg.jerk);
        ++next_k;
      }
    }
    t_block += plans[i].duration();
    s_block += len;
  }

  // Closing sample at rest (or at the final exit speed).
  if (!blocks.empty()) {
    const ArcBlock& b = blocks.back();
    const BlockPlan& p = plans.back();
    const Point2 end = b.end_point();
    trace.samples.push_back(
        {t_block, s_block, end.x, end.y, p.v_exit, 0.0, p.v_exit * p.v_exit / b.r, 0.0,
         blocks.size() - 1});
  }
  return trace;
}

}  // namespace arcsim
