#pragma once

#include <cstddef>
#include <vector>

#include "arcsim/limits.hpp"
#include "arcsim/machine.hpp"
#include "arcsim/profile.hpp"
#include "arcsim/toolpath.hpp"
#include "arcsim/transition.hpp"

namespace arcsim {

struct TraceSample {
  double t = 0.0;    // s
  double s = 0.0;    // cumulative arc length, m
  double x = 0.0;    // m
  double y = 0.0;    // m
  double v = 0.0;    // feed, m/s
  double a_t = 0.0;  // m/s^2
  double a_n = 0.0;  // m/s^2, always v^2 / r of the current block
  double j_t = 0.0;  // jerk on [t, next t), m/s^3
  std::size_t block = 0;
};

struct KinematicTrace {
  std::vector<TraceSample> samples;
};

struct SimulationOptions {
  double sample_step = 1e-3;  // s; phase boundaries are always sampled too
};

struct Simulation {
  std::vector<LimitBreakdown> limits;     // stage 1, per block
  std::vector<JunctionRecord> junctions;  // stage 2, per junction
  // Boundary speeds after the look-ahead passes: entry of block i is
  // boundary_speeds[i], exit is boundary_speeds[i + 1].
  std::vector<double> boundary_speeds;
  std::vector<BlockPlan> plans;  // stage 3
  std::vector<double> block_start_times;
  KinematicTrace trace;
  double total_time = 0.0;
};

// Set points, junction speeds, then jerk-limited feed laws for each block.
// Junction speeds are first lowered where a block cannot decelerate to its
// exit speed (backward pass) and then where it cannot accelerate to it
// (forward pass). Throws ValidationError for invalid inputs and
// InfeasibleError naming the block when a plan still cannot be built.
Simulation simulate_toolpath(const Toolpath& path, const MachineParameters& machine,
                             const SimulationOptions& options = {});

// Uniformly sampled trace of a set of plans, phase boundaries included.
KinematicTrace sample_trace(const Toolpath& path, const std::vector<BlockPlan>& plans,
                            double sample_step);

}  // namespace arcsim
