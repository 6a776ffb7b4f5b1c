#pragma once

#include "arcsim/machine.hpp"
#include "arcsim/toolpath.hpp"

namespace arcsim {

// Junction between two tangent arcs of different curvature.
struct TransitionSpec {
  double r1 = 0.0;        // upstream radius, m
  double r2 = 0.0;        // downstream radius, m
  double alpha = 0.0;     // junction angular position, rad
  double v_in_cap = 0.0;  // upstream set point, m/s
};

// Tangential jerk available at the junction; same form as the in-block axis
// jerk limit, with absolute values so any quadrant works.
double transition_jerk(double alpha, const PlanarCapacity& caps);

// Curvature-discontinuity crossing speed
//   Vfr = sqrt(r1 r2 Jt dt / |r1 - r2|).
// Equal radii are no discontinuity and return +infinity.
double transition_feedrate(const TransitionSpec& spec, const PlanarCapacity& caps,
                           double delta_t);

// A junction costs nothing when the adjacent set points are already below
// Vfr: the crossing speed is min(Vfr, upstream v_st, downstream v_st).
double effective_crossing_speed(double v_fr, double v_st_up, double v_st_down);

struct JunctionRecord {
  std::size_t upstream = 0;  // block index; downstream is upstream + 1
  double r1 = 0.0;
  double r2 = 0.0;
  double alpha = 0.0;  // downstream start angle, normalized
  double j_t = 0.0;
  double v_fr = 0.0;        // +inf when r1 == r2
  double v_effective = 0.0;  // after the no-loss rule, before look-ahead passes
};

JunctionRecord make_junction(std::size_t upstream, const ArcBlock& up, const ArcBlock& down,
                             double v_st_up, double v_st_down, const PlanarCapacity& caps,
                             double delta_t);

}  // namespace arcsim
