#include "arcsim/transition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "arcsim/limits.hpp"

namespace arcsim {

double transition_jerk(double alpha, const PlanarCapacity& caps) {
  return tangential_jerk_limit(alpha, caps);
}

double transition_feedrate(const TransitionSpec& spec, const PlanarCapacity& caps,
                           double delta_t) {
  const double jump = std::abs(spec.r1 - spec.r2);
  if (jump <= 1e-12 * std::max(spec.r1, spec.r2)) {
    return std::numeric_limits<double>::infinity();
  }
  const double jt = transition_jerk(spec.alpha, caps);
  return std::sqrt(spec.r1 * spec.r2 * jt * delta_t / jump);
}

double effective_crossing_speed(double v_fr, double v_st_up, double v_st_down) {
  return std::min({v_fr, v_st_up, v_st_down});
}

JunctionRecord make_junction(std::size_t upstream, const ArcBlock& up, const ArcBlock& down,
                             double v_st_up, double v_st_down, const PlanarCapacity& caps,
                             double delta_t) {
  JunctionRecord j;
  j.upstream = upstream;
  j.r1 = up.r;
  j.r2 = down.r;
  j.alpha = normalize_angle(down.alpha_start);
  j.j_t = transition_jerk(j.alpha, caps);
  j.v_fr = transition_feedrate({up.r, down.r, j.alpha, v_st_up}, caps, delta_t);
  j.v_effective = effective_crossing_speed(j.v_fr, v_st_up, v_st_down);
  return j;
}

}  // namespace arcsim
