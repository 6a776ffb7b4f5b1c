#include "arcsim/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace arcsim {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZeroCosine = 1e-15;

// min(cx / |dx|, cy / |dy|) with a vanishing direction cosine unconstrained.
double min_over_axes(double cx, double dx, double cy, double dy) {
  const double ax = std::abs(dx);
  const double ay = std::abs(dy);
  const double tx = ax < kZeroCosine ? kInf : cx / ax;
  const double ty = ay < kZeroCosine ? kInf : cy / ay;
  return std::min(tx, ty);
}

bool sustainable(double alpha, double v, double r, const PlanarCapacity& caps) {
  constexpr double kSlack = 1.0 - 1e-12;
  return tangential_jerk_limit(alpha, caps) >= kSlack * v * v * v / (r * r) &&
         normal_accel_limit(alpha, caps) >= kSlack * v * v / r &&
         axis_feed_limit(alpha, caps) >= kSlack * v;
}

// First angular position along the block that sustains v, or NaN.
double first_sustaining_angle(const ArcBlock& b, double v, const PlanarCapacity& caps) {
  if (sustainable(b.alpha_start, v, b.r, caps)) return b.alpha_start;
  const int samples = std::max(64, static_cast<int>(std::ceil(b.span() / 1e-3)));
  const double step = b.sweep() / samples;
  double lo = b.alpha_start;
  for (int k = 1; k <= samples; ++k) {
    const double hi = b.alpha_start + k * step;
    if (sustainable(hi, v, b.r, caps)) {
      double a = lo;
      double c = hi;
      for (int it = 0; it < 200 && a != c; ++it) {
        const double mid = 0.5 * (a + c);
        if (mid == a || mid == c) break;
        (sustainable(mid, v, b.r, caps) ? c : a) = mid;
      }
      return c;
    }
    lo = hi;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// Minimum of the static look-ahead over the arc; returns the minimizing angle.
double argmin_over_arc(const ArcBlock& b, const PlanarCapacity& caps, StaticLookahead& out) {
  const int samples = std::max(720, static_cast<int>(std::ceil(b.span() / 1e-4)));
  double best_alpha = b.alpha_start;
  out = static_lookahead_terms(best_alpha, b.r, caps);
  auto consider = [&](double alpha) {
    const StaticLookahead t = static_lookahead_terms(alpha, b.r, caps);
    out.v_t = std::min(out.v_t, t.v_t);
    out.v_an = std::min(out.v_an, t.v_an);
    out.v_jt = std::min(out.v_jt, t.v_jt);
    if (t.v_s < out.v_s) {
      out.v_s = t.v_s;
      best_alpha = alpha;
    }
  };
  for (int k = 1; k <= samples; ++k) consider(b.alpha_start + b.sweep() * k / samples);
  // Axis directions are where single-axis limits bind; include them exactly.
  const double lo = std::min(b.alpha_start, b.alpha_end);
  const double hi = std::max(b.alpha_start, b.alpha_end);
  const double quarter = 0.5 * std::numbers::pi;
  for (double a = std::ceil(lo / quarter) * quarter; a <= hi; a += quarter) consider(a);
  return best_alpha;
}

// The sustaining angle is located by bisection, so the axis terms there can
// sit a few ulps below the feed they were solved for.
bool sustained(double axis_feed, double target) { return axis_feed >= target * (1.0 - 1e-9); }

}  // namespace

double axis_feed_limit(double alpha_c, const PlanarCapacity& caps) {
  return min_over_axes(caps.x.v_max, std::cos(alpha_c), caps.y.v_max, std::sin(alpha_c));
}

double normal_accel_limit(double alpha_c, const PlanarCapacity& caps) {
  return min_over_axes(caps.x.a_max, std::sin(alpha_c), caps.y.a_max, std::cos(alpha_c));
}

double tangential_jerk_limit(double alpha_c, const PlanarCapacity& caps) {
  return min_over_axes(caps.x.j_max, std::cos(alpha_c), caps.y.j_max, std::sin(alpha_c));
}

double feed_from_accel(double a_n, double r) { return a_n > 0.0 ? std::sqrt(r * a_n) : 0.0; }

double feed_from_jerk(double j_t, double r) { return j_t > 0.0 ? std::cbrt(j_t * r * r) : 0.0; }

StaticLookahead static_lookahead_terms(double alpha_c, double r, const PlanarCapacity& caps) {
  StaticLookahead s;
  s.v_t = axis_feed_limit(alpha_c, caps);
  s.v_an = feed_from_accel(normal_accel_limit(alpha_c, caps), r);
  s.v_jt = feed_from_jerk(tangential_jerk_limit(alpha_c, caps), r);
  s.v_s = std::min({s.v_t, s.v_an, s.v_jt});
  return s;
}

double cycle_time_limit(double r, double alpha_s, double alpha_e, double t_cy) {
  return r * std::abs(alpha_e - alpha_s) / t_cy;
}

double ncu_tangential_jerk(const NcuSettings& ncu) { return ncu.j_curv * ncu.r_jct; }

std::string_view to_string(LimitTerm term) {
  switch (term) {
    case LimitTerm::kProgrammed: return "Vprog";
    case LimitTerm::kNcuJerk: return "VJtcurv";
    case LimitTerm::kCycleTime: return "Vtcy";
    case LimitTerm::kAxisJerk: return "VJt";
    case LimitTerm::kAxisAccel: return "VAn";
    case LimitTerm::kAxisFeed: return "Vt";
  }
  return "?";
}

LimitBreakdown feed_setpoint(const ArcBlock& block, const PlanarCapacity& caps,
                             const NcuSettings& ncu) {
  LimitBreakdown out;
  out.v_prog = block.v_prog;
  out.v_jtcurv = feed_from_jerk(ncu_tangential_jerk(ncu), block.r);
  out.v_tcy = cycle_time_limit(block.r, block.alpha_start, block.alpha_end, ncu.t_cy);
  const double v0 = std::min({out.v_prog, out.v_jtcurv, out.v_tcy});

  double v = v0;
  double alpha = block.alpha_start;
  StaticLookahead terms;
  bool converged = false;
  for (int it = 1; it <= 10; ++it) {
    out.iterations = it;
    alpha = first_sustaining_angle(block, v, caps);
    if (std::isnan(alpha)) break;
    terms = static_lookahead_terms(alpha, block.r, caps);
    const double next = sustained(terms.v_s, v0) ? v0 : std::min(v0, terms.v_s);
    const double change = std::abs(next - v);
    v = next;
    if (change < 1e-6) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    alpha = argmin_over_arc(block, caps, terms);
    out.conservative = true;
  }

  out.v_t = terms.v_t;
  out.v_an = terms.v_an;
  out.v_jt = terms.v_jt;
  out.alpha_eval = normalize_angle(alpha);

  const std::array<std::pair<LimitTerm, double>, 6> candidates{{
      {LimitTerm::kProgrammed, out.v_prog},
      {LimitTerm::kNcuJerk, out.v_jtcurv},
      {LimitTerm::kCycleTime, out.v_tcy},
      {LimitTerm::kAxisJerk, out.v_jt},
      {LimitTerm::kAxisAccel, out.v_an},
      {LimitTerm::kAxisFeed, out.v_t},
  }};
  out.v_st = sustained(terms.v_s, v0) ? v0 : std::min(v0, terms.v_s);
  // Ties within rounding go to the earlier (NCU-side) term.
  for (const auto& [term, value] : candidates) {
    if (value <= out.v_st * (1.0 + 1e-9)) {
      out.binding = term;
      break;
    }
  }
  return out;
}

}  // namespace arcsim
