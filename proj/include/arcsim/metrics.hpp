#pragma once

#include <optional>
#include <span>
#include <vector>

#include "arcsim/toolpath.hpp"

namespace arcsim {

struct CircleFit {
  Point2 center;
  double radius = 0.0;
  double rms_residual = 0.0;    // geometric, after refinement
  double seed_rms_residual = 0.0;  // geometric, of the algebraic seed
  int iterations = 0;
};

// Least-squares circle: algebraic fit of x^2 + y^2 + Dx + Ey + F = 0 as a
// seed, then damped Gauss-Newton on the geometric residuals |p - c| - R
// (at most 50 iterations, stops on a step below 1e-12 m). Steps that would
// raise the residual are rejected, so the result never fits worse than the
// seed. Throws FitError for fewer than 3 points or collinear input.
CircleFit fit_circle(std::span<const Point2> points);

// Width of the radial band about the fitted centre: max r_i - min r_i.
double circularity_g(std::span<const Point2> points);

struct RadialDeviation {
  double f_max = 0.0;
  double f_min = 0.0;
  std::vector<double> deviations;  // |p_i - c| - R, outward positive
};

RadialDeviation radial_deviation(std::span<const Point2> points, Point2 nominal_center,
                                 double nominal_radius);

struct Nominal {
  Point2 center;
  double radius = 0.0;
};

struct CircularityReport {
  CircleFit fit;
  double g = 0.0;
  double f_max = 0.0;
  double f_min = 0.0;
  std::vector<double> deviations;
  Nominal nominal;
  bool nominal_from_fit = false;
};

// Without a nominal circle the fitted one stands in, flagged in the report.
CircularityReport circularity_report(std::span<const Point2> points,
                                     std::optional<Nominal> nominal = std::nullopt);

}  // namespace arcsim
