#include "arcsim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "arcsim/error.hpp"

namespace arcsim {
namespace {

double geometric_cost(std::span<const Point2> pts, Point2 c, double r) {
  double sum = 0.0;
  for (const auto& p : pts) {
    const double d = norm(p - c) - r;
    sum += d * d;
  }
  return sum;
}

}  // namespace

CircleFit fit_circle(std::span<const Point2> points) {
  const std::size_t n = points.size();
  if (n < 3) throw FitError("circle fit needs at least 3 points");

  // Work relative to the centroid, scaled to unit spread, for conditioning.
  Point2 mean;
  for (const auto& p : points) mean = mean + p;
  mean = (1.0 / static_cast<double>(n)) * mean;
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, norm(p - mean));
  if (!(scale > 0.0)) throw FitError("circle fit: all points coincide");

  Eigen::MatrixXd a(n, 3);
  Eigen::VectorXd b(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = (points[i].x - mean.x) / scale;
    const double v = (points[i].y - mean.y) / scale;
    a(i, 0) = u;
    a(i, 1) = v;
    a(i, 2) = 1.0;
    b(i) = -(u * u + v * v);
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < 3) throw FitError("circle fit: points are collinear");
  const Eigen::Vector3d sol = qr.solve(b);
  const double cu = -0.5 * sol(0);
  const double cv = -0.5 * sol(1);
  const double r2 = cu * cu + cv * cv - sol(2);
  if (!(r2 > 0.0) || !std::isfinite(r2)) throw FitError("circle fit: degenerate point set");

  // Collinear points pass the rank test with a huge radius; reject those.
  double r_seed = std::sqrt(r2) * scale;
  if (r_seed > 1e8 * scale) throw FitError("circle fit: points are collinear");

  CircleFit fit;
  fit.center = {mean.x + cu * scale, mean.y + cv * scale};
  fit.radius = r_seed;
  double cost = geometric_cost(points, fit.center, fit.radius);
  fit.seed_rms_residual = std::sqrt(cost / static_cast<double>(n));

  double lambda = 1e-3;
  for (int it = 0; it < 50; ++it) {
    Eigen::Matrix3d jtj = Eigen::Matrix3d::Zero();
    Eigen::Vector3d jtr = Eigen::Vector3d::Zero();
    for (const auto& p : points) {
      const Point2 d = p - fit.center;
      const double dist = norm(d);
      if (dist == 0.0) continue;
      const Eigen::Vector3d row(-d.x / dist, -d.y / dist, -1.0);
      const double res = dist - fit.radius;
      jtj += row * row.transpose();
      jtr += row * res;
    }
    bool accepted = false;
    double step_norm = 0.0;
    for (int tries = 0; tries < 20 && !accepted; ++tries) {
      Eigen::Matrix3d damped = jtj;
      damped.diagonal() *= 1.0 + lambda;
      const Eigen::Vector3d step = damped.ldlt().solve(-jtr);
      step_norm = step.norm();
      const Point2 c{fit.center.x + step(0), fit.center.y + step(1)};
      const double r = fit.radius + step(2);
      const double trial = r > 0.0 ? geometric_cost(points, c, r) : INFINITY;
      if (trial <= cost) {
        fit.center = c;
        fit.radius = r;
        cost = trial;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    fit.iterations = it + 1;
    if (!accepted || step_norm < 1e-12) break;
  }
  fit.rms_residual = std::sqrt(cost / static_cast<double>(n));
  return fit;
}

namespace {

double band_width(std::span<const Point2> points, const CircleFit& fit) {
  const RadialDeviation dev = radial_deviation(points, fit.center, fit.radius);
  return dev.f_max - dev.f_min;
}

}  // namespace

double circularity_g(std::span<const Point2> points) {
  return band_width(points, fit_circle(points));
}

RadialDeviation radial_deviation(std::span<const Point2> points, Point2 nominal_center,
                                 double nominal_radius) {
  if (!(nominal_radius > 0.0)) throw FitError("nominal radius must be > 0");
  RadialDeviation out;
  out.deviations.reserve(points.size());
  out.f_max = -INFINITY;
  out.f_min = INFINITY;
  for (const auto& p : points) {
    const double d = norm(p - nominal_center) - nominal_radius;
    out.deviations.push_back(d);
    out.f_max = std::max(out.f_max, d);
    out.f_min = std::min(out.f_min, d);
  }
  if (points.empty()) out.f_max = out.f_min = 0.0;
  return out;
}

CircularityReport circularity_report(std::span<const Point2> points,
                                     std::optional<Nominal> nominal) {
  CircularityReport rep;
  rep.fit = fit_circle(points);
  rep.g = band_width(points, rep.fit);
  rep.nominal_from_fit = !nominal.has_value();
  rep.nominal = nominal.value_or(Nominal{rep.fit.center, rep.fit.radius});
  RadialDeviation dev = radial_deviation(points, rep.nominal.center, rep.nominal.radius);
  rep.f_max = dev.f_max;
  rep.f_min = dev.f_min;
  rep.deviations = std::move(dev.deviations);
  return rep;
}

}  // namespace arcsim
