#include "arcsim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/units.hpp"

namespace arcsim {

using nlohmann::json;
using units::m_s_to_m_min;
using units::m_to_mm;
using units::rad_to_deg;

namespace {

// JSON has no infinity; an unconstrained speed is written as null.
json speed_m_min(double v) {
  if (!std::isfinite(v)) return nullptr;
  return m_s_to_m_min(v);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && first != last;
}

}  // namespace

void write_trace_csv(std::ostream& out, const KinematicTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& s : trace.samples) {
    out << fmt::format("{:.6f},{:.9f},{:.6f},{:.6f},{:.6f},{:.6f},{:.6f},{:.3f},{}\n", s.t, s.s,
                       m_to_mm(s.x), m_to_mm(s.y), m_s_to_m_min(s.v), s.a_t, s.a_n, s.j_t,
                       s.block);
  }
}

json limits_to_json(const LimitBreakdown& lb) {
  return {{"v_t_m_min", speed_m_min(lb.v_t)},
          {"v_an_m_min", speed_m_min(lb.v_an)},
          {"v_jt_m_min", speed_m_min(lb.v_jt)},
          {"v_jtcurv_m_min", speed_m_min(lb.v_jtcurv)},
          {"v_tcy_m_min", speed_m_min(lb.v_tcy)},
          {"v_prog_m_min", speed_m_min(lb.v_prog)},
          {"v_st_m_min", speed_m_min(lb.v_st)},
          {"binding", std::string(to_string(lb.binding))},
          {"alpha_eval_deg", rad_to_deg(lb.alpha_eval)},
          {"iterations", lb.iterations},
          {"conservative", lb.conservative}};
}

json plan_to_json(const BlockPlan& p) {
  return {{"v_entry_m_min", m_s_to_m_min(p.v_entry)},
          {"v_exit_m_min", m_s_to_m_min(p.v_exit)},
          {"v_peak_m_min", m_s_to_m_min(p.v_peak)},
          {"has_phase_b", p.has_phase_b},
          {"j_used_m_s3", p.j_used},
          {"durations_s", {p.durations[0], p.durations[1], p.durations[2]}},
          {"lengths_mm", {m_to_mm(p.lengths[0]), m_to_mm(p.lengths[1]), m_to_mm(p.lengths[2])}},
          {"peak_at_m_s2", p.peak_tangential_accel},
          {"exceeds_axis_accel", p.exceeds_axis_accel}};
}

json junction_to_json(const JunctionRecord& j) {
  return {{"upstream", j.upstream},
          {"r1_mm", m_to_mm(j.r1)},
          {"r2_mm", m_to_mm(j.r2)},
          {"alpha_deg", rad_to_deg(j.alpha)},
          {"jt_m_s3", j.j_t},
          {"v_fr_m_min", speed_m_min(j.v_fr)},
          {"v_effective_m_min", speed_m_min(j.v_effective)}};
}

json summary_to_json(const Toolpath& path, const Simulation& sim) {
  json blocks = json::array();
  for (std::size_t i = 0; i < path.blocks.size(); ++i) {
    const ArcBlock& b = path.blocks[i];
    blocks.push_back({{"index", i},
                      {"r_mm", m_to_mm(b.r)},
                      {"length_mm", m_to_mm(b.length())},
                      {"start_time_s", sim.block_start_times[i]},
                      {"duration_s", sim.plans[i].duration()},
                      {"limits", limits_to_json(sim.limits[i])},
                      {"plan", plan_to_json(sim.plans[i])}});
  }
  json junctions = json::array();
  for (std::size_t i = 0; i < sim.junctions.size(); ++i) {
    json j = junction_to_json(sim.junctions[i]);
    j["v_planned_m_min"] = m_s_to_m_min(sim.boundary_speeds[i + 1]);
    junctions.push_back(std::move(j));
  }
  return {{"blocks", blocks},
          {"junctions", junctions},
          {"samples", sim.trace.samples.size()},
          {"total_time_s", sim.total_time}};
}

json circularity_to_json(const CircularityReport& rep) {
  return {{"g_um", units::m_to_um(rep.g)},
          {"fmax_um", units::m_to_um(rep.f_max)},
          {"fmin_um", units::m_to_um(rep.f_min)},
          {"center_mm", {m_to_mm(rep.fit.center.x), m_to_mm(rep.fit.center.y)}},
          {"radius_mm", m_to_mm(rep.fit.radius)},
          {"rms_residual_um", units::m_to_um(rep.fit.rms_residual)},
          {"nominal_center_mm", {m_to_mm(rep.nominal.center.x), m_to_mm(rep.nominal.center.y)}},
          {"nominal_radius_mm", m_to_mm(rep.nominal.radius)},
          {"nominal_from_fit", rep.nominal_from_fit},
          {"points", rep.deviations.size()}};
}

std::vector<Point2> read_points_csv(std::istream& in) {
  std::vector<Point2> pts;
  std::string line;
  std::size_t col_x = 0;
  std::size_t col_y = 1;
  bool first = true;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv(line);
    if (first) {
      first = false;
      double probe = 0.0;
      if (cells.empty() || !parse_double(cells[0], probe)) {
        const auto fx = std::find(cells.begin(), cells.end(), "x_mm");
        const auto fy = std::find(cells.begin(), cells.end(), "y_mm");
        if (fx != cells.end() && fy != cells.end()) {
          col_x = static_cast<std::size_t>(fx - cells.begin());
          col_y = static_cast<std::size_t>(fy - cells.begin());
        }
        continue;
      }
    }
    double x = 0.0;
    double y = 0.0;
    if (cells.size() <= std::max(col_x, col_y) || !parse_double(cells[col_x], x) ||
        !parse_double(cells[col_y], y)) {
      throw ValidationError(fmt::format("points CSV line {}: expected numbers", line_no));
    }
    pts.push_back({units::mm_to_m(x), units::mm_to_m(y)});
  }
  return pts;
}

void write_feed_svg(std::ostream& out, const KinematicTrace& trace) {
  constexpr double kWidth = 800.0;
  constexpr double kPanel = 220.0;
  constexpr double kMargin = 50.0;
  const auto& s = trace.samples;
  const double t_end = s.empty() ? 1.0 : std::max(s.back().t, 1e-9);

  double v_max = 1e-9;
  double a_max = 1e-9;
  for (const auto& p : s) {
    v_max = std::max(v_max, m_s_to_m_min(p.v));
    a_max = std::max({a_max, std::abs(p.a_t), std::abs(p.a_n)});
  }

  const double height = 2.0 * kPanel + 3.0 * kMargin;
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, height);
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto px = [&](double t) { return kMargin + (kWidth - 2.0 * kMargin) * t / t_end; };
  auto panel = [&](double top, const char* title, double lo, double hi) {
    out << fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" "
        "stroke=\"#888\"/>\n",
        kMargin, top, kWidth - 2.0 * kMargin, kPanel);
    out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", kMargin, top - 8.0, title);
    out << fmt::format("<text x=\"4\" y=\"{:.1f}\">{:.3g}</text>\n", top + 12.0, hi);
    out << fmt::format("<text x=\"4\" y=\"{:.1f}\">{:.3g}</text>\n", top + kPanel, lo);
  };
  auto polyline = [&](double top, double lo, double hi, const char* color, auto value) {
    out << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1\" points=\"", color);
    for (const auto& p : s) {
      const double y = top + kPanel * (1.0 - (value(p) - lo) / (hi - lo));
      out << fmt::format("{:.2f},{:.2f} ", px(p.t), y);
    }
    out << "\"/>\n";
  };

  const double top_v = kMargin;
  panel(top_v, "feed rate (m/min)", 0.0, v_max * 1.05);
  polyline(top_v, 0.0, v_max * 1.05, "#1f77b4", [](const TraceSample& p) { return m_s_to_m_min(p.v); });

  const double top_a = 2.0 * kMargin + kPanel;
  panel(top_a, "tangential (blue) / normal (red) acceleration (m/s^2)", -a_max * 1.05,
        a_max * 1.05);
  polyline(top_a, -a_max * 1.05, a_max * 1.05, "#1f77b4", [](const TraceSample& p) { return p.a_t; });
  polyline(top_a, -a_max * 1.05, a_max * 1.05, "#d62728", [](const TraceSample& p) { return p.a_n; });

  out << fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">time (s), 0 .. {:.4g}</text>\n", kMargin,
                     height - 10.0, t_end);
  out << "</svg>\n";
}

}  // namespace arcsim
