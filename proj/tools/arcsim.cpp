// arcsim: circular-interpolation feed-law simulator and circularity analyzer.
//
//   arcsim simulate --machine m.json --generate circle --radius-mm 30 --feed-mm-min 6000
//   arcsim limits   --machine m.json --radius-mm 2.5 --feed-mm-min 6000
//   arcsim metrics  --points trace.csv
//   arcsim generate --generate quarterspiral --incline-deg 45 --feed-mm-min 12000

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/gcode.hpp"
#include "arcsim/limits.hpp"
#include "arcsim/machine.hpp"
#include "arcsim/metrics.hpp"
#include "arcsim/report.hpp"
#include "arcsim/simulate.hpp"
#include "arcsim/toolpath.hpp"
#include "arcsim/units.hpp"

namespace {

using namespace arcsim;
using nlohmann::json;

constexpr int kExitValidation = 1;
constexpr int kExitInfeasible = 2;

struct GeneratorArgs {
  std::string kind;
  double radius_mm = 30.0;
  double r_first_mm = 10.0;
  double r_last_mm = 30.0;
  std::optional<double> step_mm;
  double incline_deg = 0.0;
  double feed_mm_min = 6000.0;
  std::string dir = "ccw";
  double bore_mm = 80.0;
  double tool_mm = 20.0;
  std::optional<double> approach_mm;
  double approach_span_deg = 90.0;
  double junction_deg = 0.0;
};

void add_generator_options(CLI::App* cmd, GeneratorArgs& g) {
  cmd->add_option("--radius-mm", g.radius_mm, "circle radius")->capture_default_str();
  cmd->add_option("--r-first-mm", g.r_first_mm, "spiral first radius")->capture_default_str();
  cmd->add_option("--r-last-mm", g.r_last_mm, "spiral last radius")->capture_default_str();
  cmd->add_option("--step-mm", g.step_mm, "spiral radius step (default 5 semi, 2 quarter)");
  cmd->add_option("--incline-deg", g.incline_deg, "spiral junction rotation")->capture_default_str();
  cmd->add_option("--feed-mm-min", g.feed_mm_min, "programmed feed")->capture_default_str();
  cmd->add_option("--dir", g.dir, "cw or ccw")
      ->check(CLI::IsMember({"cw", "ccw"}))
      ->capture_default_str();
  cmd->add_option("--bore-mm", g.bore_mm, "bore diameter")->capture_default_str();
  cmd->add_option("--tool-mm", g.tool_mm, "tool diameter")->capture_default_str();
  cmd->add_option("--approach-mm", g.approach_mm, "approach/clearance arc radius (bore)");
  cmd->add_option("--approach-span-deg", g.approach_span_deg, "approach arc span")
      ->capture_default_str();
  cmd->add_option("--junction-deg", g.junction_deg, "bore junction angular position")
      ->capture_default_str();
}

Toolpath build_generated(const GeneratorArgs& g) {
  TestPathParams p;
  static const std::map<std::string, PathKind> kinds{{"circle", PathKind::kCircle},
                                                     {"semispiral", PathKind::kSemiSpiral},
                                                     {"quarterspiral", PathKind::kQuarterSpiral},
                                                     {"bore", PathKind::kBore}};
  const auto it = kinds.find(g.kind);
  if (it == kinds.end()) throw ValidationError("unknown generator " + g.kind);
  p.kind = it->second;
  p.feed = units::mm_min_to_m_s(g.feed_mm_min);
  p.direction = g.dir == "cw" ? Direction::kCw : Direction::kCcw;
  p.radius = units::mm_to_m(g.radius_mm);
  p.r_first = units::mm_to_m(g.r_first_mm);
  p.r_last = units::mm_to_m(g.r_last_mm);
  p.step = units::mm_to_m(g.step_mm.value_or(p.kind == PathKind::kSemiSpiral ? 5.0 : 2.0));
  p.incline = units::deg_to_rad(g.incline_deg);
  p.bore_diameter = units::mm_to_m(g.bore_mm);
  p.tool_diameter = units::mm_to_m(g.tool_mm);
  if (p.kind == PathKind::kBore && !g.approach_mm) {
    throw ValidationError("--approach-mm is required for the bore generator");
  }
  p.approach_radius = units::mm_to_m(g.approach_mm.value_or(1.0));
  p.approach_span = units::deg_to_rad(g.approach_span_deg);
  p.junction_angle = units::deg_to_rad(g.junction_deg);
  return generate_test_path(p);
}

Toolpath load_path_file(const std::string& file) {
  const bool is_json = file.size() >= 5 && file.compare(file.size() - 5, 5, ".json") == 0;
  if (is_json) return load_toolpath(file);
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open G-code file " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_gcode(ss.str());
}

MachineParameters machine_or_default(const std::string& file) {
  return file.empty() ? mikron_ucp710() : load_machine(file);
}

double default_sample_ms() {
  if (const char* env = std::getenv("ARCSIM_SAMPLE_MS")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (const std::exception&) {
    }
    throw ValidationError(std::string("ARCSIM_SAMPLE_MS must be a positive number, got ") + env);
  }
  return 1.0;
}

template <typename Writer>
void write_file(const std::string& file, Writer&& writer) {
  std::ofstream out(file);
  if (!out) throw ValidationError("cannot write " + file);
  writer(out);
}

void emit_json(const json& doc, const std::string& file) {
  if (file.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_file(file, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  }
}

json lookahead_json(double alpha, double r, const PlanarCapacity& caps) {
  const StaticLookahead s = static_lookahead_terms(alpha, r, caps);
  return {{"alpha_deg", units::rad_to_deg(alpha)},
          {"v_t_m_min", units::m_s_to_m_min(s.v_t)},
          {"v_an_m_min", units::m_s_to_m_min(s.v_an)},
          {"v_jt_m_min", units::m_s_to_m_min(s.v_jt)},
          {"v_s_m_min", units::m_s_to_m_min(s.v_s)},
          {"a_n_m_s2", normal_accel_limit(alpha, caps)},
          {"j_t_m_s3", tangential_jerk_limit(alpha, caps)}};
}

json sweep_json(double step_deg, double r, const PlanarCapacity& caps) {
  if (!(step_deg > 0.0)) throw ValidationError("--sweep-deg must be > 0");
  struct Extreme {
    double value;
    double alpha;
  };
  Extreme min_vt{INFINITY, 0}, max_vt{-INFINITY, 0}, min_an{INFINITY, 0}, max_an{-INFINITY, 0},
      min_vjt{INFINITY, 0}, max_jt{-INFINITY, 0}, min_vs{INFINITY, 0};
  const int n = static_cast<int>(std::ceil(360.0 / step_deg));
  for (int k = 0; k < n; ++k) {
    const double deg = k * step_deg;
    const double a = units::deg_to_rad(deg);
    const StaticLookahead s = static_lookahead_terms(a, r, caps);
    const double an = normal_accel_limit(a, caps);
    const double jt = tangential_jerk_limit(a, caps);
    auto lower = [&](Extreme& e, double v) { if (v < e.value) e = {v, deg}; };
    auto upper = [&](Extreme& e, double v) { if (v > e.value) e = {v, deg}; };
    lower(min_vt, s.v_t);
    upper(max_vt, s.v_t);
    lower(min_an, an);
    upper(max_an, an);
    lower(min_vjt, s.v_jt);
    upper(max_jt, jt);
    lower(min_vs, s.v_s);
  }
  auto speed = [](Extreme e) {
    return json{{"m_min", units::m_s_to_m_min(e.value)}, {"alpha_deg", e.alpha}};
  };
  auto raw = [](Extreme e) { return json{{"value", e.value}, {"alpha_deg", e.alpha}}; };
  return {{"step_deg", step_deg},
          {"min_v_t", speed(min_vt)},
          {"max_v_t", speed(max_vt)},
          {"min_v_jt", speed(min_vjt)},
          {"min_v_s", speed(min_vs)},
          {"min_a_n_m_s2", raw(min_an)},
          {"max_a_n_m_s2", raw(max_an)},
          {"max_j_t_m_s3", raw(max_jt)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circular-interpolation feed-law simulator and circularity analyzer"};
  app.require_subcommand(1);

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "simulate a toolpath and write trace/summary");
  std::string machine_file;
  std::string path_file;
  GeneratorArgs gen;
  std::optional<double> sample_ms;
  std::string trace_file;
  std::string summary_file;
  std::string plot_file;
  sim_cmd->add_option("--machine", machine_file, "machine JSON (default: built-in MIKRON UCP 710)");
  auto* path_opt = sim_cmd->add_option("--path", path_file, "toolpath JSON (*.json) or G-code file");
  auto* gen_opt = sim_cmd->add_option("--generate", gen.kind, "circle|semispiral|quarterspiral|bore");
  path_opt->excludes(gen_opt);
  add_generator_options(sim_cmd, gen);
  sim_cmd->add_option("--sample-ms", sample_ms, "trace sampling step (env ARCSIM_SAMPLE_MS, default 1)");
  sim_cmd->add_option("--trace", trace_file, "trace CSV output");
  sim_cmd->add_option("--summary", summary_file, "summary JSON output (default stdout)");
  sim_cmd->add_option("--plot", plot_file, "feed/acceleration SVG output");

  // limits
  auto* lim_cmd = app.add_subcommand("limits", "feed-rate set point breakdown per block");
  std::string lim_machine;
  std::string lim_path;
  double lim_radius_mm = 30.0;
  double lim_feed = 6000.0;
  std::optional<double> lim_alpha;
  std::optional<double> lim_sweep;
  std::string lim_out;
  lim_cmd->add_option("--machine", lim_machine, "machine JSON (default: built-in MIKRON UCP 710)");
  lim_cmd->add_option("--path", lim_path, "toolpath JSON or G-code (instead of a single circle)");
  lim_cmd->add_option("--radius-mm", lim_radius_mm, "full-circle radius")->capture_default_str();
  lim_cmd->add_option("--feed-mm-min", lim_feed, "programmed feed")->capture_default_str();
  lim_cmd->add_option("--alpha-deg", lim_alpha, "also report the static look-ahead at this angle");
  lim_cmd->add_option("--sweep-deg", lim_sweep, "also sweep the static look-ahead with this step");
  lim_cmd->add_option("--out", lim_out, "output JSON (default stdout)");

  // metrics
  auto* met_cmd = app.add_subcommand("metrics", "circularity G and radial deviations of XY points");
  std::string points_file;
  std::optional<double> cx, cy, nominal_r;
  std::string met_out;
  met_cmd->add_option("--points", points_file, "trace CSV or two-column x,y CSV (mm)")->required();
  auto* cx_opt = met_cmd->add_option("--center-x-mm", cx, "nominal centre X");
  auto* cy_opt = met_cmd->add_option("--center-y-mm", cy, "nominal centre Y");
  auto* r_opt = met_cmd->add_option("--nominal-radius-mm", nominal_r, "nominal radius");
  cx_opt->needs(cy_opt)->needs(r_opt);
  cy_opt->needs(cx_opt);
  r_opt->needs(cx_opt);
  met_cmd->add_option("--out", met_out, "output JSON (default stdout)");

  // generate
  auto* gen_cmd = app.add_subcommand("generate", "write a test trajectory as toolpath JSON");
  GeneratorArgs gen2;
  std::string gen_out;
  gen_cmd->add_option("--generate,kind", gen2.kind, "circle|semispiral|quarterspiral|bore")
      ->required();
  add_generator_options(gen_cmd, gen2);
  gen_cmd->add_option("--out", gen_out, "output JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (sim_cmd->parsed()) {
      if (path_file.empty() && gen.kind.empty()) {
        throw ValidationError("one of --path or --generate is required");
      }
      const MachineParameters machine = machine_or_default(machine_file);
      const Toolpath path = path_file.empty() ? build_generated(gen) : load_path_file(path_file);
      SimulationOptions opts;
      opts.sample_step = units::ms_to_s(sample_ms.value_or(default_sample_ms()));
      if (!(opts.sample_step > 0.0)) throw ValidationError("--sample-ms must be > 0");
      const Simulation sim = simulate_toolpath(path, machine, opts);
      if (!trace_file.empty()) {
        write_file(trace_file, [&](std::ostream& out) { write_trace_csv(out, sim.trace); });
      }
      if (!plot_file.empty()) {
        write_file(plot_file, [&](std::ostream& out) { write_feed_svg(out, sim.trace); });
      }
      emit_json(summary_to_json(path, sim), summary_file);
    } else if (lim_cmd->parsed()) {
      const MachineParameters machine = machine_or_default(lim_machine);
      const PlanarCapacity caps = planar(machine);
      const Toolpath path =
          lim_path.empty()
              ? make_circle(units::mm_to_m(lim_radius_mm), units::mm_min_to_m_s(lim_feed))
              : load_path_file(lim_path);
      json blocks = json::array();
      for (std::size_t i = 0; i < path.blocks.size(); ++i) {
        json b = limits_to_json(feed_setpoint(path.blocks[i], caps, machine.ncu));
        b["index"] = i;
        b["r_mm"] = units::m_to_mm(path.blocks[i].r);
        blocks.push_back(std::move(b));
      }
      json doc{{"blocks", blocks},
               {"j_tcurv_m_s3", ncu_tangential_jerk(machine.ncu)}};
      const double r = path.blocks.front().r;
      if (lim_alpha) doc["static_lookahead"] = lookahead_json(units::deg_to_rad(*lim_alpha), r, caps);
      if (lim_sweep) doc["sweep"] = sweep_json(*lim_sweep, r, caps);
      emit_json(doc, lim_out);
    } else if (met_cmd->parsed()) {
      std::ifstream in(points_file);
      if (!in) throw ValidationError("cannot open points file " + points_file);
      const auto pts = read_points_csv(in);
      std::optional<Nominal> nominal;
      if (cx) {
        nominal = Nominal{{units::mm_to_m(*cx), units::mm_to_m(*cy)}, units::mm_to_m(*nominal_r)};
      }
      emit_json(circularity_to_json(circularity_report(pts, nominal)), met_out);
    } else if (gen_cmd->parsed()) {
      emit_json(toolpath_to_json(build_generated(gen2)), gen_out);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "arcsim: infeasible plan: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "arcsim: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
