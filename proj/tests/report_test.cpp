#include <sstream>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/report.hpp"
#include "arcsim/units.hpp"

namespace arcsim {
namespace {

Simulation small_run(const Toolpath& path) { return simulate_toolpath(path, mikron_ucp710()); }

TEST(ReportTest, TraceCsvHeaderAndRows) {
  const Toolpath path = make_circle(0.03, 0.1);
  const Simulation sim = small_run(path);
  std::ostringstream out;
  write_trace_csv(out, sim.trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kTraceHeader);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, sim.trace.samples.size());
}

TEST(ReportTest, TraceCsvReadsBackAsPoints) {
  const Toolpath path = make_circle(0.03, 0.1, Direction::kCcw, 0.0, {0.01, 0.03});
  const Simulation sim = small_run(path);
  std::ostringstream out;
  write_trace_csv(out, sim.trace);
  std::istringstream in(out.str());
  const auto pts = read_points_csv(in);
  ASSERT_EQ(pts.size(), sim.trace.samples.size());
  for (std::size_t k = 0; k < pts.size(); k += 97) {
    EXPECT_NEAR(pts[k].x, sim.trace.samples[k].x, 1e-9);
    EXPECT_NEAR(pts[k].y, sim.trace.samples[k].y, 1e-9);
  }
}

TEST(ReportTest, BareTwoColumnPoints) {
  std::istringstream in("1.5, -2\n\n3,4\n");
  const auto pts = read_points_csv(in);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_DOUBLE_EQ(pts[0].x, 0.0015);
  EXPECT_DOUBLE_EQ(pts[0].y, -0.002);
  std::istringstream bad("1,2\nx,3\n");
  EXPECT_THROW(read_points_csv(bad), ValidationError);
}

TEST(ReportTest, SummaryFields) {
  const Toolpath path = make_spiral(0.01, 0.02, 0.005, units::kPi, 0.1);
  const Simulation sim = small_run(path);
  const auto doc = summary_to_json(path, sim);
  ASSERT_EQ(doc.at("blocks").size(), 3u);
  ASSERT_EQ(doc.at("junctions").size(), 2u);
  const auto& b0 = doc.at("blocks")[0];
  EXPECT_DOUBLE_EQ(b0.at("r_mm").get<double>(), 10.0);
  EXPECT_TRUE(b0.at("limits").contains("binding"));
  EXPECT_TRUE(b0.at("limits").contains("v_st_m_min"));
  EXPECT_TRUE(b0.at("plan").is_object());
  EXPECT_DOUBLE_EQ(doc.at("total_time_s").get<double>(), sim.total_time);
}

TEST(ReportTest, InfiniteCrossingSpeedIsNull) {
  const Toolpath path = make_spiral(0.01, 0.01, 0.005, units::kPi, 0.1);
  Toolpath two = path;
  ArcBlock next = path.blocks[0];
  next.alpha_start = next.alpha_end;
  next.alpha_end = next.alpha_start + units::kPi;
  two.blocks.push_back(next);
  const Simulation sim = small_run(two);
  const auto j = junction_to_json(sim.junctions.at(0));
  EXPECT_TRUE(j.at("v_fr_m_min").is_null());
}

TEST(ReportTest, CircularityJson) {
  std::vector<Point2> pts;
  for (int i = 0; i < 12; ++i) {
    const double a = units::kTwoPi * i / 12;
    pts.push_back({0.02 * std::cos(a), 0.02 * std::sin(a)});
  }
  const auto doc = circularity_to_json(circularity_report(pts));
  EXPECT_NEAR(doc.at("radius_mm").get<double>(), 20.0, 1e-9);
  EXPECT_TRUE(doc.at("nominal_from_fit").get<bool>());
  EXPECT_LT(doc.at("g_um").get<double>(), 1e-6);
}

TEST(ReportTest, OutputIsDeterministic) {
  const Toolpath path = make_spiral(0.01, 0.02, 0.002, 0.5 * units::kPi, 0.2, 0.3);
  std::ostringstream a;
  std::ostringstream b;
  write_trace_csv(a, small_run(path).trace);
  write_trace_csv(b, small_run(path).trace);
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream sa;
  std::ostringstream sb;
  write_feed_svg(sa, small_run(path).trace);
  write_feed_svg(sb, small_run(path).trace);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_NE(sa.str().find("<svg"), std::string::npos);
}

}  // namespace
}  // namespace arcsim
