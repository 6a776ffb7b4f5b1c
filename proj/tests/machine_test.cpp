#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "arcsim/error.hpp"
#include "arcsim/machine.hpp"
#include "arcsim/units.hpp"

namespace arcsim {
namespace {

using nlohmann::json;

std::filesystem::path data_file() {
  return std::filesystem::path(ARCSIM_SOURCE_DIR) / "data" / "mikron_ucp710.json";
}

json table1() {
  return json::parse(R"({
    "axes":[{"name":"X","vmax_mm_min":30000,"amax_m_s2":2.5,"jmax_m_s3":5.0},
            {"name":"Y","vmax_mm_min":30000,"amax_m_s2":3.0,"jmax_m_s3":5.0}],
    "ncu":{"jcurv_m_s3":10.0,"rjct":0.6,"rjcc":0.4,"tcy_ms":12,"dt_ms":12}})");
}

TEST(MachineTest, LoadsReferenceFileInSi) {
  const MachineParameters m = load_machine(data_file());
  EXPECT_EQ(m.x().v_max, 0.5);
  EXPECT_EQ(m.x().a_max, 2.5);
  EXPECT_EQ(m.x().j_max, 5.0);
  EXPECT_EQ(m.y().v_max, 0.5);
  EXPECT_EQ(m.y().a_max, 3.0);
  EXPECT_EQ(m.y().j_max, 5.0);
  EXPECT_EQ(m.ncu.j_curv, 10.0);
  EXPECT_EQ(m.ncu.r_jct, 0.6);
  EXPECT_EQ(m.ncu.r_jcc, 0.4);
  EXPECT_DOUBLE_EQ(m.ncu.t_cy, 0.012);
  EXPECT_DOUBLE_EQ(m.ncu.delta_t, 0.012);
  EXPECT_EQ(m, mikron_ucp710());
}

TEST(MachineTest, FeedConversionIsExact) {
  const MachineParameters m = machine_from_json(table1());
  EXPECT_EQ(m.x().v_max, 0.5);
}

TEST(MachineTest, ZeroAccelerationNamesField) {
  json doc = table1();
  doc["axes"][0]["amax_m_s2"] = 0.0;
  try {
    machine_from_json(doc);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("a_max"), std::string::npos) << e.what();
  }
}

TEST(MachineTest, SchemaViolations) {
  json missing_ncu = table1();
  missing_ncu.erase("ncu");
  EXPECT_THROW(machine_from_json(missing_ncu), ValidationError);

  json no_y = table1();
  no_y["axes"].erase(1);
  EXPECT_THROW(machine_from_json(no_y), ValidationError);

  json bad_type = table1();
  bad_type["ncu"]["tcy_ms"] = "twelve";
  EXPECT_THROW(machine_from_json(bad_type), ValidationError);

  json bad_rate = table1();
  bad_rate["ncu"]["rjct"] = 1.5;
  EXPECT_THROW(machine_from_json(bad_rate), ValidationError);

  json negative_jerk = table1();
  negative_jerk["axes"][1]["jmax_m_s3"] = -5.0;
  EXPECT_THROW(machine_from_json(negative_jerk), ValidationError);

  EXPECT_THROW(load_machine("/nonexistent/machine.json"), ValidationError);
}

TEST(MachineTest, CrossingTimeDefaultsToCycleTime) {
  json doc = table1();
  doc["ncu"].erase("dt_ms");
  doc["ncu"]["tcy_ms"] = 4;
  const MachineParameters m = machine_from_json(doc);
  EXPECT_EQ(m.ncu.delta_t, m.ncu.t_cy);
  EXPECT_DOUBLE_EQ(m.ncu.t_cy, 0.004);
}

TEST(MachineTest, ExtraAxesAreKept) {
  const MachineParameters m = load_machine(data_file());
  EXPECT_EQ(m.axis("Z").j_max, 50.0);
  const PlanarCapacity caps = planar(m);
  EXPECT_EQ(caps.x.name, "X");
  EXPECT_EQ(caps.y.name, "Y");
}

TEST(MachineTest, SaveLoadRoundTripIsBitExact) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(1e-3, 100.0);
  std::uniform_real_distribution<double> rate(1e-3, 1.0);
  const auto file = std::filesystem::temp_directory_path() / "arcsim_machine_roundtrip.json";
  for (int i = 0; i < 200; ++i) {
    MachineParameters m;
    // Speeds and cycle times start out in file units, as they do when loaded.
    auto speed = [&] { return units::mm_min_to_m_s(1000.0 * pos(rng)); };
    m.axes = {{"X", speed(), pos(rng), pos(rng)}, {"Y", speed(), pos(rng), pos(rng)}};
    m.ncu = {pos(rng), rate(rng), rate(rng), units::ms_to_s(pos(rng)), units::ms_to_s(pos(rng))};
    save_machine(file, m);
    EXPECT_EQ(load_machine(file), m) << "iteration " << i;
  }
  std::filesystem::remove(file);
}

}  // namespace
}  // namespace arcsim
