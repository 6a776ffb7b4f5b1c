#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "arcsim/limits.hpp"
#include "arcsim/metrics.hpp"
#include "arcsim/simulate.hpp"

namespace arcsim {

// Output formats of the command-line tool. Numbers are written with fixed
// formatting so identical inputs give byte-identical files.

inline constexpr const char* kTraceHeader = "t_s,s_m,x_mm,y_mm,v_m_min,at_m_s2,an_m_s2,jt_m_s3,block";

void write_trace_csv(std::ostream& out, const KinematicTrace& trace);

nlohmann::json limits_to_json(const LimitBreakdown& lb);
nlohmann::json plan_to_json(const BlockPlan& plan);
nlohmann::json junction_to_json(const JunctionRecord& j);
nlohmann::json summary_to_json(const Toolpath& path, const Simulation& sim);
nlohmann::json circularity_to_json(const CircularityReport& rep);

// Reads XY points from either a trace CSV (x_mm / y_mm columns) or a bare
// two-column CSV in mm. A non-numeric first line is taken as a header.
std::vector<Point2> read_points_csv(std::istream& in);

// Feed rate (and tangential/normal acceleration) against time.
void write_feed_svg(std::ostream& out, const KinematicTrace& trace);

}  // namespace arcsim
