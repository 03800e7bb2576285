#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cnrrt/bench.hpp"

namespace cnrrt
{

inline constexpr const char* kTrialCsvHeader = "map,planner,trial,success,length,smoothness,time_s,iters";

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);

std::string trials_csv(const std::vector<TrialRecord>& trials);
std::string stats_csv(const std::vector<AggregateStats>& stats);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string robustness_csv(const std::vector<RobustnessRow>& rows);
/// Long format: planner,iteration,mean_cost (undefined entries left empty).
std::string convergence_csv(const std::vector<ConvergenceCurve>& curves);

/// RunRecord as JSON; infinite costs are written as null.
std::string run_record_json(const RunRecord& rec, int indent = 2);
RunRecord parse_run_record_json(const std::string& text);

/// Map raster (one rect per horizontal run of occupied cells), each path as
/// one line element per segment, start and goal markers.
std::string render_paths_svg(const GridMap& map, const std::vector<PathPlan>& paths, int scale = 4);

/// Line plot of mean cost against iteration, one polyline per curve.
std::string render_convergence_svg(const std::vector<ConvergenceCurve>& curves);

} // namespace cnrrt
