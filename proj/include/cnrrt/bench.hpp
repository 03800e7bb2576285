#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cnrrt/guidance.hpp"
#include "cnrrt/planners.hpp"

namespace cnrrt
{

/// A benchmark map: the raw obstacle grid with its query, plus an optional
/// externally predicted mask. Without a mask the oracle guidance is used.
struct MapEntry
{
    std::string id;
    GridMap map;
    std::optional<GuidanceMask> mask;
};

struct PlannerEntry
{
    std::string label;
    PlannerKind kind = PlannerKind::convex_neural;
    PlannerConfig config;
};

struct ScenarioSuite
{
    std::vector<MapEntry> maps;
    std::vector<PlannerEntry> planners;
    int trials_per_map = 10;
    std::uint64_t seed = 0;
    double safety_margin = kDefaultSafetyMargin;
    int jobs = 1;

    /// Throws ConfigError when the suite cannot run.
    void validate() const;
};

/// Planning-ready form of a map: inflated grid, corners and guidance.
struct PreparedMap
{
    std::string id;
    GridMap inflated;
    CornerSet corners;
    GuidanceMask region_mask;   // waypoint disks (convex-neural guidance)
    GuidanceMask corridor_mask; // dense path corridor (neural baselines)
    CornerSet predicted;        // corners inside region_mask
};

PreparedMap prepare_map(const MapEntry& entry, double safety_margin);

/// Trial seed from (suite seed, map id, planner kind, trial index).
std::uint64_t trial_seed(std::uint64_t suite_seed, std::string_view map_id, PlannerKind kind, int trial);

/// Runs one planner on a prepared map. Exceptions are reported as failures.
RunRecord run_trial(const PreparedMap& map, PlannerKind kind, const PlannerConfig& cfg);

struct TrialRecord
{
    std::string map;
    std::string planner;
    int trial = 0;
    std::uint64_t seed = 0;
    RunRecord record;
    std::string error; // non-empty when the trial threw
};

struct AggregateStats
{
    std::string map;
    std::string planner;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0; // percent
    double length_mean = 0.0;  // over successful trials
    double length_std = 0.0;
    double time_mean = 0.0;    // over all trials
    double time_std = 0.0;
    double smoothness_mean = 0.0;
    double smoothness_std = 0.0;
    double iterations_mean = 0.0;
};

struct SuiteResult
{
    std::vector<TrialRecord> trials; // (map, planner, trial) order
    std::vector<AggregateStats> stats;
};

SuiteResult run_suite(const ScenarioSuite& suite);

/// Per (map, planner) statistics in first-appearance order.
std::vector<AggregateStats> aggregate(const std::vector<TrialRecord>& trials);

/// Statistics of one record group regardless of map.
AggregateStats summarize(const std::vector<const RunRecord*>& records);

/// Runs `fn(i)` for i in [0, n) on `jobs` worker threads.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

struct SweepPoint
{
    double alpha_pred = 0.5;
    double alpha_explore = 0.2;
};

struct SweepRow
{
    SweepPoint point;
    AggregateStats stats; // pooled over every map and trial
};

/// Convex-neural over every (alpha_pred, alpha_explore) pair.
std::vector<SweepRow> sensitivity_sweep(const ScenarioSuite& base, const std::vector<SweepPoint>& grid);

struct ConvergenceCurve
{
    std::string planner;
    std::vector<double> mean_cost; // one entry per iteration; infinity where undefined
    int solved_seeds = 0;
    int seeds = 0;

    double final_cost() const;
    /// First iteration whose mean cost is within `fraction` of the final cost,
    /// or -1 when the curve never becomes finite.
    int iterations_to_within(double fraction) const;
};

/// Extends a trace to `length` entries by carrying the last cost forward.
std::vector<double> align_trace(const std::vector<CostSample>& trace, int length);

/// Mean best-cost curve per planner over `seeds` trials on one map. The mean
/// at an iteration is taken over the seeds that eventually succeed and is
/// defined once all of them have a solution.
std::vector<ConvergenceCurve> convergence_trace(const MapEntry& map, const std::vector<PlannerEntry>& planners,
                                                int seeds, std::uint64_t suite_seed, double safety_margin,
                                                int jobs = 1);

struct RobustnessRow
{
    std::string noise; // "clean" or a NoiseSpec label
    AggregateStats stats;
    double length_delta = 0.0;     // percent vs clean
    double time_delta = 0.0;       // percent vs clean
    double smoothness_delta = 0.0; // percent vs clean
    double success_delta = 0.0;    // percentage points vs clean
};

/// Convex-neural with clean and perturbed predicted corners. The first row
/// is the clean baseline.
std::vector<RobustnessRow> robustness_study(const ScenarioSuite& base, const std::vector<NoiseSpec>& noise);

} // namespace cnrrt
