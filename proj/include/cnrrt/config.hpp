#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cnrrt/bench.hpp"

namespace cnrrt
{

/// Benchmark settings. Files are flat `key = value` lines (with `#`
/// comments) or a flat JSON object; list values are comma separated.
struct SuiteConfig
{
    std::uint64_t seed = 0;
    std::vector<Difficulty> difficulties{Difficulty::sparse, Difficulty::medium, Difficulty::hard};
    int maps = 6; // per difficulty
    int width = 224;
    int height = 224;
    int trials = 10;
    std::vector<PlannerKind> planners{PlannerKind::rrt_star, PlannerKind::neural, PlannerKind::neural_informed,
                                      PlannerKind::convex_neural, PlannerKind::visibility};
    PlannerConfig planner;
    int jobs = 1;
    std::string map_dir; // load every *.ppm here instead of generating
    std::string mask_dir; // optional predicted masks, matched by file stem
    std::vector<double> alpha_pred_values{0.0, 0.5, 0.9};
    std::vector<double> alpha_explore_values{0.2};
    std::vector<std::string> noise{"shift:2", "shift:4", "delete:0.3", "delete:0.6"};
    int convergence_seeds = 20;
};

/// Flat key/value pairs from key=value text or a JSON object.
std::map<std::string, std::string> parse_flat_config(const std::string& text);

/// Applies one setting; throws ConfigError on unknown keys or bad values.
void apply_setting(SuiteConfig& cfg, const std::string& key, const std::string& value);

SuiteConfig parse_suite_config(const std::string& text);
SuiteConfig load_suite_config(const std::filesystem::path& path);

/// Every key accepted by apply_setting, in documentation order.
std::vector<std::string> suite_config_keys();

/// Maps (generated or loaded) and planners for a config. Generated maps use
/// seeds derived from (seed, difficulty, index) and skip layouts that fail
/// to generate.
ScenarioSuite build_suite(const SuiteConfig& cfg);

std::vector<SweepPoint> sweep_grid(const SuiteConfig& cfg);
std::vector<NoiseSpec> noise_specs(const SuiteConfig& cfg);

} // namespace cnrrt
