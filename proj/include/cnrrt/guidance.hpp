#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cnrrt/geometry.hpp"
#include "cnrrt/gridmap.hpp"

namespace cnrrt
{

/// Label radius around each interior waypoint.
inline constexpr double kOracleRegionRadius = 6.0;

/// Region mask built from the visibility path of `map` (inflated): every cell
/// whose center lies within `radius` of an interior waypoint, never the start
/// or goal cell. Throws NoPathError when the query is infeasible.
GuidanceMask oracle_guidance(const GridMap& map, double radius = kOracleRegionRadius);

/// Region mask from a known path (same rule as oracle_guidance).
GuidanceMask waypoint_region_mask(const GridMap& map, const PathPlan& path, double radius);

/// Dense corridor mask: cells within `radius` of any point of the visibility
/// polyline. Used as the oracle for the path-region baselines.
GuidanceMask oracle_corridor(const GridMap& map, double radius = kOracleRegionRadius);

/// Corridor mask around a known path (same rule as oracle_corridor).
GuidanceMask path_corridor_mask(const GridMap& map, const PathPlan& path, double radius);

/// Corners whose cell is set in the mask, order preserved.
CornerSet filter_predicted_corners(const GuidanceMask& mask, const CornerSet& corners);

enum class NoiseKind
{
    gaussian_shift,
    deletion,
};

struct NoiseSpec
{
    NoiseKind kind = NoiseKind::deletion;
    double sigma = 0.0;    // per-axis shift, cells
    double fraction = 0.0; // deletion probability
    std::uint64_t seed = 0;

    /// Compact label: "shift:2", "delete:0.3".
    std::string label() const;
    /// Parses the label form; throws ConfigError.
    static NoiseSpec parse(const std::string& text);
};

/// Gaussian shift (rounded, clamped, dropped on occupied cells, deduplicated)
/// or independent deletion. Deterministic per spec.seed.
CornerSet perturb_corners(const CornerSet& corners, const NoiseSpec& spec, const GridMap& map);

struct DatasetSpec
{
    std::uint64_t seed = 0;
    int count = 200;
    int pairs_per_map = 10;
    Difficulty difficulty = Difficulty::medium;
    int width = 224;
    int height = 224;
    double safety_margin = kDefaultSafetyMargin;
    double label_radius = kOracleRegionRadius;
};

struct DatasetRecord
{
    int map = 0;
    int pair = 0;
    std::string input; // relative to the output directory
    std::string label;
    double path_length = 0.0;
};

/// Writes input PPMs, label PGMs, manifest.jsonl and dataset.json under
/// out_dir. On failure the files written so far are removed and the error
/// is rethrown.
std::vector<DatasetRecord> dataset_export(const DatasetSpec& spec, const std::filesystem::path& out_dir);

} // namespace cnrrt
