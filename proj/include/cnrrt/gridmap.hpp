#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnrrt/rng.hpp"

namespace cnrrt
{

/// Continuous position in cell units. Cell (row, col) covers the unit square
/// [col, col + 1) x [row, row + 1), so its center is (col + 0.5, row + 0.5).
struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point a, Point b) = default;
};

inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline double squared_distance(Point a, Point b)
{
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    return dx * dx + dy * dy;
}

struct Cell
{
    int row = 0;
    int col = 0;

    friend constexpr auto operator<=>(Cell, Cell) = default; // row-major order
};

constexpr Point cell_center(Cell c) { return {c.col + 0.5, c.row + 0.5}; }
inline Cell cell_of(Point p)
{
    return {static_cast<int>(std::floor(p.y)), static_cast<int>(std::floor(p.x))};
}

/// Binary occupancy grid (row-major, true = occupied) with a start/goal query.
class GridMap
{
public:
    GridMap(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t cell_count() const { return occupancy_.size(); }

    bool in_bounds(int row, int col) const
    {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }
    bool in_bounds(Cell c) const { return in_bounds(c.row, c.col); }
    bool contains(Point p) const
    {
        return p.x >= 0.0 && p.y >= 0.0 && p.x < width_ && p.y < height_;
    }

    bool occupied(int row, int col) const
    {
        return occupancy_[static_cast<std::size_t>(row) * width_ + col] != 0;
    }
    bool occupied(Cell c) const { return occupied(c.row, c.col); }
    /// Occupancy of the cell containing p; points outside the grid count as occupied.
    bool occupied_at(Point p) const
    {
        return !contains(p) || occupied(cell_of(p));
    }
    void set_occupied(int row, int col, bool value)
    {
        occupancy_[static_cast<std::size_t>(row) * width_ + col] = value ? 1 : 0;
    }
    void set_occupied(Cell c, bool value) { set_occupied(c.row, c.col, value); }

    std::span<const std::uint8_t> occupancy() const { return occupancy_; }
    std::size_t occupied_count() const;
    double occupied_fraction() const
    {
        return static_cast<double>(occupied_count()) / static_cast<double>(cell_count());
    }

    Point start() const { return start_; }
    Point goal() const { return goal_; }
    void set_start(Point p) { start_ = p; }
    void set_goal(Point p) { goal_ = p; }

    friend bool operator==(const GridMap&, const GridMap&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> occupancy_;
    Point start_;
    Point goal_;
};

/// Free cells of the inflated map with exactly one occupied 8-neighbor,
/// in row-major order.
using CornerSet = std::vector<Cell>;

/// Binary grid of predicted promising regions.
class GuidanceMask
{
public:
    GuidanceMask(int width, int height) : width_(width), height_(height), bits_(static_cast<std::size_t>(width) * height, 0) {}

    int width() const { return width_; }
    int height() const { return height_; }
    bool in_bounds(Cell c) const { return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_; }

    bool test(Cell c) const { return bits_[static_cast<std::size_t>(c.row) * width_ + c.col] != 0; }
    void set(Cell c, bool value = true) { bits_[static_cast<std::size_t>(c.row) * width_ + c.col] = value ? 1 : 0; }

    std::span<const std::uint8_t> bits() const { return bits_; }
    std::size_t count() const;
    bool empty() const { return count() == 0; }
    bool matches(const GridMap& map) const { return width_ == map.width() && height_ == map.height(); }

    friend bool operator==(const GuidanceMask&, const GuidanceMask&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> bits_;
};

/// Default safety margin (cells) used for planning maps.
inline constexpr double kDefaultSafetyMargin = 2.0;

/// Marks every cell whose center is within `radius` of an occupied cell center.
GridMap inflate(const GridMap& map, double radius);

CornerSet extract_convex_corners(const GridMap& inflated);

/// True iff the closed segment pq touches no occupied cell (supercover test).
/// Cells outside the grid are ignored.
bool segment_collision_free(const GridMap& map, Point p, Point q);

/// Cells touched by the closed segment pq, clipped to the grid, column-major
/// traversal order. Exposed for tests and rendering.
std::vector<Cell> supercover_cells(const GridMap& map, Point p, Point q);

enum class Difficulty
{
    sparse,
    medium,
    hard,
};

std::string_view to_string(Difficulty d);
std::optional<Difficulty> parse_difficulty(std::string_view name);

struct DifficultyBand
{
    double min_fraction;
    double max_fraction;
    int min_polygons;
    int max_polygons;
};

DifficultyBand difficulty_band(Difficulty d);

inline constexpr int kMinPolygonVertices = 3;
inline constexpr int kMaxPolygonVertices = 10;
inline constexpr int kGenerationAttempts = 50;

/// Random convex and notched (concave) polygons rasterized onto an empty grid,
/// with an occupied fraction inside the difficulty band. No start/goal.
GridMap generate_obstacles(std::uint64_t seed, Difficulty difficulty, int width, int height);

/// Picks a start/goal pair on free cells of `inflated` that are far enough
/// apart and connected by the visibility planner. Returns nullopt after
/// `tries` failed candidates.
struct Query
{
    Point start;
    Point goal;
};
std::optional<Query> place_query(const GridMap& inflated, Rng& rng, int tries);

/// Minimum start-goal separation as a fraction of min(width, height).
inline constexpr double kMinQuerySeparation = 0.5;

/// Deterministic map for (seed, difficulty, size): obstacles plus a feasible
/// start/goal pair. Throws GenerationError after kGenerationAttempts.
GridMap generate_map(std::uint64_t seed, Difficulty difficulty, int width, int height,
                     double safety_margin = kDefaultSafetyMargin);

} // namespace cnrrt
