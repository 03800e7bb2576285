#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cnrrt/geometry.hpp"
#include "cnrrt/gridmap.hpp"
#include "cnrrt/rng.hpp"

namespace cnrrt
{

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr int kNoParent = -1;

struct TreeNode
{
    Point position;
    int parent = kNoParent;
    double cost = 0.0;
    std::vector<int> children;
};

/// RRT* search tree. Node 0 is the root; every other node stores its
/// cost-from-root, kept equal to parent cost + edge length.
class Tree
{
public:
    explicit Tree(Point root);

    std::size_t size() const { return nodes_.size(); }
    const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const TreeNode& operator[](int id) const { return node(id); }

    int add(Point position, int parent);

    /// Moves `id` under `new_parent` and refreshes the cost of its whole subtree.
    void reparent(int id, int new_parent);

    /// Root-to-node positions.
    std::vector<Point> path_to(int id) const;

    /// Checks cost consistency, acyclicity and (when `map` is given) edge
    /// feasibility. Returns a description of the first violation.
    std::optional<std::string> validate(const GridMap* map, double tolerance = 1e-9) const;

private:
    std::vector<TreeNode> nodes_;
};

struct PlannerConfig
{
    double step = 5.0;             // steering step (eta)
    double near_radius = 7.0;      // fixed rewiring/parent radius
    int max_iterations = 1000;
    double alpha = 0.5;            // mask vs uniform mix for the neural baselines
    double alpha_pred = 0.5;
    double alpha_explore = 0.2;
    int stall_window = 50;         // early-stop window t_s
    double stall_tolerance = 1e-3; // early-stop epsilon
    double goal_tolerance = 5.0;
    double goal_bias = 0.05;
    double safety_margin = kDefaultSafetyMargin; // inflation and corner jitter radius
    std::uint64_t seed = 0;
    bool check_invariants = false; // validate the tree after every iteration

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

struct CostSample
{
    int iteration = 0;
    double cost = kInfinity;

    friend bool operator==(const CostSample&, const CostSample&) = default;
};

struct RunRecord
{
    bool success = false;
    std::optional<PathPlan> path;
    double length = 0.0;
    double smoothness = 0.0;
    double wall_time = 0.0; // seconds
    int iterations_used = 0;
    std::vector<CostSample> cost_trace; // one entry per executed iteration
    int tree_size = 0;
    bool degraded_guidance = false;

    /// Equality ignoring wall_time.
    bool same_outcome(const RunRecord& other) const;
};

// ---------------------------------------------------------------------------
// RRT* building blocks

struct ParentChoice
{
    int parent;
    double cost;
};

/// Cheapest collision-free parent among `neighbors`; ties go to the lowest id.
std::optional<ParentChoice> choose_parent(const Tree& tree, Point x_new, std::span<const int> neighbors,
                                          const GridMap& map);

/// Reparents every neighbor that becomes cheaper through `new_id`.
/// Returns the number of rewired nodes.
int rewire(Tree& tree, int new_id, std::span<const int> neighbors, const GridMap& map);

/// |c_k - c_{k - window}| < tolerance on the last entry of the trace, with
/// both costs finite.
bool early_stop_check(std::span<const CostSample> trace, int window, double tolerance);

// ---------------------------------------------------------------------------
// Samplers

/// Source of x_rand. `best_cost` is the current best solution cost (infinite
/// before the first solution).
class Sampler
{
public:
    virtual ~Sampler() = default;
    virtual Point sample(Rng& rng, double best_cost) = 0;
};

/// Uniform over free cells, jittered uniformly inside the chosen cell.
class UniformSampler final : public Sampler
{
public:
    explicit UniformSampler(const GridMap& map);
    Point sample(Rng& rng, double best_cost) override;

private:
    std::vector<Cell> free_cells_;
};

/// Mask cells with probability alpha, otherwise uniform over free cells.
class NeuralSampler final : public Sampler
{
public:
    NeuralSampler(const GridMap& map, const GuidanceMask& mask, double alpha);
    Point sample(Rng& rng, double best_cost) override;

    std::size_t predicted_cell_count() const { return predicted_.size(); }

private:
    std::vector<Cell> free_cells_;
    std::vector<Cell> predicted_;
    double alpha_;
};

/// NeuralSampler whose uniform branch becomes informed-ellipse sampling once a
/// solution exists; predicted cells outside the ellipse are rejected.
class NeuralInformedSampler final : public Sampler
{
public:
    NeuralInformedSampler(const GridMap& map, const GuidanceMask& mask, double alpha);
    Point sample(Rng& rng, double best_cost) override;

    static constexpr int kRejectionTries = 64;

private:
    Point sample_ellipse(Rng& rng, const EllipseSpec& ellipse);

    const GridMap* map_;
    std::vector<Cell> free_cells_;
    std::vector<Cell> predicted_;
    double alpha_;
};

enum class CornerPool
{
    goal,
    predicted, // C_p
    inside,    // C_ri
    outside,   // C_ro
};

struct StructuredDraw
{
    Point point;
    CornerPool pool;
};

/// Three-way discrete sampler over predicted corners, remaining corners inside
/// the guidance hull and corners outside it, plus goal biasing. Predicted
/// corners are jittered uniformly inside a disk of radius `safety_margin`.
class ConvexStructuredSampler final : public Sampler
{
public:
    ConvexStructuredSampler(CornerSet predicted, CornerSet inside, CornerSet outside, Point goal,
                            const PlannerConfig& cfg, const GridMap* map);

    Point sample(Rng& rng, double) override { return draw(rng).point; }
    StructuredDraw draw(Rng& rng);

    static constexpr int kJitterTries = 16;

private:
    Point jitter(Cell corner, Rng& rng) const;
    Point from_pool(CornerPool pool, Rng& rng) const;

    CornerSet predicted_;
    CornerSet inside_;
    CornerSet outside_;
    Point goal_;
    double goal_bias_;
    double alpha_pred_;
    double alpha_explore_;
    double jitter_radius_;
    const GridMap* map_;
};

// ---------------------------------------------------------------------------
// Planners. Every planner takes the inflated planning map.

enum class PlannerKind
{
    rrt_star,
    neural,
    neural_informed,
    convex_neural,
    visibility,
};

std::string_view to_string(PlannerKind k);
std::optional<PlannerKind> parse_planner(std::string_view name);
inline bool needs_guidance(PlannerKind k)
{
    return k == PlannerKind::neural || k == PlannerKind::neural_informed || k == PlannerKind::convex_neural;
}

struct RrtStarOptions
{
    bool early_stop = false;
    bool connect_start_goal = false; // return the straight segment when start sees goal
};

/// Generic RRT* loop over a pluggable sampler.
RunRecord rrt_star_plan(const GridMap& map, const PlannerConfig& cfg, Sampler& sampler,
                        const RrtStarOptions& options = {});

RunRecord plan_rrt_star(const GridMap& map, const PlannerConfig& cfg);
RunRecord plan_neural(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg);
RunRecord plan_neural_informed(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg);

/// Visibility graph over {start, goal} and convex corner centers, searched
/// with A* (Euclidean heuristic). Deterministic; success = false when the
/// goal is unreachable.
RunRecord plan_visibility_astar(const GridMap& map);

/// Shortest visibility polyline or NoPathError.
PathPlan visibility_path(const GridMap& map);

/// Corner pools used by the convex-neural planner.
struct CornerPartition
{
    CornerSet predicted;
    CornerSet inside;
    CornerSet outside;
    HullPolygon hull;
};

/// Hull over predicted corner centers plus start and goal; every corner not
/// in `predicted` goes to `inside` or `outside` of it.
CornerPartition partition_corners(const CornerSet& corners, const CornerSet& predicted, Point start, Point goal);

RunRecord convex_neural_plan(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg);

/// Same planner with an explicit predicted-corner set (used for noise studies).
RunRecord convex_neural_plan_with_corners(const GridMap& map, const CornerSet& predicted, const PlannerConfig& cfg);

} // namespace cnrrt
