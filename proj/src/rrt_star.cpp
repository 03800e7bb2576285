#include <algorithm>
#include <chrono>
#include <cmath>

#include "cnrrt/errors.hpp"
#include "cnrrt/planners.hpp"
#include "node_index.hpp"

namespace cnrrt
{

namespace
{

void finish_record(RunRecord& rec, std::vector<Point> waypoints)
{
    rec.success = true;
    rec.length = path_length(waypoints);
    rec.smoothness = path_smoothness(waypoints);
    rec.path = PathPlan{std::move(waypoints)};
}

} // namespace

RunRecord rrt_star_plan(const GridMap& map, const PlannerConfig& cfg, Sampler& sampler, const RrtStarOptions& options)
{
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    const Point start = map.start();
    const Point goal = map.goal();
    RunRecord rec;
    Rng rng(cfg.seed);

    if (map.occupied_at(start) || map.occupied_at(goal))
    {
        rec.iterations_used = 0;
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rec;
    }

    if (options.connect_start_goal && segment_collision_free(map, start, goal))
    {
        rec.tree_size = 1;
        rec.iterations_used = 1;
        finish_record(rec, start == goal ? std::vector<Point>{start} : std::vector<Point>{start, goal});
        rec.cost_trace.push_back({0, rec.length});
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return rec;
    }

    Tree tree(start);
    detail::NodeIndex index(map.width(), map.height(), cfg.near_radius);
    index.insert(0, start);

    // Nodes that connect to the goal with a feasible final segment.
    std::vector<int> goal_links;
    auto best_goal = [&]() {
        double best = kInfinity;
        int best_id = -1;
        for (int id : goal_links)
        {
            const double c = tree[id].cost + distance(tree[id].position, goal);
            if (c < best)
            {
                best = c;
                best_id = id;
            }
        }
        return std::pair{best, best_id};
    };
    auto try_goal_link = [&](int id) {
        const Point p = tree[id].position;
        if (distance(p, goal) <= cfg.goal_tolerance && segment_collision_free(map, p, goal))
        {
            goal_links.push_back(id);
        }
    };
    try_goal_link(0);

    rec.cost_trace.reserve(static_cast<std::size_t>(cfg.max_iterations));
    for (int k = 0; k < cfg.max_iterations; ++k)
    {
        rec.iterations_used = k + 1;
        const Point x_rand = sampler.sample(rng, best_goal().first);
        const int nearest = index.nearest(x_rand);
        const SteerResult s = steer(tree[nearest].position, x_rand, cfg.step);

        if (!s.degenerate && segment_collision_free(map, tree[nearest].position, s.point))
        {
            std::vector<int> neighbors = index.near(s.point, cfg.near_radius);
            if (!std::binary_search(neighbors.begin(), neighbors.end(), nearest))
            {
                neighbors.insert(std::lower_bound(neighbors.begin(), neighbors.end(), nearest), nearest);
            }
            if (const auto choice = choose_parent(tree, s.point, neighbors, map))
            {
                const int id = tree.add(s.point, choice->parent);
                index.insert(id, s.point);
                rewire(tree, id, neighbors, map);
                try_goal_link(id);
            }
        }

        rec.cost_trace.push_back({k, best_goal().first});

        if (cfg.check_invariants)
        {
            if (auto err = tree.validate(&map))
            {
                throw std::logic_error("tree invariant violated at iteration " + std::to_string(k) + ": " + *err);
            }
        }
        if (options.early_stop && early_stop_check(rec.cost_trace, cfg.stall_window, cfg.stall_tolerance))
        {
            break;
        }
    }

    rec.tree_size = static_cast<int>(tree.size());
    const auto [best, best_id] = best_goal();
    if (best_id >= 0)
    {
        std::vector<Point> waypoints = tree.path_to(best_id);
        if (waypoints.back() != goal)
        {
            waypoints.push_back(goal);
        }
        finish_record(rec, std::move(waypoints));
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

RunRecord plan_rrt_star(const GridMap& map, const PlannerConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    UniformSampler sampler(map);
    RunRecord rec = rrt_star_plan(map, cfg, sampler);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

RunRecord plan_neural(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    NeuralSampler sampler(map, mask, cfg.alpha);
    RunRecord rec = rrt_star_plan(map, cfg, sampler);
    rec.degraded_guidance = sampler.predicted_cell_count() == 0;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

RunRecord plan_neural_informed(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    NeuralInformedSampler sampler(map, mask, cfg.alpha);
    RunRecord rec = rrt_star_plan(map, cfg, sampler);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::string_view to_string(PlannerKind k)
{
    switch (k)
    {
    case PlannerKind::rrt_star:
        return "rrt_star";
    case PlannerKind::neural:
        return "neural";
    case PlannerKind::neural_informed:
        return "neural_informed";
    case PlannerKind::convex_neural:
        return "convex_neural";
    case PlannerKind::visibility:
        return "visibility";
    }
    return "unknown";
}

std::optional<PlannerKind> parse_planner(std::string_view name)
{
    for (PlannerKind k : {PlannerKind::rrt_star, PlannerKind::neural, PlannerKind::neural_informed,
                          PlannerKind::convex_neural, PlannerKind::visibility})
    {
        if (name == to_string(k))
        {
            return k;
        }
    }
    return std::nullopt;
}

} // namespace cnrrt
