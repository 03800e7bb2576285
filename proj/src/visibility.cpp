#include <chrono>
#include <functional>
#include <queue>

#include "cnrrt/errors.hpp"
#include "cnrrt/planners.hpp"

namespace cnrrt
{

namespace
{

struct VisibilitySearch
{
    std::vector<Point> waypoints;
    int expansions = 0;
};

// A* over the implicit visibility graph. Edges are evaluated lazily when a
// vertex is expanded, so each vertex pair is collision-checked at most once.
std::optional<VisibilitySearch> search(const GridMap& map)
{
    const Point start = map.start();
    const Point goal = map.goal();
    if (map.occupied_at(start) || map.occupied_at(goal))
    {
        return std::nullopt;
    }

    std::vector<Point> vertices{start, goal};
    for (const Cell& c : extract_convex_corners(map))
    {
        vertices.push_back(cell_center(c));
    }
    const auto n = vertices.size();
    constexpr std::size_t kGoal = 1;

    std::vector<double> g(n, kInfinity);
    std::vector<int> parent(n, -1);
    std::vector<char> closed(n, 0);
    using Entry = std::pair<double, std::size_t>; // (f, vertex) - ties by lower index
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;

    g[0] = 0.0;
    open.push({distance(start, goal), 0});
    VisibilitySearch out;
    while (!open.empty())
    {
        const auto [f, u] = open.top();
        open.pop();
        if (closed[u])
        {
            continue;
        }
        closed[u] = 1;
        ++out.expansions;
        if (u == kGoal)
        {
            for (int v = static_cast<int>(kGoal); v != -1; v = parent[static_cast<std::size_t>(v)])
            {
                out.waypoints.push_back(vertices[static_cast<std::size_t>(v)]);
            }
            std::reverse(out.waypoints.begin(), out.waypoints.end());
            return out;
        }
        for (std::size_t v = 0; v < n; ++v)
        {
            if (closed[v])
            {
                continue;
            }
            const double cand = g[u] + distance(vertices[u], vertices[v]);
            if (cand < g[v] && segment_collision_free(map, vertices[u], vertices[v]))
            {
                g[v] = cand;
                parent[v] = static_cast<int>(u);
                open.push({cand + distance(vertices[v], goal), v});
            }
        }
    }
    return std::nullopt;
}

} // namespace

RunRecord plan_visibility_astar(const GridMap& map)
{
    const auto t0 = std::chrono::steady_clock::now();
    RunRecord rec;
    if (auto found = search(map))
    {
        rec.success = true;
        rec.length = path_length(found->waypoints);
        rec.smoothness = path_smoothness(found->waypoints);
        rec.iterations_used = found->expansions;
        rec.cost_trace.push_back({0, rec.length});
        rec.tree_size = static_cast<int>(found->waypoints.size());
        rec.path = PathPlan{std::move(found->waypoints)};
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

PathPlan visibility_path(const GridMap& map)
{
    auto found = search(map);
    if (!found)
    {
        throw NoPathError("goal is not reachable through the visibility graph");
    }
    return PathPlan{std::move(found->waypoints)};
}

} // namespace cnrrt
