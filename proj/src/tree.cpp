#include <cmath>
#include <string>

#include "cnrrt/errors.hpp"
#include "cnrrt/planners.hpp"

namespace cnrrt
{

Tree::Tree(Point root)
{
    nodes_.push_back({root, kNoParent, 0.0, {}});
}

int Tree::add(Point position, int parent)
{
    const int id = static_cast<int>(nodes_.size());
    TreeNode& p = nodes_[static_cast<std::size_t>(parent)];
    const double cost = p.cost + distance(p.position, position);
    p.children.push_back(id);
    nodes_.push_back({position, parent, cost, {}});
    return id;
}

void Tree::reparent(int id, int new_parent)
{
    TreeNode& n = nodes_[static_cast<std::size_t>(id)];
    if (n.parent != kNoParent)
    {
        auto& siblings = nodes_[static_cast<std::size_t>(n.parent)].children;
        std::erase(siblings, id);
    }
    n.parent = new_parent;
    nodes_[static_cast<std::size_t>(new_parent)].children.push_back(id);

    // Refresh costs down the subtree (iterative DFS).
    std::vector<int> stack{id};
    while (!stack.empty())
    {
        const int cur = stack.back();
        stack.pop_back();
        TreeNode& c = nodes_[static_cast<std::size_t>(cur)];
        const TreeNode& par = nodes_[static_cast<std::size_t>(c.parent)];
        c.cost = par.cost + distance(par.position, c.position);
        stack.insert(stack.end(), c.children.begin(), c.children.end());
    }
}

std::vector<Point> Tree::path_to(int id) const
{
    std::vector<Point> path;
    for (int cur = id; cur != kNoParent; cur = node(cur).parent)
    {
        path.push_back(node(cur).position);
    }
    return {path.rbegin(), path.rend()};
}

std::optional<std::string> Tree::validate(const GridMap* map, double tolerance) const
{
    const auto n = static_cast<int>(nodes_.size());
    if (nodes_.front().parent != kNoParent || nodes_.front().cost != 0.0)
    {
        return "root must have no parent and zero cost";
    }
    for (int i = 1; i < n; ++i)
    {
        const TreeNode& c = node(i);
        if (c.parent < 0 || c.parent >= n || c.parent == i)
        {
            return "node " + std::to_string(i) + " has an invalid parent";
        }
        const TreeNode& p = node(c.parent);
        const double expect = p.cost + distance(p.position, c.position);
        if (!(std::abs(c.cost - expect) < tolerance))
        {
            return "node " + std::to_string(i) + " cost is inconsistent with its parent";
        }
        if (map && !segment_collision_free(*map, p.position, c.position))
        {
            return "edge into node " + std::to_string(i) + " is in collision";
        }
    }
    // Every parent chain must reach the root within n steps.
    std::vector<char> state(static_cast<std::size_t>(n), 0); // 0 unknown, 1 on stack, 2 rooted
    state[0] = 2;
    for (int i = 1; i < n; ++i)
    {
        std::vector<int> chain;
        int cur = i;
        while (state[static_cast<std::size_t>(cur)] == 0)
        {
            state[static_cast<std::size_t>(cur)] = 1;
            chain.push_back(cur);
            cur = node(cur).parent;
        }
        if (state[static_cast<std::size_t>(cur)] == 1)
        {
            return "parent links contain a cycle through node " + std::to_string(cur);
        }
        for (int c : chain)
        {
            state[static_cast<std::size_t>(c)] = 2;
        }
    }
    return std::nullopt;
}

std::optional<ParentChoice> choose_parent(const Tree& tree, Point x_new, std::span<const int> neighbors,
                                          const GridMap& map)
{
    std::optional<ParentChoice> best;
    for (int id : neighbors)
    {
        const TreeNode& n = tree[id];
        const double cost = n.cost + distance(n.position, x_new);
        if (best && (cost > best->cost || (cost == best->cost && id > best->parent)))
        {
            continue;
        }
        if (segment_collision_free(map, n.position, x_new))
        {
            best = ParentChoice{id, cost};
        }
    }
    return best;
}

int rewire(Tree& tree, int new_id, std::span<const int> neighbors, const GridMap& map)
{
    int changed = 0;
    const Point x_new = tree[new_id].position;
    for (int id : neighbors)
    {
        if (id == new_id || id == tree[new_id].parent || id == 0)
        {
            continue;
        }
        const TreeNode& n = tree[id];
        const double via_new = tree[new_id].cost + distance(x_new, n.position);
        // Strict improvement beyond rounding noise; this also rules out
        // reparenting an ancestor of new_id (triangle inequality).
        if (via_new < n.cost - 1e-12 && segment_collision_free(map, x_new, n.position))
        {
            tree.reparent(id, new_id);
            ++changed;
        }
    }
    return changed;
}

bool early_stop_check(std::span<const CostSample> trace, int window, double tolerance)
{
    if (window < 1 || trace.size() < static_cast<std::size_t>(window) + 1)
    {
        return false;
    }
    const double now = trace.back().cost;
    const double then = trace[trace.size() - 1 - static_cast<std::size_t>(window)].cost;
    if (!std::isfinite(now) || !std::isfinite(then))
    {
        return false;
    }
    return std::abs(now - then) < tolerance;
}

void PlannerConfig::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
        {
            throw ConfigError(what);
        }
    };
    auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
    require(step > 0.0, "step must be positive");
    require(near_radius > 0.0, "near_radius must be positive");
    require(max_iterations >= 1, "max_iterations must be at least 1");
    require(probability(alpha), "alpha must lie in [0, 1]");
    require(probability(alpha_pred), "alpha_pred must lie in [0, 1]");
    require(probability(alpha_explore), "alpha_explore must lie in [0, 1]");
    require(probability(goal_bias), "goal_bias must lie in [0, 1]");
    require(stall_window >= 1, "stall_window must be at least 1");
    require(stall_tolerance > 0.0, "stall_tolerance must be positive");
    require(goal_tolerance >= 0.0, "goal_tolerance must be non-negative");
    require(safety_margin >= 0.0, "safety_margin must be non-negative");
}

bool RunRecord::same_outcome(const RunRecord& o) const
{
    return success == o.success && path == o.path && length == o.length && smoothness == o.smoothness &&
           iterations_used == o.iterations_used && cost_trace == o.cost_trace && tree_size == o.tree_size &&
           degraded_guidance == o.degraded_guidance;
}

} // namespace cnrrt
