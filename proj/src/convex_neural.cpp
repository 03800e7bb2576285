#include <algorithm>
#include <chrono>

#include "cnrrt/errors.hpp"
#include "cnrrt/guidance.hpp"
#include "cnrrt/planners.hpp"

namespace cnrrt
{

CornerPartition partition_corners(const CornerSet& corners, const CornerSet& predicted, Point start, Point goal)
{
    CornerPartition part;
    part.predicted = predicted;

    std::vector<Point> hull_points;
    hull_points.reserve(predicted.size() + 2);
    for (const Cell& c : predicted)
    {
        hull_points.push_back(cell_center(c));
    }
    hull_points.push_back(start);
    hull_points.push_back(goal);
    part.hull = convex_hull(hull_points);

    CornerSet sorted_predicted = predicted;
    std::sort(sorted_predicted.begin(), sorted_predicted.end());
    for (const Cell& c : corners)
    {
        if (std::binary_search(sorted_predicted.begin(), sorted_predicted.end(), c))
        {
            continue;
        }
        (point_in_hull(cell_center(c), part.hull) ? part.inside : part.outside).push_back(c);
    }
    return part;
}

RunRecord convex_neural_plan_with_corners(const GridMap& map, const CornerSet& predicted, const PlannerConfig& cfg)
{
    const auto t0 = std::chrono::steady_clock::now();
    const CornerSet corners = extract_convex_corners(map);
    CornerPartition part = partition_corners(corners, predicted, map.start(), map.goal());
    const bool degraded = part.predicted.empty();

    ConvexStructuredSampler sampler(std::move(part.predicted), std::move(part.inside), std::move(part.outside),
                                    map.goal(), cfg, &map);
    RrtStarOptions options;
    options.early_stop = true;
    options.connect_start_goal = true;
    RunRecord rec = rrt_star_plan(map, cfg, sampler, options);
    rec.degraded_guidance = degraded;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

RunRecord convex_neural_plan(const GridMap& map, const GuidanceMask& mask, const PlannerConfig& cfg)
{
    if (!mask.matches(map))
    {
        throw DimensionMismatch("guidance mask does not match map dimensions");
    }
    const auto t0 = std::chrono::steady_clock::now();
    const CornerSet predicted = filter_predicted_corners(mask, extract_convex_corners(map));
    RunRecord rec = convex_neural_plan_with_corners(map, predicted, cfg);
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

} // namespace cnrrt
