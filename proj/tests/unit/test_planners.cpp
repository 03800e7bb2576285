#include <algorithm>
#include <stdexcept>

#include "cnrrt/errors.hpp"
#include "cnrrt/guidance.hpp"
#include "cnrrt/planners.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cnrrt;
using doctest::Approx;

namespace
{

GridMap free_map(int n, Point s, Point g)
{
    GridMap m(n, n);
    m.set_start(s);
    m.set_goal(g);
    return m;
}

// A wall with a gap forces a detour.
GridMap wall_map()
{
    GridMap m(64, 64);
    for (int r = 0; r < 48; ++r)
    {
        for (int c = 30; c < 34; ++c)
        {
            m.set_occupied(r, c, true);
        }
    }
    m.set_start({10.5, 10.5});
    m.set_goal({54.5, 10.5});
    return inflate(m, 2.0);
}

bool valid_path(const GridMap& m, const PathPlan& p)
{
    if (p.waypoints.front() != m.start() || p.waypoints.back() != m.goal())
    {
        return false;
    }
    for (std::size_t i = 1; i < p.waypoints.size(); ++i)
    {
        if (!oracle::segment_free(m, p.waypoints[i - 1], p.waypoints[i]))
        {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_CASE("visibility planner on a free map is the straight segment")
{
    const GridMap m = free_map(32, {2.5, 3.5}, {29.5, 20.5});
    const RunRecord r = plan_visibility_astar(m);
    REQUIRE(r.success);
    CHECK(r.length == Approx(distance(m.start(), m.goal())));
    CHECK(r.path->waypoints.size() == 2);
    CHECK(r.smoothness == 0.0);
}

TEST_CASE("visibility planner matches brute-force Dijkstra")
{
    Rng rng(8);
    int compared = 0;
    for (int trial = 0; trial < 40; ++trial)
    {
        GridMap m = inflate(oracle::random_map(rng, 32, 32, 0.01), 1.0);
        std::vector<Cell> free;
        for (int r = 0; r < 32; ++r)
        {
            for (int c = 0; c < 32; ++c)
            {
                if (!m.occupied(r, c))
                {
                    free.push_back({r, c});
                }
            }
        }
        if (free.size() < 2)
        {
            continue;
        }
        m.set_start(cell_center(free[rng.index(free.size())]));
        m.set_goal(cell_center(free[rng.index(free.size())]));
        const double want = oracle::visibility_length(m);
        const RunRecord got = plan_visibility_astar(m);
        CHECK(got.success == std::isfinite(want));
        if (got.success)
        {
            CHECK(got.length == Approx(want).epsilon(1e-9));
            CHECK(valid_path(m, *got.path));
            ++compared;
        }
    }
    CHECK(compared > 10);
}

TEST_CASE("visibility planner reports enclosed goals")
{
    GridMap m(21, 21);
    for (int r = 5; r <= 15; ++r)
    {
        for (int c = 5; c <= 15; ++c)
        {
            if (r == 5 || r == 15 || c == 5 || c == 15)
            {
                m.set_occupied(r, c, true);
            }
        }
    }
    m.set_start({1.5, 1.5});
    m.set_goal({10.5, 10.5});
    CHECK_FALSE(plan_visibility_astar(m).success);
    CHECK_THROWS_AS(visibility_path(m), NoPathError);
    PlannerConfig cfg;
    cfg.max_iterations = 200;
    CHECK_FALSE(plan_rrt_star(m, cfg).success);
}

TEST_CASE("plain RRT* is near the Euclidean bound on a free map")
{
    const GridMap m = free_map(64, {5.5, 5.5}, {58.5, 58.5});
    const double bound = distance(m.start(), m.goal());
    int good = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
    {
        PlannerConfig cfg;
        cfg.seed = seed;
        const RunRecord r = plan_rrt_star(m, cfg);
        good += r.success && r.length <= 1.05 * bound;
    }
    CHECK(good >= 95);
}

TEST_CASE("every planner returns valid paths and a full cost trace")
{
    const GridMap m = wall_map();
    const GuidanceMask region = oracle_guidance(m);
    const GuidanceMask corridor = oracle_corridor(m);
    PlannerConfig cfg;
    cfg.seed = 3;
    cfg.check_invariants = true;
    const double straight = distance(m.start(), m.goal());
    for (const RunRecord& r : {plan_rrt_star(m, cfg), plan_neural(m, corridor, cfg),
                               plan_neural_informed(m, corridor, cfg), convex_neural_plan(m, region, cfg)})
    {
        CHECK(static_cast<int>(r.cost_trace.size()) == r.iterations_used);
        for (std::size_t k = 0; k < r.cost_trace.size(); ++k)
        {
            CHECK(r.cost_trace[k].iteration == static_cast<int>(k));
            if (k > 0)
            {
                CHECK(r.cost_trace[k].cost <= r.cost_trace[k - 1].cost);
            }
        }
        if (r.success)
        {
            CHECK(valid_path(m, *r.path));
            CHECK(r.length == Approx(path_length(*r.path)));
            CHECK(r.length >= straight - 1e-9);
            CHECK(r.cost_trace.back().cost == Approx(r.length));
        }
    }
}

TEST_CASE("planners are deterministic for a fixed seed")
{
    const GridMap m = wall_map();
    const GuidanceMask region = oracle_guidance(m);
    PlannerConfig cfg;
    cfg.seed = 42;
    CHECK(plan_rrt_star(m, cfg).same_outcome(plan_rrt_star(m, cfg)));
    CHECK(plan_neural(m, region, cfg).same_outcome(plan_neural(m, region, cfg)));
    CHECK(plan_neural_informed(m, region, cfg).same_outcome(plan_neural_informed(m, region, cfg)));
    CHECK(convex_neural_plan(m, region, cfg).same_outcome(convex_neural_plan(m, region, cfg)));
    PlannerConfig other = cfg;
    other.seed = 43;
    CHECK_FALSE(plan_rrt_star(m, cfg).same_outcome(plan_rrt_star(m, other)));
}

TEST_CASE("convex-neural early stop fires only after a stalled window")
{
    const GridMap m = wall_map();
    const GuidanceMask region = oracle_guidance(m);
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        PlannerConfig cfg;
        cfg.seed = seed;
        const RunRecord r = convex_neural_plan(m, region, cfg);
        const auto& t = r.cost_trace;
        const int w = cfg.stall_window;
        for (std::size_t k = static_cast<std::size_t>(w); k + 1 < t.size(); ++k)
        {
            const bool stalled = std::isfinite(t[k].cost) && std::isfinite(t[k - w].cost) &&
                                 std::abs(t[k].cost - t[k - w].cost) < cfg.stall_tolerance;
            CHECK_FALSE(stalled);
        }
        if (r.iterations_used < cfg.max_iterations)
        {
            REQUIRE(t.size() > static_cast<std::size_t>(w));
            CHECK(std::abs(t.back().cost - t[t.size() - 1 - w].cost) < cfg.stall_tolerance);
        }
    }
}

TEST_CASE("convex-neural connects a visible goal directly")
{
    const GridMap m = free_map(40, {3.5, 3.5}, {30.5, 25.5});
    PlannerConfig cfg;
    const RunRecord r = convex_neural_plan(m, GuidanceMask(40, 40), cfg);
    REQUIRE(r.success);
    CHECK(r.length == Approx(distance(m.start(), m.goal())));
    CHECK(r.iterations_used == 1);
    CHECK(r.degraded_guidance);
}

TEST_CASE("planners fail cleanly on blocked endpoints")
{
    GridMap m = free_map(20, {1.5, 1.5}, {18.5, 18.5});
    m.set_occupied(1, 1, true);
    PlannerConfig cfg;
    const RunRecord r = plan_rrt_star(m, cfg);
    CHECK_FALSE(r.success);
    CHECK(r.iterations_used == 0);
    CHECK_THROWS_AS(convex_neural_plan(m, GuidanceMask(3, 3), cfg), DimensionMismatch);
}

TEST_CASE("corner partition splits by the guidance hull")
{
    const CornerSet corners{{1, 1}, {1, 5}, {5, 9}, {9, 1}, {18, 18}};
    const CornerSet predicted{{5, 9}};
    const CornerPartition p = partition_corners(corners, predicted, {0.5, 0.5}, {10.5, 0.5});
    CHECK(p.predicted == predicted);
    // Hull: (0.5,0.5), (10.5,0.5), (9.5,5.5).
    CHECK(p.inside == CornerSet{{1, 5}});
    CHECK(p.outside == CornerSet{{1, 1}, {9, 1}, {18, 18}});
}

TEST_CASE("planner config validation and names")
{
    PlannerConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.alpha_pred = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = PlannerConfig{};
    cfg.step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(parse_planner("convex_neural") == PlannerKind::convex_neural);
    CHECK_FALSE(parse_planner("prm").has_value());
    CHECK(to_string(PlannerKind::neural_informed) == "neural_informed");
    CHECK(needs_guidance(PlannerKind::neural));
    CHECK_FALSE(needs_guidance(PlannerKind::visibility));
}
