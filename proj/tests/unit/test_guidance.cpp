#include <algorithm>

#include "cnrrt/errors.hpp"
#include "cnrrt/guidance.hpp"
#include "cnrrt/planners.hpp"
#include "doctest.h"

using namespace cnrrt;

namespace
{

GridMap block_map()
{
    GridMap m(48, 48);
    for (int r = 10; r < 38; ++r)
    {
        for (int c = 20; c < 28; ++c)
        {
            m.set_occupied(r, c, true);
        }
    }
    m.set_start({5.5, 24.5});
    m.set_goal({42.5, 24.5});
    return inflate(m, 2.0);
}

double point_segment(Point p, Point a, Point b)
{
    // Dense parameter scan; exact enough for a 1e-3 margin.
    double best = 1e18;
    for (int i = 0; i <= 20000; ++i)
    {
        const double t = i / 20000.0;
        best = std::min(best, distance(p, a + t * (b - a)));
    }
    return best;
}

} // namespace

TEST_CASE("waypoint region mask is the union of interior disks minus endpoints")
{
    const GridMap m = block_map();
    const PathPlan path = visibility_path(m);
    REQUIRE(path.waypoints.size() >= 3);
    const GuidanceMask mask = oracle_guidance(m);
    for (int r = 0; r < m.height(); ++r)
    {
        for (int c = 0; c < m.width(); ++c)
        {
            const Cell cell{r, c};
            bool want = false;
            for (std::size_t i = 1; i + 1 < path.waypoints.size(); ++i)
            {
                want = want || distance(cell_center(cell), path.waypoints[i]) <= kOracleRegionRadius;
            }
            if (cell == cell_of(m.start()) || cell == cell_of(m.goal()))
            {
                want = false;
            }
            CHECK(mask.test(cell) == want);
        }
    }
}

TEST_CASE("corridor mask covers cells near the polyline")
{
    const GridMap m = block_map();
    const PathPlan path = visibility_path(m);
    const GuidanceMask mask = oracle_corridor(m, 3.0);
    for (int r = 0; r < m.height(); r += 3)
    {
        for (int c = 0; c < m.width(); c += 3)
        {
            double d = 1e18;
            for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i)
            {
                d = std::min(d, point_segment(cell_center({r, c}), path.waypoints[i], path.waypoints[i + 1]));
            }
            if (std::abs(d - 3.0) > 1e-3)
            {
                CHECK(mask.test({r, c}) == (d < 3.0));
            }
        }
    }
    CHECK(mask.test(cell_of(m.start())));
}

TEST_CASE("oracle guidance needs a feasible query")
{
    GridMap m(20, 20);
    for (int c = 0; c < 20; ++c)
    {
        m.set_occupied(10, c, true);
    }
    m.set_start({5.5, 2.5});
    m.set_goal({5.5, 17.5});
    CHECK_THROWS_AS(oracle_guidance(m), NoPathError);
}

TEST_CASE("predicted corners keep mask order and reject foreign masks")
{
    const CornerSet corners{{1, 1}, {2, 5}, {7, 7}};
    GuidanceMask mask(8, 8);
    mask.set({7, 7});
    mask.set({1, 1});
    CHECK(filter_predicted_corners(mask, corners) == CornerSet{{1, 1}, {7, 7}});
    CHECK_THROWS_AS(filter_predicted_corners(GuidanceMask(4, 4), corners), DimensionMismatch);
}

TEST_CASE("noise spec labels round trip")
{
    CHECK(NoiseSpec::parse("shift:2").label() == "shift:2");
    CHECK(NoiseSpec::parse("delete:0.3").label() == "delete:0.3");
    CHECK(NoiseSpec::parse("delete:0.3").fraction == doctest::Approx(0.3));
    CHECK_THROWS_AS(NoiseSpec::parse("delete:1.5"), ConfigError);
    CHECK_THROWS_AS(NoiseSpec::parse("blur:1"), ConfigError);
    CHECK_THROWS_AS(NoiseSpec::parse("shift"), ConfigError);
    CHECK_THROWS_AS(NoiseSpec::parse("shift:x"), ConfigError);
}

TEST_CASE("corner perturbation")
{
    GridMap m(50, 50);
    m.set_occupied(0, 0, true);
    CornerSet corners;
    for (int i = 1; i < 49; ++i)
    {
        corners.push_back({i, i});
    }

    NoiseSpec none = NoiseSpec::parse("delete:0");
    CHECK(perturb_corners(corners, none, m) == corners);
    NoiseSpec still = NoiseSpec::parse("shift:0");
    CHECK(perturb_corners(corners, still, m) == corners);

    NoiseSpec all = NoiseSpec::parse("delete:1");
    CHECK(perturb_corners(corners, all, m).empty());

    NoiseSpec half = NoiseSpec::parse("delete:0.5");
    half.seed = 9;
    const CornerSet kept = perturb_corners(corners, half, m);
    CHECK(kept == perturb_corners(corners, half, m));
    CHECK(std::includes(corners.begin(), corners.end(), kept.begin(), kept.end()));
    CHECK(kept.size() > 5);
    CHECK(kept.size() < 43);

    NoiseSpec shift = NoiseSpec::parse("shift:4");
    shift.seed = 2;
    const CornerSet moved = perturb_corners(corners, shift, m);
    CHECK(moved != corners);
    for (const Cell& c : moved)
    {
        CHECK(m.in_bounds(c));
        CHECK_FALSE(m.occupied(c));
        CHECK(std::count(moved.begin(), moved.end(), c) == 1);
    }
}
