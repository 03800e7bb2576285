#include <set>
#include <stdexcept>

#include "cnrrt/errors.hpp"
#include "cnrrt/gridmap.hpp"
#include "cnrrt/planners.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cnrrt;

TEST_CASE("cell centers and point lookup")
{
    CHECK(cell_center({2, 3}) == Point{3.5, 2.5});
    CHECK(cell_of({3.99, 2.01}) == Cell{2, 3});
    GridMap m(4, 4);
    m.set_occupied(1, 2, true);
    CHECK(m.occupied_at({2.5, 1.5}));
    CHECK_FALSE(m.occupied_at({0.5, 0.5}));
    CHECK(m.occupied_at({-0.1, 0.5}));
    CHECK(m.occupied_at({4.0, 0.5}));
    CHECK(m.occupied_count() == 1);
    CHECK_THROWS_AS(GridMap(0, 3), std::invalid_argument);
}

TEST_CASE("inflate single cell with unit radius keeps diagonals free")
{
    GridMap m(11, 11);
    m.set_occupied(5, 5, true);
    const GridMap out = inflate(m, 1.0);
    std::set<Cell> occ;
    for (int r = 0; r < 11; ++r)
    {
        for (int c = 0; c < 11; ++c)
        {
            if (out.occupied(r, c))
            {
                occ.insert({r, c});
            }
        }
    }
    CHECK(occ == std::set<Cell>{{5, 5}, {4, 5}, {6, 5}, {5, 4}, {5, 6}});
}

TEST_CASE("inflate matches the brute-force distance transform")
{
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial)
    {
        const GridMap m = oracle::random_map(rng, 24, 20, 0.03);
        for (double rc : {0.0, 1.0, 1.5, 2.0, 2.5})
        {
            const GridMap got = inflate(m, rc);
            const auto want = oracle::inflate(m, rc);
            int mismatches = 0;
            for (int r = 0; r < m.height(); ++r)
            {
                for (int c = 0; c < m.width(); ++c)
                {
                    mismatches += got.occupied(r, c) != want[static_cast<std::size_t>(r) * m.width() + c];
                }
            }
            CHECK(mismatches == 0);
        }
    }
    GridMap m(3, 3);
    CHECK_THROWS_AS(inflate(m, -1.0), std::invalid_argument);
}

TEST_CASE("inflate preserves start and goal")
{
    GridMap m(8, 8);
    m.set_start({1.5, 1.5});
    m.set_goal({6.5, 6.5});
    const GridMap out = inflate(m, 2.0);
    CHECK(out.start() == m.start());
    CHECK(out.goal() == m.goal());
}

TEST_CASE("convex corners match the 3x3 enumeration")
{
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial)
    {
        const GridMap m = inflate(oracle::random_map(rng, 32, 32, 0.02), 1.0);
        CHECK(extract_convex_corners(m) == oracle::corners(m));
    }
}

TEST_CASE("convex corners of a square block are its four diagonal neighbors")
{
    GridMap m(10, 10);
    for (int r = 3; r <= 5; ++r)
    {
        for (int c = 3; c <= 5; ++c)
        {
            m.set_occupied(r, c, true);
        }
    }
    CHECK(extract_convex_corners(m) == CornerSet{{2, 2}, {2, 6}, {6, 2}, {6, 6}});
    CHECK(extract_convex_corners(GridMap(5, 5)).empty());
}

TEST_CASE("supercover cells equal the square-clipping oracle")
{
    Rng rng(9);
    const GridMap m(16, 12);
    for (int trial = 0; trial < 500; ++trial)
    {
        const Point p{rng.uniform(-2.0, 18.0), rng.uniform(-2.0, 14.0)};
        const Point q{rng.uniform(-2.0, 18.0), rng.uniform(-2.0, 14.0)};
        std::set<Cell> got;
        for (const Cell& c : supercover_cells(m, p, q))
        {
            got.insert(c);
        }
        std::set<Cell> want;
        for (int r = 0; r < m.height(); ++r)
        {
            for (int c = 0; c < m.width(); ++c)
            {
                if (oracle::segment_meets_cell(p, q, {r, c}))
                {
                    want.insert({r, c});
                }
            }
        }
        CHECK(got == want);
    }
}

TEST_CASE("supercover contains every densely sampled point of the segment")
{
    Rng rng(21);
    const GridMap m(20, 20);
    for (int trial = 0; trial < 200; ++trial)
    {
        const Point p{rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
        const Point q{rng.uniform(0.0, 20.0), rng.uniform(0.0, 20.0)};
        std::set<Cell> cover;
        for (const Cell& c : supercover_cells(m, p, q))
        {
            cover.insert(c);
        }
        const int steps = static_cast<int>(std::ceil(distance(p, q) / 0.01));
        for (int i = 0; i <= steps; ++i)
        {
            const double t = steps == 0 ? 0.0 : double(i) / steps;
            const Point s = p + t * (q - p);
            if (m.contains(s))
            {
                REQUIRE(cover.count(cell_of(s)) == 1);
            }
        }
    }
}

TEST_CASE("segment collision against corner touching and axis-aligned cases")
{
    GridMap m(6, 6);
    m.set_occupied(2, 2, true);
    CHECK_FALSE(segment_collision_free(m, {0.5, 0.5}, {5.5, 5.5}));
    CHECK(segment_collision_free(m, {0.5, 0.5}, {5.5, 0.5}));
    // Passing exactly through the cell's corner point touches it.
    CHECK_FALSE(segment_collision_free(m, {1.0, 4.0}, {4.0, 1.0}));
    CHECK_FALSE(segment_collision_free(m, {2.5, 0.5}, {2.5, 5.5}));
    CHECK(segment_collision_free(m, {3.5, 0.5}, {3.5, 5.5}));
    CHECK(segment_collision_free(m, {1.5, 1.5}, {1.5, 1.5}));
}

TEST_CASE("generated maps are deterministic, in band and feasible")
{
    for (Difficulty d : {Difficulty::sparse, Difficulty::medium, Difficulty::hard})
    {
        const GridMap a = generate_map(3, d, 96, 96);
        const GridMap b = generate_map(3, d, 96, 96);
        CHECK(a == b);
        const DifficultyBand band = difficulty_band(d);
        CHECK(a.occupied_fraction() >= band.min_fraction);
        CHECK(a.occupied_fraction() <= band.max_fraction);
        const GridMap inflated = inflate(a, kDefaultSafetyMargin);
        CHECK_FALSE(inflated.occupied_at(a.start()));
        CHECK_FALSE(inflated.occupied_at(a.goal()));
        CHECK(distance(a.start(), a.goal()) >= kMinQuerySeparation * 96);
        CHECK(plan_visibility_astar(inflated).success);
    }
    CHECK(generate_map(3, Difficulty::medium, 96, 96) != generate_map(4, Difficulty::medium, 96, 96));
    CHECK_THROWS_AS(generate_obstacles(1, Difficulty::sparse, 16, 16), std::invalid_argument);
}

TEST_CASE("difficulty names")
{
    CHECK(parse_difficulty("sparse") == Difficulty::sparse);
    CHECK(parse_difficulty("hard") == Difficulty::hard);
    CHECK_FALSE(parse_difficulty("extreme").has_value());
    CHECK(to_string(Difficulty::medium) == "medium");
}

TEST_CASE("place_query gives up on a fully blocked map")
{
    GridMap m(32, 32);
    for (int r = 0; r < 32; ++r)
    {
        for (int c = 0; c < 32; ++c)
        {
            m.set_occupied(r, c, true);
        }
    }
    Rng rng(1);
    CHECK_FALSE(place_query(m, rng, 10).has_value());
}
