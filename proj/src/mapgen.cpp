#include <algorithm>
#include <cmath>
#include <numbers>

#include "cnrrt/errors.hpp"
#include "cnrrt/gridmap.hpp"
#include "cnrrt/planners.hpp"
#include "cnrrt/rng.hpp"

namespace cnrrt
{

namespace
{

using Polygon = std::vector<Point>;

double polygon_area(const Polygon& poly)
{
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        const Point p = poly[i];
        const Point q = poly[(i + 1) % poly.size()];
        a += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(a);
}

// Crossing-number test; the polygon may be concave.
bool inside_polygon(const Polygon& poly, Point p)
{
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++)
    {
        const Point a = poly[i];
        const Point b = poly[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x)
        {
            in = !in;
        }
    }
    return in;
}

void rasterize(GridMap& map, const Polygon& poly)
{
    double x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
    for (const Point& p : poly)
    {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const int r0 = std::max(0, static_cast<int>(std::floor(y0)));
    const int r1 = std::min(map.height() - 1, static_cast<int>(std::ceil(y1)));
    const int c0 = std::max(0, static_cast<int>(std::floor(x0)));
    const int c1 = std::min(map.width() - 1, static_cast<int>(std::ceil(x1)));
    for (int r = r0; r <= r1; ++r)
    {
        for (int c = c0; c <= c1; ++c)
        {
            if (inside_polygon(poly, cell_center({r, c})))
            {
                map.set_occupied(r, c, true);
            }
        }
    }
}

// Convex polygon: vertices on a circle at jittered, evenly spread angles,
// then an anisotropic scale and rotation (both preserve convexity).
Polygon random_convex(Rng& rng, int vertices, double target_area, Point center)
{
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    Polygon unit;
    for (int i = 0; i < vertices; ++i)
    {
        const double t = phase + 2.0 * std::numbers::pi * (i + rng.uniform(-0.35, 0.35)) / vertices;
        unit.push_back({std::cos(t), std::sin(t)});
    }
    const double stretch = rng.uniform(0.6, 1.0);
    const double rot = rng.uniform(0.0, std::numbers::pi);
    for (Point& p : unit)
    {
        const Point s{p.x, p.y * stretch};
        p = {s.x * std::cos(rot) - s.y * std::sin(rot), s.x * std::sin(rot) + s.y * std::cos(rot)};
    }
    const double scale = std::sqrt(target_area / polygon_area(unit));
    for (Point& p : unit)
    {
        p = center + scale * p;
    }
    return unit;
}

// Notch: insert a vertex on one edge and pull it toward the centroid, which
// creates a reflex vertex.
Polygon notch(Rng& rng, Polygon poly)
{
    Point centroid{0.0, 0.0};
    for (const Point& p : poly)
    {
        centroid = centroid + p;
    }
    centroid = (1.0 / static_cast<double>(poly.size())) * centroid;

    std::size_t longest = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
    {
        const double d = distance(poly[i], poly[(i + 1) % poly.size()]);
        if (d > best)
        {
            best = d;
            longest = i;
        }
    }
    const Point a = poly[longest];
    const Point b = poly[(longest + 1) % poly.size()];
    const Point mid = 0.5 * (a + b);
    const double depth = rng.uniform(0.45, 0.8);
    const Point inner = mid + depth * (centroid - mid);
    poly.insert(poly.begin() + static_cast<std::ptrdiff_t>(longest) + 1, inner);
    return poly;
}

GridMap obstacles_attempt(Rng& rng, Difficulty difficulty, int width, int height)
{
    const DifficultyBand band = difficulty_band(difficulty);
    const int count = rng.uniform_int(band.min_polygons, band.max_polygons);
    // Aim inside the band; overlap removes a little area, so overshoot slightly.
    const double span = band.max_fraction - band.min_fraction;
    const double target = rng.uniform(band.min_fraction + 0.2 * span, band.max_fraction - 0.2 * span);
    const double total_area = 1.08 * target * width * height;

    std::vector<double> weights;
    double weight_sum = 0.0;
    for (int i = 0; i < count; ++i)
    {
        weights.push_back(rng.uniform(0.5, 1.5));
        weight_sum += weights.back();
    }

    GridMap map(width, height);
    for (int i = 0; i < count; ++i)
    {
        const double area = total_area * weights[static_cast<std::size_t>(i)] / weight_sum;
        const bool concave = rng.bernoulli(0.5);
        const int vertices = concave ? rng.uniform_int(kMinPolygonVertices, kMaxPolygonVertices - 1)
                                     : rng.uniform_int(kMinPolygonVertices, kMaxPolygonVertices);
        const Point center{rng.uniform(0.05, 0.95) * width, rng.uniform(0.05, 0.95) * height};
        Polygon poly = random_convex(rng, vertices, area, center);
        if (concave)
        {
            poly = notch(rng, std::move(poly));
        }
        rasterize(map, poly);
    }
    return map;
}

bool in_band(const GridMap& map, Difficulty difficulty)
{
    const DifficultyBand band = difficulty_band(difficulty);
    const double f = map.occupied_fraction();
    return f >= band.min_fraction && f <= band.max_fraction;
}

} // namespace

GridMap generate_obstacles(std::uint64_t seed, Difficulty difficulty, int width, int height)
{
    if (width < 32 || height < 32)
    {
        throw std::invalid_argument("generated maps must be at least 32x32");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < kGenerationAttempts; ++attempt)
    {
        GridMap map = obstacles_attempt(rng, difficulty, width, height);
        if (in_band(map, difficulty))
        {
            return map;
        }
    }
    throw GenerationError("could not hit the occupancy band for " + std::string(to_string(difficulty)));
}

std::optional<Query> place_query(const GridMap& inflated, Rng& rng, int tries)
{
    std::vector<Cell> free;
    for (int r = 0; r < inflated.height(); ++r)
    {
        for (int c = 0; c < inflated.width(); ++c)
        {
            if (!inflated.occupied(r, c))
            {
                free.push_back({r, c});
            }
        }
    }
    if (free.size() < 2)
    {
        return std::nullopt;
    }
    const double min_sep = kMinQuerySeparation * std::min(inflated.width(), inflated.height());
    GridMap probe = inflated;
    for (int t = 0; t < tries; ++t)
    {
        const Point s = cell_center(free[rng.index(free.size())]);
        const Point g = cell_center(free[rng.index(free.size())]);
        if (distance(s, g) < min_sep)
        {
            continue;
        }
        probe.set_start(s);
        probe.set_goal(g);
        if (plan_visibility_astar(probe).success)
        {
            return Query{s, g};
        }
    }
    return std::nullopt;
}

GridMap generate_map(std::uint64_t seed, Difficulty difficulty, int width, int height, double safety_margin)
{
    if (width < 32 || height < 32)
    {
        throw std::invalid_argument("generated maps must be at least 32x32");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < kGenerationAttempts; ++attempt)
    {
        GridMap map = obstacles_attempt(rng, difficulty, width, height);
        if (!in_band(map, difficulty))
        {
            continue;
        }
        const GridMap inflated = inflate(map, safety_margin);
        if (const auto q = place_query(inflated, rng, 20))
        {
            map.set_start(q->start);
            map.set_goal(q->goal);
            return map;
        }
    }
    throw GenerationError("no feasible " + std::string(to_string(difficulty)) + " map within " +
                          std::to_string(kGenerationAttempts) + " attempts");
}

} // namespace cnrrt
