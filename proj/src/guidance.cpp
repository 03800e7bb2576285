#include "cnrrt/guidance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "cnrrt/errors.hpp"
#include "cnrrt/planners.hpp"
#include "cnrrt/rng.hpp"

namespace cnrrt
{

namespace
{

void mark_disk(GuidanceMask& mask, Point center, double radius)
{
    const double r2 = radius * radius + 1e-9;
    const int r0 = static_cast<int>(std::floor(center.y - radius - 1));
    const int r1 = static_cast<int>(std::ceil(center.y + radius + 1));
    const int c0 = static_cast<int>(std::floor(center.x - radius - 1));
    const int c1 = static_cast<int>(std::ceil(center.x + radius + 1));
    for (int r = r0; r <= r1; ++r)
    {
        for (int c = c0; c <= c1; ++c)
        {
            const Cell cell{r, c};
            if (mask.in_bounds(cell) && squared_distance(cell_center(cell), center) <= r2)
            {
                mask.set(cell);
            }
        }
    }
}

double segment_distance(Point p, Point a, Point b)
{
    const Point ab = b - a;
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    if (len2 == 0.0)
    {
        return distance(p, a);
    }
    const double t = std::clamp(((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2, 0.0, 1.0);
    return distance(p, a + t * ab);
}

} // namespace

GuidanceMask waypoint_region_mask(const GridMap& map, const PathPlan& path, double radius)
{
    GuidanceMask mask(map.width(), map.height());
    const auto& wp = path.waypoints;
    for (std::size_t i = 1; i + 1 < wp.size(); ++i)
    {
        mark_disk(mask, wp[i], radius);
    }
    for (Point endpoint : {map.start(), map.goal()})
    {
        const Cell c = cell_of(endpoint);
        if (mask.in_bounds(c))
        {
            mask.set(c, false);
        }
    }
    return mask;
}

GuidanceMask oracle_guidance(const GridMap& map, double radius)
{
    return waypoint_region_mask(map, visibility_path(map), radius);
}

GuidanceMask oracle_corridor(const GridMap& map, double radius)
{
    return path_corridor_mask(map, visibility_path(map), radius);
}

GuidanceMask path_corridor_mask(const GridMap& map, const PathPlan& path, double radius)
{
    GuidanceMask mask(map.width(), map.height());
    const auto& wp = path.waypoints;
    for (std::size_t i = 0; i + 1 < wp.size(); ++i)
    {
        const Point a = wp[i];
        const Point b = wp[i + 1];
        const int r0 = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - radius - 1)));
        const int r1 = std::min(map.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + radius + 1)));
        const int c0 = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - radius - 1)));
        const int c1 = std::min(map.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + radius + 1)));
        for (int r = r0; r <= r1; ++r)
        {
            for (int c = c0; c <= c1; ++c)
            {
                if (segment_distance(cell_center({r, c}), a, b) <= radius + 1e-9)
                {
                    mask.set({r, c});
                }
            }
        }
    }
    return mask;
}

CornerSet filter_predicted_corners(const GuidanceMask& mask, const CornerSet& corners)
{
    CornerSet out;
    for (const Cell& c : corners)
    {
        if (!mask.in_bounds(c))
        {
            throw DimensionMismatch("corner outside the guidance mask");
        }
        if (mask.test(c))
        {
            out.push_back(c);
        }
    }
    return out;
}

std::string NoiseSpec::label() const
{
    auto fmt = [](double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, res.ptr);
    };
    return kind == NoiseKind::gaussian_shift ? "shift:" + fmt(sigma) : "delete:" + fmt(fraction);
}

NoiseSpec NoiseSpec::parse(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
    {
        throw ConfigError("noise spec must look like shift:<sigma> or delete:<fraction>, got '" + text + "'");
    }
    const std::string kind = text.substr(0, colon);
    const std::string value = text.substr(colon + 1);
    double v = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
    {
        throw ConfigError("bad noise level in '" + text + "'");
    }
    NoiseSpec spec;
    if (kind == "shift")
    {
        if (v < 0.0)
        {
            throw ConfigError("shift sigma must be non-negative");
        }
        spec.kind = NoiseKind::gaussian_shift;
        spec.sigma = v;
    }
    else if (kind == "delete")
    {
        if (v < 0.0 || v > 1.0)
        {
            throw ConfigError("deletion fraction must lie in [0, 1]");
        }
        spec.kind = NoiseKind::deletion;
        spec.fraction = v;
    }
    else
    {
        throw ConfigError("unknown noise kind '" + kind + "'");
    }
    return spec;
}

CornerSet perturb_corners(const CornerSet& corners, const NoiseSpec& spec, const GridMap& map)
{
    Rng rng(spec.seed);
    CornerSet out;
    if (spec.kind == NoiseKind::deletion)
    {
        for (const Cell& c : corners)
        {
            if (!rng.bernoulli(spec.fraction))
            {
                out.push_back(c);
            }
        }
        return out;
    }

    for (const Cell& c : corners)
    {
        Cell shifted = c;
        if (spec.sigma > 0.0)
        {
            const double dr = std::round(spec.sigma * rng.normal());
            const double dc = std::round(spec.sigma * rng.normal());
            shifted.row = std::clamp(c.row + static_cast<int>(dr), 0, map.height() - 1);
            shifted.col = std::clamp(c.col + static_cast<int>(dc), 0, map.width() - 1);
        }
        if (!map.occupied(shifted) && std::find(out.begin(), out.end(), shifted) == out.end())
        {
            out.push_back(shifted);
        }
    }
    return out;
}

} // namespace cnrrt
