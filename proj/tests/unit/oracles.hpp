#pragma once

// Brute-force reference implementations shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "cnrrt/geometry.hpp"
#include "cnrrt/gridmap.hpp"
#include "cnrrt/planners.hpp"
#include "cnrrt/rng.hpp"

namespace oracle
{

using cnrrt::Cell;
using cnrrt::GridMap;
using cnrrt::Point;

/// Random occupancy with the given fill probability plus a few solid blocks.
inline GridMap random_map(cnrrt::Rng& rng, int w, int h, double fill)
{
    GridMap m(w, h);
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            if (rng.bernoulli(fill))
            {
                m.set_occupied(r, c, true);
            }
        }
    }
    const int blocks = rng.uniform_int(0, 6);
    for (int b = 0; b < blocks; ++b)
    {
        const int r0 = rng.uniform_int(0, h - 1);
        const int c0 = rng.uniform_int(0, w - 1);
        const int bh = rng.uniform_int(1, std::max(1, h / 4));
        const int bw = rng.uniform_int(1, std::max(1, w / 4));
        for (int r = r0; r < std::min(h, r0 + bh); ++r)
        {
            for (int c = c0; c < std::min(w, c0 + bw); ++c)
            {
                m.set_occupied(r, c, true);
            }
        }
    }
    return m;
}

/// Every cell whose center is within `radius` of an occupied cell center,
/// by exhaustive search over all occupied cells.
inline std::vector<bool> inflate(const GridMap& m, double radius)
{
    const int w = m.width();
    const int h = m.height();
    std::vector<Cell> occ;
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            if (m.occupied(r, c))
            {
                occ.push_back({r, c});
            }
        }
    }
    std::vector<bool> out(static_cast<std::size_t>(w) * h, false);
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            double best = std::numeric_limits<double>::infinity();
            for (const Cell& o : occ)
            {
                best = std::min(best, std::hypot(double(o.row - r), double(o.col - c)));
            }
            out[static_cast<std::size_t>(r) * w + c] = best <= radius;
        }
    }
    return out;
}

/// Free cells with exactly one occupied cell among the in-bounds 8-neighbors.
inline std::vector<Cell> corners(const GridMap& m)
{
    std::vector<Cell> out;
    for (int r = 0; r < m.height(); ++r)
    {
        for (int c = 0; c < m.width(); ++c)
        {
            if (m.occupied(r, c))
            {
                continue;
            }
            int n = 0;
            for (int dr = -1; dr <= 1; ++dr)
            {
                for (int dc = -1; dc <= 1; ++dc)
                {
                    if ((dr != 0 || dc != 0) && m.in_bounds(r + dr, c + dc) && m.occupied(r + dr, c + dc))
                    {
                        ++n;
                    }
                }
            }
            if (n == 1)
            {
                out.push_back({r, c});
            }
        }
    }
    return out;
}

/// Liang-Barsky clip of the closed segment pq against the closed cell square.
inline bool segment_meets_cell(Point p, Point q, Cell cell)
{
    double t0 = 0.0;
    double t1 = 1.0;
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;
    const double lo[2] = {double(cell.col), double(cell.row)};
    const double hi[2] = {cell.col + 1.0, cell.row + 1.0};
    const double s[2] = {p.x, p.y};
    const double d[2] = {dx, dy};
    for (int a = 0; a < 2; ++a)
    {
        if (d[a] == 0.0)
        {
            if (s[a] < lo[a] || s[a] > hi[a])
            {
                return false;
            }
            continue;
        }
        double ta = (lo[a] - s[a]) / d[a];
        double tb = (hi[a] - s[a]) / d[a];
        if (ta > tb)
        {
            std::swap(ta, tb);
        }
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 > t1)
        {
            return false;
        }
    }
    return true;
}

inline bool segment_free(const GridMap& m, Point p, Point q)
{
    for (int r = 0; r < m.height(); ++r)
    {
        for (int c = 0; c < m.width(); ++c)
        {
            if (m.occupied(r, c) && segment_meets_cell(p, q, {r, c}))
            {
                return false;
            }
        }
    }
    return true;
}

/// Dijkstra over the complete visibility graph of {start, goal} and corner
/// centers, using the brute-force segment test. Infinity when unreachable.
inline double visibility_length(const GridMap& inflated)
{
    std::vector<Point> v{inflated.start(), inflated.goal()};
    for (const Cell& c : corners(inflated))
    {
        v.push_back(cnrrt::cell_center(c));
    }
    const std::size_t n = v.size();
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::vector<bool> done(n, false);
    dist[0] = 0.0;
    for (std::size_t it = 0; it < n; ++it)
    {
        std::size_t u = n;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!done[i] && (u == n || dist[i] < dist[u]))
            {
                u = i;
            }
        }
        if (u == n || !std::isfinite(dist[u]))
        {
            break;
        }
        done[u] = true;
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!done[i])
            {
                const double nd = dist[u] + cnrrt::distance(v[u], v[i]);
                if (nd < dist[i] && segment_free(inflated, v[u], v[i]))
                {
                    dist[i] = nd;
                }
            }
        }
    }
    return dist[1];
}

} // namespace oracle
