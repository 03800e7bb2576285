#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cnrrt/planners.hpp"

namespace cnrrt::detail
{

/// Uniform bucket grid over tree node positions. Nearest and radius queries
/// break distance ties by the lowest node id.
class NodeIndex
{
public:
    NodeIndex(double width, double height, double bucket)
        : bucket_(std::max(bucket, 1.0)),
          cols_(std::max(1, static_cast<int>(std::ceil(width / bucket_)))),
          rows_(std::max(1, static_cast<int>(std::ceil(height / bucket_)))),
          buckets_(static_cast<std::size_t>(cols_) * rows_)
    {
    }

    void insert(int id, Point p) { buckets_[slot(bx(p.x), by(p.y))].push_back({id, p}); }

    int nearest(Point p) const
    {
        const int cx = bx(p.x);
        const int cy = by(p.y);
        int best = -1;
        double best_d2 = 0.0;
        const int max_ring = std::max(cols_, rows_);
        for (int ring = 0; ring <= max_ring; ++ring)
        {
            for (int y = cy - ring; y <= cy + ring; ++y)
            {
                if (y < 0 || y >= rows_)
                {
                    continue;
                }
                const bool edge_row = (y == cy - ring || y == cy + ring);
                for (int x = cx - ring; x <= cx + ring; x += (edge_row ? 1 : 2 * ring))
                {
                    if (x >= 0 && x < cols_)
                    {
                        for (const Entry& e : buckets_[slot(x, y)])
                        {
                            const double d2 = squared_distance(p, e.p);
                            if (best < 0 || d2 < best_d2 || (d2 == best_d2 && e.id < best))
                            {
                                best = e.id;
                                best_d2 = d2;
                            }
                        }
                    }
                    if (ring == 0)
                    {
                        break;
                    }
                }
            }
            // Anything in ring + 1 is at least ring * bucket away.
            if (best >= 0 && std::sqrt(best_d2) < ring * bucket_)
            {
                break;
            }
        }
        return best;
    }

    /// Ids within `radius` of p, ascending.
    std::vector<int> near(Point p, double radius) const
    {
        std::vector<int> out;
        const int x0 = bx(p.x - radius);
        const int x1 = bx(p.x + radius);
        const int y0 = by(p.y - radius);
        const int y1 = by(p.y + radius);
        const double r2 = radius * radius;
        for (int y = y0; y <= y1; ++y)
        {
            for (int x = x0; x <= x1; ++x)
            {
                for (const Entry& e : buckets_[slot(x, y)])
                {
                    if (squared_distance(p, e.p) <= r2)
                    {
                        out.push_back(e.id);
                    }
                }
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    struct Entry
    {
        int id;
        Point p;
    };

    int bx(double x) const { return std::clamp(static_cast<int>(std::floor(x / bucket_)), 0, cols_ - 1); }
    int by(double y) const { return std::clamp(static_cast<int>(std::floor(y / bucket_)), 0, rows_ - 1); }
    std::size_t slot(int x, int y) const { return static_cast<std::size_t>(y) * cols_ + x; }

    double bucket_;
    int cols_;
    int rows_;
    std::vector<std::vector<Entry>> buckets_;
};

} // namespace cnrrt::detail
