#include "cnrrt/gridmap.hpp"

#include <algorithm>
#include <stdexcept>

namespace cnrrt
{

GridMap::GridMap(int width, int height)
    : width_(width), height_(height), start_{0.5, 0.5}, goal_{0.5, 0.5}
{
    if (width <= 0 || height <= 0)
    {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    occupancy_.assign(static_cast<std::size_t>(width) * height, 0);
}

std::size_t GridMap::occupied_count() const
{
    return static_cast<std::size_t>(std::count(occupancy_.begin(), occupancy_.end(), std::uint8_t{1}));
}

std::size_t GuidanceMask::count() const
{
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

GridMap inflate(const GridMap& map, double radius)
{
    if (!(radius >= 0.0))
    {
        throw std::invalid_argument("inflation radius must be non-negative");
    }
    GridMap out = map;
    const int reach = static_cast<int>(std::floor(radius));
    if (reach == 0)
    {
        return out;
    }

    // Disk offsets measured center to center.
    std::vector<Cell> offsets;
    const double r2 = radius * radius + 1e-9;
    for (int dr = -reach; dr <= reach; ++dr)
    {
        for (int dc = -reach; dc <= reach; ++dc)
        {
            if (dr * dr + dc * dc <= r2 && (dr != 0 || dc != 0))
            {
                offsets.push_back({dr, dc});
            }
        }
    }

    const int w = map.width();
    const int h = map.height();
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            if (!map.occupied(r, c))
            {
                continue;
            }
            // Interior cells (all 4-neighbors occupied) add nothing their
            // boundary neighbors do not already cover.
            if (r > 0 && r + 1 < h && c > 0 && c + 1 < w && map.occupied(r - 1, c) &&
                map.occupied(r + 1, c) && map.occupied(r, c - 1) && map.occupied(r, c + 1))
            {
                continue;
            }
            for (const Cell& o : offsets)
            {
                const int rr = r + o.row;
                const int cc = c + o.col;
                if (out.in_bounds(rr, cc))
                {
                    out.set_occupied(rr, cc, true);
                }
            }
        }
    }
    return out;
}

CornerSet extract_convex_corners(const GridMap& inflated)
{
    const int w = inflated.width();
    const int h = inflated.height();

    // Separable 3x3 box sum over a zero-padded occupancy grid.
    std::vector<int> row_sum(static_cast<std::size_t>(w) * h, 0);
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            int s = inflated.occupied(r, c) ? 1 : 0;
            if (c > 0 && inflated.occupied(r, c - 1)) ++s;
            if (c + 1 < w && inflated.occupied(r, c + 1)) ++s;
            row_sum[static_cast<std::size_t>(r) * w + c] = s;
        }
    }

    CornerSet corners;
    for (int r = 0; r < h; ++r)
    {
        for (int c = 0; c < w; ++c)
        {
            if (inflated.occupied(r, c))
            {
                continue;
            }
            int s = row_sum[static_cast<std::size_t>(r) * w + c];
            if (r > 0) s += row_sum[static_cast<std::size_t>(r - 1) * w + c];
            if (r + 1 < h) s += row_sum[static_cast<std::size_t>(r + 1) * w + c];
            if (s == 1)
            {
                corners.push_back({r, c});
            }
        }
    }
    return corners;
}

namespace
{

// Visits every in-bounds cell whose closed square meets the closed segment pq.
// The segment is split into unit-width column strips; within each strip its
// y-extent is an interval, and every row whose closed span meets that
// interval is touched. Stops early when the visitor returns false.
template <typename Visitor>
bool for_each_touched_cell(const GridMap& map, Point p, Point q, Visitor&& visit)
{
    if (p.x > q.x)
    {
        std::swap(p, q);
    }
    const double dx = q.x - p.x;
    const double dy = q.y - p.y;

    const int col_lo = std::max(0, static_cast<int>(std::ceil(p.x)) - 1);
    const int col_hi = std::min(map.width() - 1, static_cast<int>(std::floor(q.x)));

    for (int col = col_lo; col <= col_hi; ++col)
    {
        const double x0 = std::max(p.x, static_cast<double>(col));
        const double x1 = std::min(q.x, static_cast<double>(col + 1));
        if (x0 > x1)
        {
            continue;
        }
        double y0;
        double y1;
        if (dx == 0.0)
        {
            y0 = std::min(p.y, q.y);
            y1 = std::max(p.y, q.y);
        }
        else
        {
            const double ya = p.y + dy * ((x0 - p.x) / dx);
            const double yb = p.y + dy * ((x1 - p.x) / dx);
            y0 = std::min(ya, yb);
            y1 = std::max(ya, yb);
        }
        const int row_lo = std::max(0, static_cast<int>(std::ceil(y0)) - 1);
        const int row_hi = std::min(map.height() - 1, static_cast<int>(std::floor(y1)));
        for (int row = row_lo; row <= row_hi; ++row)
        {
            if (!visit(Cell{row, col}))
            {
                return false;
            }
        }
    }
    return true;
}

} // namespace

bool segment_collision_free(const GridMap& map, Point p, Point q)
{
    return for_each_touched_cell(map, p, q, [&](Cell c) { return !map.occupied(c); });
}

std::vector<Cell> supercover_cells(const GridMap& map, Point p, Point q)
{
    std::vector<Cell> cells;
    for_each_touched_cell(map, p, q, [&](Cell c) {
        cells.push_back(c);
        return true;
    });
    return cells;
}

std::string_view to_string(Difficulty d)
{
    switch (d)
    {
    case Difficulty::sparse:
        return "sparse";
    case Difficulty::medium:
        return "medium";
    case Difficulty::hard:
        return "hard";
    }
    return "unknown";
}

std::optional<Difficulty> parse_difficulty(std::string_view name)
{
    if (name == "sparse" || name == "easy")
    {
        return Difficulty::sparse;
    }
    if (name == "medium")
    {
        return Difficulty::medium;
    }
    if (name == "hard" || name == "dense")
    {
        return Difficulty::hard;
    }
    return std::nullopt;
}

DifficultyBand difficulty_band(Difficulty d)
{
    switch (d)
    {
    case Difficulty::sparse:
        return {0.02, 0.08, 3, 6};
    case Difficulty::medium:
        return {0.08, 0.18, 6, 14};
    case Difficulty::hard:
        return {0.18, 0.30, 14, 26};
    }
    return {0.0, 1.0, 0, 0};
}

} // namespace cnrrt
