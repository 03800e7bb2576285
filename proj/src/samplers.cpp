#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cnrrt/errors.hpp"
#include "cnrrt/planners.hpp"

namespace cnrrt
{

namespace
{

std::vector<Cell> free_cells_of(const GridMap& map)
{
    std::vector<Cell> cells;
    for (int r = 0; r < map.height(); ++r)
    {
        for (int c = 0; c < map.width(); ++c)
        {
            if (!map.occupied(r, c))
            {
                cells.push_back({r, c});
            }
        }
    }
    return cells;
}

std::vector<Cell> predicted_free_cells(const GridMap& map, const GuidanceMask& mask)
{
    if (!mask.matches(map))
    {
        throw DimensionMismatch("guidance mask does not match map dimensions");
    }
    std::vector<Cell> cells;
    for (int r = 0; r < map.height(); ++r)
    {
        for (int c = 0; c < map.width(); ++c)
        {
            if (mask.test({r, c}) && !map.occupied(r, c))
            {
                cells.push_back({r, c});
            }
        }
    }
    return cells;
}

Point jitter_in_cell(Cell c, Rng& rng)
{
    return {c.col + rng.uniform(), c.row + rng.uniform()};
}

Point pick(const std::vector<Cell>& cells, Rng& rng)
{
    return jitter_in_cell(cells[rng.index(cells.size())], rng);
}

} // namespace

UniformSampler::UniformSampler(const GridMap& map) : free_cells_(free_cells_of(map))
{
    if (free_cells_.empty())
    {
        throw std::invalid_argument("map has no free cells");
    }
}

Point UniformSampler::sample(Rng& rng, double)
{
    return pick(free_cells_, rng);
}

NeuralSampler::NeuralSampler(const GridMap& map, const GuidanceMask& mask, double alpha)
    : free_cells_(free_cells_of(map)), predicted_(predicted_free_cells(map, mask)), alpha_(alpha)
{
    if (free_cells_.empty())
    {
        throw std::invalid_argument("map has no free cells");
    }
}

Point NeuralSampler::sample(Rng& rng, double)
{
    if (rng.bernoulli(alpha_) && !predicted_.empty())
    {
        return pick(predicted_, rng);
    }
    return pick(free_cells_, rng);
}

NeuralInformedSampler::NeuralInformedSampler(const GridMap& map, const GuidanceMask& mask, double alpha)
    : map_(&map), free_cells_(free_cells_of(map)), predicted_(predicted_free_cells(map, mask)), alpha_(alpha)
{
    if (free_cells_.empty())
    {
        throw std::invalid_argument("map has no free cells");
    }
}

Point NeuralInformedSampler::sample_ellipse(Rng& rng, const EllipseSpec& ellipse)
{
    for (int i = 0; i < kRejectionTries; ++i)
    {
        const Point p = informed_ellipse_sample(ellipse, map_->width(), map_->height(), rng);
        if (!map_->occupied_at(p))
        {
            return p;
        }
    }
    // Fall back to a free cell center inside the ellipse; the start focus
    // is always admissible.
    std::vector<Cell> inside;
    for (const Cell& c : free_cells_)
    {
        if (ellipse.contains(cell_center(c)))
        {
            inside.push_back(c);
        }
    }
    if (inside.empty())
    {
        return ellipse.focus_a;
    }
    return cell_center(inside[rng.index(inside.size())]);
}

Point NeuralInformedSampler::sample(Rng& rng, double best_cost)
{
    const bool use_mask = rng.bernoulli(alpha_) && !predicted_.empty();
    if (!std::isfinite(best_cost))
    {
        return use_mask ? pick(predicted_, rng) : pick(free_cells_, rng);
    }
    // Straight solutions can round a hair below the focal distance.
    const double c_min = distance(map_->start(), map_->goal());
    const EllipseSpec ellipse = EllipseSpec::from_foci(map_->start(), map_->goal(), std::max(best_cost, c_min));
    if (use_mask)
    {
        for (int i = 0; i < kRejectionTries; ++i)
        {
            const Point p = pick(predicted_, rng);
            if (ellipse.contains(p))
            {
                return p;
            }
        }
    }
    return sample_ellipse(rng, ellipse);
}

ConvexStructuredSampler::ConvexStructuredSampler(CornerSet predicted, CornerSet inside, CornerSet outside, Point goal,
                                                 const PlannerConfig& cfg, const GridMap* map)
    : predicted_(std::move(predicted)),
      inside_(std::move(inside)),
      outside_(std::move(outside)),
      goal_(goal),
      goal_bias_(cfg.goal_bias),
      alpha_pred_(cfg.alpha_pred),
      alpha_explore_(cfg.alpha_explore),
      jitter_radius_(cfg.safety_margin),
      map_(map)
{
}

Point ConvexStructuredSampler::jitter(Cell corner, Rng& rng) const
{
    const Point center = cell_center(corner);
    if (jitter_radius_ <= 0.0)
    {
        return center;
    }
    for (int i = 0; i < kJitterTries; ++i)
    {
        const double r = jitter_radius_ * std::sqrt(rng.uniform());
        const double theta = 2.0 * std::numbers::pi * rng.uniform();
        const Point p{center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
        if (map_ == nullptr || !map_->occupied_at(p))
        {
            return p;
        }
    }
    return center;
}

Point ConvexStructuredSampler::from_pool(CornerPool pool, Rng& rng) const
{
    switch (pool)
    {
    case CornerPool::predicted:
        return jitter(predicted_[rng.index(predicted_.size())], rng);
    case CornerPool::inside:
        return cell_center(inside_[rng.index(inside_.size())]);
    case CornerPool::outside:
        return cell_center(outside_[rng.index(outside_.size())]);
    case CornerPool::goal:
        break;
    }
    return goal_;
}

StructuredDraw ConvexStructuredSampler::draw(Rng& rng)
{
    if (rng.bernoulli(goal_bias_))
    {
        return {goal_, CornerPool::goal};
    }
    const double u = rng.uniform();
    CornerPool pool;
    if (u < alpha_explore_)
    {
        pool = CornerPool::outside;
    }
    else if (u < alpha_explore_ + (1.0 - alpha_explore_) * alpha_pred_)
    {
        pool = CornerPool::predicted;
    }
    else
    {
        pool = CornerPool::inside;
    }

    auto empty = [&](CornerPool p) {
        switch (p)
        {
        case CornerPool::predicted:
            return predicted_.empty();
        case CornerPool::inside:
            return inside_.empty();
        case CornerPool::outside:
            return outside_.empty();
        case CornerPool::goal:
            break;
        }
        return false;
    };
    if (empty(pool))
    {
        pool = CornerPool::goal;
        for (CornerPool p : {CornerPool::predicted, CornerPool::inside, CornerPool::outside})
        {
            if (!empty(p))
            {
                pool = p;
                break;
            }
        }
    }
    return {from_pool(pool, rng), pool};
}

} // namespace cnrrt
