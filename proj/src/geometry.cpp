#include "cnrrt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cnrrt
{

double path_length(std::span<const Point> waypoints)
{
    double total = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i)
    {
        total += distance(waypoints[i - 1], waypoints[i]);
    }
    return total;
}

double wrap_angle(double a)
{
    constexpr double pi = std::numbers::pi;
    a = std::fmod(a, 2.0 * pi);
    if (a <= -pi)
    {
        a += 2.0 * pi;
    }
    else if (a > pi)
    {
        a -= 2.0 * pi;
    }
    return a;
}

double path_smoothness(std::span<const Point> waypoints)
{
    double total = 0.0;
    bool have_prev = false;
    double prev = 0.0;
    for (std::size_t i = 1; i < waypoints.size(); ++i)
    {
        const Point d = waypoints[i] - waypoints[i - 1];
        if (d.x == 0.0 && d.y == 0.0)
        {
            continue;
        }
        const double heading = std::atan2(d.y, d.x);
        if (have_prev)
        {
            total += std::abs(wrap_angle(heading - prev));
        }
        prev = heading;
        have_prev = true;
    }
    return total;
}

SteerResult steer(Point from, Point toward, double step)
{
    const double d = distance(from, toward);
    if (d == 0.0)
    {
        return {from, true};
    }
    if (d <= step)
    {
        return {toward, false};
    }
    return {from + (step / d) * (toward - from), false};
}

namespace
{

double cross(Point o, Point a, Point b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

} // namespace

HullPolygon convex_hull(std::span<const Point> points)
{
    if (points.empty())
    {
        throw std::invalid_argument("convex_hull of an empty point set");
    }
    std::vector<Point> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    if (pts.size() == 1)
    {
        return {{pts.front()}, HullKind::point};
    }

    // Andrew's monotone chain; collinear points are dropped.
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts)
    {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kCollinearEps)
        {
            --k;
        }
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;)
    {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kCollinearEps)
        {
            --k;
        }
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);

    if (hull.size() <= 2)
    {
        return {{pts.front(), pts.back()}, HullKind::segment};
    }
    return {std::move(hull), HullKind::polygon};
}

namespace
{

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

bool point_in_hull(Point pt, const HullPolygon& hull, double eps)
{
    switch (hull.kind)
    {
    case HullKind::point:
        return distance(pt, hull.vertices.front()) <= eps;
    case HullKind::segment:
        return segment_distance(pt, hull.vertices[0], hull.vertices[1]) <= eps;
    case HullKind::polygon:
        break;
    }
    const std::size_t n = hull.vertices.size();
    for (std::size_t i = 0; i < n; ++i)
    {
        const Point a = hull.vertices[i];
        const Point b = hull.vertices[(i + 1) % n];
        const double len = distance(a, b);
        // Signed distance to the edge line; negative means outside.
        if (cross(a, b, pt) / len < -eps)
        {
            return false;
        }
    }
    return true;
}

Point informed_ellipse_sample(const EllipseSpec& spec, double width, double height, Rng& rng)
{
    if (!spec.bounded())
    {
        return {rng.uniform(0.0, width), rng.uniform(0.0, height)};
    }
    if (spec.c_best < spec.c_min)
    {
        throw std::invalid_argument("inadmissible ellipse: c_best < c_min");
    }
    const double a = 0.5 * spec.c_best;
    const double b = 0.5 * std::sqrt(std::max(0.0, spec.c_best * spec.c_best - spec.c_min * spec.c_min));

    const double r = std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const double u = a * r * std::cos(theta);
    const double v = b * r * std::sin(theta);

    const Point center = 0.5 * (spec.focus_a + spec.focus_b);
    double cos_t = 1.0;
    double sin_t = 0.0;
    if (spec.c_min > 0.0)
    {
        const Point axis = spec.focus_b - spec.focus_a;
        cos_t = axis.x / spec.c_min;
        sin_t = axis.y / spec.c_min;
    }
    return {center.x + cos_t * u - sin_t * v, center.y + sin_t * u + cos_t * v};
}

} // namespace cnrrt
