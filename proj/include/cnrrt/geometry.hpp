#pragma once

#include <limits>
#include <span>
#include <vector>

#include "cnrrt/gridmap.hpp"
#include "cnrrt/rng.hpp"

namespace cnrrt
{

/// Ordered waypoints, first = start, last = goal.
struct PathPlan
{
    std::vector<Point> waypoints;

    friend bool operator==(const PathPlan&, const PathPlan&) = default;
};

double path_length(std::span<const Point> waypoints);
inline double path_length(const PathPlan& p) { return path_length(p.waypoints); }

/// Sum of absolute heading changes at interior vertices, each wrapped into
/// (-pi, pi]. Zero-length segments carry no heading and are skipped.
double path_smoothness(std::span<const Point> waypoints);
inline double path_smoothness(const PathPlan& p) { return path_smoothness(p.waypoints); }

/// Maps an angle difference into (-pi, pi].
double wrap_angle(double a);

struct SteerResult
{
    Point point;
    bool degenerate = false; // target coincided with the origin
};

SteerResult steer(Point from, Point toward, double step);

enum class HullKind
{
    point,
    segment,
    polygon,
};

/// Convex hull, counter-clockwise, without collinear vertices. Collinear
/// input collapses to a segment (two endpoints), a single distinct point to
/// a point hull.
struct HullPolygon
{
    std::vector<Point> vertices;
    HullKind kind = HullKind::point;
};

inline constexpr double kCollinearEps = 1e-12;

/// Throws std::invalid_argument on empty input.
HullPolygon convex_hull(std::span<const Point> points);

/// Inside or on the boundary.
bool point_in_hull(Point pt, const HullPolygon& hull, double eps = 1e-9);

/// Ellipse with foci (focus_a, focus_b): the points whose focal distances sum
/// to at most c_best. c_best = infinity means no solution is known yet.
struct EllipseSpec
{
    Point focus_a;
    Point focus_b;
    double c_best = std::numeric_limits<double>::infinity();
    double c_min = 0.0;

    static EllipseSpec from_foci(Point a, Point b, double c_best)
    {
        return {a, b, c_best, distance(a, b)};
    }
    bool bounded() const { return c_best < std::numeric_limits<double>::infinity(); }
    bool contains(Point x, double eps = 1e-9) const
    {
        return distance(x, focus_a) + distance(x, focus_b) <= c_best + eps;
    }
};

/// Uniform sample over the ellipse (unit disk + affine map), or uniform over
/// [0, width) x [0, height) while c_best is infinite. Throws
/// std::invalid_argument when c_best < c_min.
Point informed_ellipse_sample(const EllipseSpec& spec, double width, double height, Rng& rng);

} // namespace cnrrt
