#pragma once

#include <variant>
#include <vector>

namespace wsnr {

/// Planar coordinate pair in map units.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Closed vertex sequence; the first vertex is repeated as the last.
using Ring = std::vector<Point>;

/// Outer ring first, holes after it.
struct Polygon {
    std::vector<Ring> rings;

    const Ring& outer() const { return rings.front(); }
    friend bool operator==(const Polygon&, const Polygon&) = default;
};

using Geometry = std::variant<Point, Polygon>;

namespace geom {

inline constexpr double kAreaTolerance = 1e-12;
inline constexpr double kCollinearTolerance = 1e-9;

/// Shoelace signed area of a closed ring (counter-clockwise positive).
double signed_area(const Ring& ring);

/// Absolute area of the outer ring minus its holes.
/// Throws DegenerateGeometry when the result is not above kAreaTolerance.
double polygon_area(const Polygon& poly);

/// Area-weighted centroid, hole aware.
/// Throws DegenerateGeometry when the net area vanishes.
Point centroid(const Polygon& poly);

double euclidean_distance(const Point& a, const Point& b);

/// Boundary-inclusive buffer membership test. Throws InvalidRadius for r <= 0.
bool within_buffer(const Point& candidate, const Point& center, double r);

/// True iff the two boundaries overlap along a segment of positive length.
/// Corner contact does not count.
bool shares_boundary(const Polygon& a, const Polygon& b);

/// Checks closure, vertex count and simplicity of every ring.
/// Throws InvalidGeometry describing the first violation.
void validate(const Polygon& poly);

/// Representative point: the point itself or the polygon centroid.
Point center(const Geometry& g);

}  // namespace geom
}  // namespace wsnr
