#include "wsnr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "wsnr/error.hpp"

namespace wsnr::geom {

namespace {

constexpr const char* kModule = "core-geometry";

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct Box {
    double min_x, min_y, max_x, max_y;
};

Box bounds(const Polygon& poly) {
    Box box{INFINITY, INFINITY, -INFINITY, -INFINITY};
    for (const auto& ring : poly.rings) {
        for (const auto& p : ring) {
            box.min_x = std::min(box.min_x, p.x);
            box.min_y = std::min(box.min_y, p.y);
            box.max_x = std::max(box.max_x, p.x);
            box.max_y = std::max(box.max_y, p.y);
        }
    }
    return box;
}

bool boxes_touch(const Box& a, const Box& b, double tol) {
    return a.min_x <= b.max_x + tol && b.min_x <= a.max_x + tol && a.min_y <= b.max_y + tol &&
           b.min_y <= a.max_y + tol;
}

// Length of the collinear overlap between segments pq and rs, or 0 when the
// segments are not collinear within kCollinearTolerance.
double collinear_overlap(const Point& p, const Point& q, const Point& r, const Point& s) {
    const double len = euclidean_distance(p, q);
    if (len == 0.0) return 0.0;
    if (std::abs(cross(p, q, r)) / len > kCollinearTolerance) return 0.0;
    if (std::abs(cross(p, q, s)) / len > kCollinearTolerance) return 0.0;
    const double ux = (q.x - p.x) / len;
    const double uy = (q.y - p.y) / len;
    const double tr = (r.x - p.x) * ux + (r.y - p.y) * uy;
    const double ts = (s.x - p.x) * ux + (s.y - p.y) * uy;
    const double lo = std::max(0.0, std::min(tr, ts));
    const double hi = std::min(len, std::max(tr, ts));
    return hi - lo;
}

bool on_segment(const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
    const int d1 = sign(cross(q1, q2, p1));
    const int d2 = sign(cross(q1, q2, p2));
    const int d3 = sign(cross(p1, p2, q1));
    const int d4 = sign(cross(p1, p2, q2));
    if (d1 != d2 && d3 != d4 && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0) return true;
    if (d1 == 0 && on_segment(q1, q2, p1)) return true;
    if (d2 == 0 && on_segment(q1, q2, p2)) return true;
    if (d3 == 0 && on_segment(p1, p2, q1)) return true;
    if (d4 == 0 && on_segment(p1, p2, q2)) return true;
    return false;
}

void validate_ring(const Ring& ring, std::size_t ring_index) {
    const std::string which = ring_index == 0 ? "outer ring" : "hole " + std::to_string(ring_index);
    for (const auto& p : ring) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw Error(ErrorCode::InvalidGeometry, which + " has a non-finite coordinate", kModule);
        }
    }
    if (ring.size() < 4) {
        throw Error(ErrorCode::InvalidGeometry, which + " needs at least 3 vertices plus closure",
                    kModule);
    }
    if (!(ring.front() == ring.back())) {
        throw Error(ErrorCode::InvalidGeometry, which + " is not closed", kModule);
    }
    std::set<std::pair<double, double>> distinct;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) distinct.emplace(ring[i].x, ring[i].y);
    if (distinct.size() < 3) {
        throw Error(ErrorCode::InvalidGeometry, which + " has fewer than 3 distinct vertices",
                    kModule);
    }

    const std::size_t edges = ring.size() - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        if (ring[i] == ring[i + 1]) {
            throw Error(ErrorCode::InvalidGeometry, which + " repeats a vertex", kModule);
        }
    }
    for (std::size_t i = 0; i < edges; ++i) {
        const Point& a1 = ring[i];
        const Point& a2 = ring[i + 1];
        for (std::size_t j = i + 1; j < edges; ++j) {
            const Point& b1 = ring[j];
            const Point& b2 = ring[j + 1];
            const bool adjacent = j == i + 1 || (i == 0 && j == edges - 1);
            if (adjacent) {
                // Consecutive edges may only share their common vertex.
                if (collinear_overlap(a1, a2, b1, b2) > kCollinearTolerance) {
                    throw Error(ErrorCode::InvalidGeometry, which + " folds back on itself",
                                kModule);
                }
                continue;
            }
            if (segments_intersect(a1, a2, b1, b2)) {
                throw Error(ErrorCode::InvalidGeometry,
                            which + " self-intersects at edges " + std::to_string(i) + " and " +
                                std::to_string(j),
                            kModule);
            }
        }
    }
}

}  // namespace

double signed_area(const Ring& ring) {
    double twice = 0.0;
    for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        twice += ring[i].x * ring[i + 1].y - ring[i + 1].x * ring[i].y;
    }
    return twice / 2.0;
}

double polygon_area(const Polygon& poly) {
    if (poly.rings.empty()) {
        throw Error(ErrorCode::DegenerateGeometry, "polygon has no rings", kModule);
    }
    double area = std::abs(signed_area(poly.rings.front()));
    for (std::size_t i = 1; i < poly.rings.size(); ++i) area -= std::abs(signed_area(poly.rings[i]));
    if (!(area > kAreaTolerance)) {
        throw Error(ErrorCode::DegenerateGeometry, "polygon area is zero", kModule);
    }
    return area;
}

Point centroid(const Polygon& poly) {
    if (poly.rings.empty()) {
        throw Error(ErrorCode::DegenerateGeometry, "polygon has no rings", kModule);
    }
    // Accumulate per ring, flipping orientation so the outer ring counts
    // positive and holes negative regardless of input winding.
    double area = 0.0;
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t r = 0; r < poly.rings.size(); ++r) {
        const Ring& ring = poly.rings[r];
        // Translate to the first vertex to limit cancellation far from the origin.
        const Point origin = ring.empty() ? Point{} : ring.front();
        double a = 0.0;
        double cx = 0.0;
        double cy = 0.0;
        for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
            const double x0 = ring[i].x - origin.x;
            const double y0 = ring[i].y - origin.y;
            const double x1 = ring[i + 1].x - origin.x;
            const double y1 = ring[i + 1].y - origin.y;
            const double f = x0 * y1 - x1 * y0;
            a += f;
            cx += (x0 + x1) * f;
            cy += (y0 + y1) * f;
        }
        a /= 2.0;
        if (a == 0.0) continue;
        const double orient = (a > 0.0) == (r == 0) ? 1.0 : -1.0;
        // Ring centroid is (cx, cy) / (6a) in translated coordinates.
        const double gx = cx / (6.0 * a) + origin.x;
        const double gy = cy / (6.0 * a) + origin.y;
        const double weighted = orient * a;
        area += weighted;
        mx += weighted * gx;
        my += weighted * gy;
    }
    if (!(std::abs(area) > kAreaTolerance)) {
        throw Error(ErrorCode::DegenerateGeometry, "signed area vanishes", kModule);
    }
    return {mx / area, my / area};
}

double euclidean_distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool within_buffer(const Point& candidate, const Point& center, double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw Error(ErrorCode::InvalidRadius, "buffer radius must be positive and finite", kModule);
    }
    return euclidean_distance(candidate, center) <= r;
}

bool shares_boundary(const Polygon& a, const Polygon& b) {
    if (!boxes_touch(bounds(a), bounds(b), kCollinearTolerance)) return false;
    for (const auto& ra : a.rings) {
        for (std::size_t i = 0; i + 1 < ra.size(); ++i) {
            for (const auto& rb : b.rings) {
                for (std::size_t j = 0; j + 1 < rb.size(); ++j) {
                    // Measure along the longer segment so the result is symmetric.
                    const double la = euclidean_distance(ra[i], ra[i + 1]);
                    const double lb = euclidean_distance(rb[j], rb[j + 1]);
                    const double overlap = la >= lb
                                               ? collinear_overlap(ra[i], ra[i + 1], rb[j], rb[j + 1])
                                               : collinear_overlap(rb[j], rb[j + 1], ra[i], ra[i + 1]);
                    if (overlap > kCollinearTolerance) return true;
                }
            }
        }
    }
    return false;
}

void validate(const Polygon& poly) {
    if (poly.rings.empty()) throw Error(ErrorCode::InvalidGeometry, "polygon has no rings", kModule);
    for (std::size_t r = 0; r < poly.rings.size(); ++r) validate_ring(poly.rings[r], r);
    try {
        polygon_area(poly);
    } catch (const Error& e) {
        throw Error(ErrorCode::InvalidGeometry, e.detail(), kModule);
    }
}

Point center(const Geometry& g) {
    if (const auto* p = std::get_if<Point>(&g)) return *p;
    return centroid(std::get<Polygon>(g));
}

}  // namespace wsnr::geom
