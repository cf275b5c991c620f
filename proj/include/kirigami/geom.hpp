#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace kirigami {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
inline Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
inline bool operator==(Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double dist(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 a) { return {-a.y, a.x}; }  // +90 degrees
inline Point2 normalized(Point2 a) {
    double n = norm(a);
    return n > 0 ? a / n : a;
}
inline Point2 lerp(Point2 a, Point2 b, double t) { return a + t * (b - a); }
inline bool finite(Point2 a) { return std::isfinite(a.x) && std::isfinite(a.y); }

struct Segment {
    Point2 a;
    Point2 b;
};

struct Line {
    Point2 origin;
    Point2 dir;  // unit

    static Line through(Point2 a, Point2 b) { return {a, normalized(b - a)}; }
    // signed distance, positive on the left of dir
    double side(Point2 p) const { return cross(dir, p - origin); }
    Point2 project(Point2 p) const { return origin + dot(p - origin, dir) * dir; }
};

struct Tolerance {
    double eps = 1e-9;
    double eps_len = 1e-7;
};

enum class Orientation { Left, Right, Collinear };

// Sign of the turn p->q->r. Collinear when r (or q) is within eps of the
// line through the other two.
Orientation orient(Point2 p, Point2 q, Point2 r, const Tolerance& tol = {});

struct Intersection {
    enum class Kind { Empty, Point, Overlap };
    Kind kind = Kind::Empty;
    Point2 point;          // Kind::Point
    Segment overlap;       // Kind::Overlap
    bool at_endpoint = false;  // the point is an endpoint of one of the inputs
};

Intersection seg_intersect(const Segment& s1, const Segment& s2, const Tolerance& tol = {});

Point2 reflect(Point2 p, const Line& l);

enum class Containment { Inside, Boundary, Outside };

struct NonSimplePolygonError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Throws NonSimplePolygonError for self-intersecting input.
Containment polygon_contains(const std::vector<Point2>& poly, Point2 p, const Tolerance& tol = {});
// Same classification without the simplicity check.
Containment polygon_contains_unchecked(const std::vector<Point2>& poly, Point2 p,
                                       const Tolerance& tol = {});

double signed_area(const std::vector<Point2>& poly);
Point2 centroid(const std::vector<Point2>& poly);
bool is_simple(const std::vector<Point2>& poly, const Tolerance& tol = {});
bool is_convex_ccw(const std::vector<Point2>& poly, const Tolerance& tol = {});

double point_segment_distance(Point2 p, const Segment& s);
// closed segment, eps band
bool on_segment(Point2 p, const Segment& s, const Tolerance& tol = {});
// open segment: on the segment and farther than eps from both endpoints
bool in_open_segment(Point2 p, const Segment& s, const Tolerance& tol = {});

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// atan2 mapped to [0, 2pi)
double angle_of(Point2 v);
// counterclockwise sweep from direction a to direction b, in [0, 2pi)
double ccw_sweep(Point2 a, Point2 b);

// First hit of the ray origin + t*dir (t > tmin) with the polygon boundary.
// Returns t, or -1 when nothing is hit.
double ray_polygon_hit(Point2 origin, Point2 dir, const std::vector<Point2>& poly, double tmin,
                       int* edge_out = nullptr);

}  // namespace kirigami
