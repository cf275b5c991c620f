#include "kirigami/geom.hpp"

#include <algorithm>

namespace kirigami {

Orientation orient(Point2 p, Point2 q, Point2 r, const Tolerance& tol) {
    Point2 u = q - p;
    Point2 v = r - p;
    double c = cross(u, v);
    double scale = std::max(norm(u), norm(v));
    if (std::abs(c) <= tol.eps * scale) return Orientation::Collinear;
    return c > 0 ? Orientation::Left : Orientation::Right;
}

double point_segment_distance(Point2 p, const Segment& s) {
    Point2 d = s.b - s.a;
    double len2 = dot(d, d);
    if (len2 == 0.0) return dist(p, s.a);
    double t = std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
    return dist(p, s.a + t * d);
}

bool on_segment(Point2 p, const Segment& s, const Tolerance& tol) {
    return point_segment_distance(p, s) <= tol.eps;
}

bool in_open_segment(Point2 p, const Segment& s, const Tolerance& tol) {
    return on_segment(p, s, tol) && dist(p, s.a) > tol.eps && dist(p, s.b) > tol.eps;
}

Intersection seg_intersect(const Segment& s1, const Segment& s2, const Tolerance& tol) {
    Intersection out;
    Orientation o1 = orient(s1.a, s1.b, s2.a, tol);
    Orientation o2 = orient(s1.a, s1.b, s2.b, tol);
    Orientation o3 = orient(s2.a, s2.b, s1.a, tol);
    Orientation o4 = orient(s2.a, s2.b, s1.b, tol);

    if (o1 == Orientation::Collinear && o2 == Orientation::Collinear) {
        // both on the line of s1; compare parameters along s1
        Point2 d = s1.b - s1.a;
        double len = norm(d);
        if (len == 0.0) {
            if (on_segment(s1.a, s2, tol)) {
                out.kind = Intersection::Kind::Point;
                out.point = s1.a;
                out.at_endpoint = true;
            }
            return out;
        }
        Point2 u = d / len;
        double a0 = 0.0, a1 = len;
        double b0 = dot(s2.a - s1.a, u), b1 = dot(s2.b - s1.a, u);
        if (b0 > b1) std::swap(b0, b1);
        double lo = std::max(a0, b0), hi = std::min(a1, b1);
        if (hi - lo > tol.eps) {
            out.kind = Intersection::Kind::Overlap;
            out.overlap = {s1.a + lo * u, s1.a + hi * u};
        } else if (hi - lo >= -tol.eps) {
            out.kind = Intersection::Kind::Point;
            out.point = s1.a + 0.5 * (lo + hi) * u;
            out.at_endpoint = true;
        }
        return out;
    }

    // endpoint touching
    auto touch = [&](Point2 pt, const Segment& other) {
        if (on_segment(pt, other, tol)) {
            out.kind = Intersection::Kind::Point;
            out.point = pt;
            out.at_endpoint = true;
            return true;
        }
        return false;
    };
    if (o1 == Orientation::Collinear && touch(s2.a, s1)) return out;
    if (o2 == Orientation::Collinear && touch(s2.b, s1)) return out;
    if (o3 == Orientation::Collinear && touch(s1.a, s2)) return out;
    if (o4 == Orientation::Collinear && touch(s1.b, s2)) return out;

    bool straddle1 = (o1 == Orientation::Left && o2 == Orientation::Right) ||
                     (o1 == Orientation::Right && o2 == Orientation::Left);
    bool straddle2 = (o3 == Orientation::Left && o4 == Orientation::Right) ||
                     (o3 == Orientation::Right && o4 == Orientation::Left);
    if (straddle1 && straddle2) {
        Point2 d1 = s1.b - s1.a, d2 = s2.b - s2.a;
        double t = cross(s2.a - s1.a, d2) / cross(d1, d2);
        out.kind = Intersection::Kind::Point;
        out.point = s1.a + t * d1;
    }
    return out;
}

Point2 reflect(Point2 p, const Line& l) {
    Point2 foot = l.project(p);
    return 2.0 * foot - p;
}

double signed_area(const std::vector<Point2>& poly) {
    double a = 0.0;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) a += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * a;
}

Point2 centroid(const std::vector<Point2>& poly) {
    double a = signed_area(poly);
    size_t n = poly.size();
    if (std::abs(a) < 1e-300) {
        Point2 s;
        for (auto& p : poly) s = s + p;
        return n ? s / double(n) : s;
    }
    // shift for conditioning
    Point2 o = poly[0];
    double cx = 0, cy = 0;
    for (size_t i = 0; i < n; ++i) {
        Point2 p = poly[i] - o, q = poly[(i + 1) % n] - o;
        double c = cross(p, q);
        cx += (p.x + q.x) * c;
        cy += (p.y + q.y) * c;
    }
    return o + Point2{cx / (6 * a), cy / (6 * a)};
}

bool is_simple(const std::vector<Point2>& poly, const Tolerance& tol) {
    size_t n = poly.size();
    if (n < 3) return false;
    for (size_t i = 0; i < n; ++i)
        if (dist(poly[i], poly[(i + 1) % n]) <= tol.eps) return false;
    for (size_t i = 0; i < n; ++i) {
        Segment si{poly[i], poly[(i + 1) % n]};
        for (size_t j = i + 1; j < n; ++j) {
            Segment sj{poly[j], poly[(j + 1) % n]};
            Intersection x = seg_intersect(si, sj, tol);
            if (x.kind == Intersection::Kind::Empty) continue;
            bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (!adjacent) return false;
            if (x.kind == Intersection::Kind::Overlap) return false;
            Point2 shared = (j == i + 1) ? poly[j] : poly[i];
            if (dist(x.point, shared) > tol.eps) return false;
        }
    }
    return true;
}

bool is_convex_ccw(const std::vector<Point2>& poly, const Tolerance& tol) {
    size_t n = poly.size();
    if (n < 3 || signed_area(poly) <= 0) return false;
    for (size_t i = 0; i < n; ++i) {
        if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n], tol) == Orientation::Right)
            return false;
    }
    return true;
}

Containment polygon_contains_unchecked(const std::vector<Point2>& poly, Point2 p,
                                       const Tolerance& tol) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if (on_segment(p, {poly[i], poly[(i + 1) % n]}, tol)) return Containment::Boundary;
    bool inside = false;
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point2& a = poly[i];
        const Point2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

Containment polygon_contains(const std::vector<Point2>& poly, Point2 p, const Tolerance& tol) {
    if (!is_simple(poly, tol)) throw NonSimplePolygonError("polygon_contains: polygon is not simple");
    return polygon_contains_unchecked(poly, p, tol);
}

double angle_of(Point2 v) {
    double a = std::atan2(v.y, v.x);
    if (a < 0) a += kTwoPi;
    if (a >= kTwoPi) a -= kTwoPi;
    return a;
}

double ccw_sweep(Point2 a, Point2 b) {
    double s = angle_of(b) - angle_of(a);
    if (s < 0) s += kTwoPi;
    if (s >= kTwoPi) s -= kTwoPi;
    return s;
}

double ray_polygon_hit(Point2 origin, Point2 dir, const std::vector<Point2>& poly, double tmin,
                       int* edge_out) {
    double best = -1.0;
    int best_edge = -1;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        Point2 a = poly[i], b = poly[(i + 1) % n];
        Point2 e = b - a;
        double den = cross(dir, e);
        if (std::abs(den) < 1e-300) continue;
        double t = cross(a - origin, e) / den;
        double s = cross(a - origin, dir) / den;
        double elen = norm(e);
        if (s * elen < -1e-12 || (s - 1.0) * elen > 1e-12) continue;
        if (t <= tmin) continue;
        if (best < 0 || t < best) {
            best = t;
            best_edge = int(i);
        }
    }
    if (edge_out) *edge_out = best_edge;
    return best;
}

}  // namespace kirigami
