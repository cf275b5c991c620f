#include "kirigami/immersion.hpp"

#include <algorithm>
#include <cmath>

namespace kirigami {

Motion Motion::inverse() const {
    double dt = det();
    Motion inv;
    inv.a = d / dt;
    inv.b = -b / dt;
    inv.c = -c / dt;
    inv.d = a / dt;
    Point2 s = inv.apply_linear(shift);
    inv.shift = {-s.x, -s.y};
    return inv;
}

Motion Motion::after(const Motion& o) const {
    Motion r;
    r.a = a * o.a + b * o.c;
    r.b = a * o.b + b * o.d;
    r.c = c * o.a + d * o.c;
    r.d = c * o.b + d * o.d;
    r.shift = apply(o.shift);
    return r;
}

double Motion::orthogonality_error() const {
    double e11 = a * a + c * c - 1, e22 = b * b + d * d - 1, e12 = a * b + c * d;
    return std::max({std::abs(e11), std::abs(e22), std::abs(e12)});
}

bool Motion::approx_equal(const Motion& o, double tol) const {
    return std::abs(a - o.a) <= tol && std::abs(b - o.b) <= tol && std::abs(c - o.c) <= tol &&
           std::abs(d - o.d) <= tol && dist(shift, o.shift) <= tol;
}

Motion Motion::reflection(const Line& l) {
    Point2 u = normalized(l.dir);
    Motion m;
    m.a = u.x * u.x - u.y * u.y;
    m.b = 2 * u.x * u.y;
    m.c = 2 * u.x * u.y;
    m.d = u.y * u.y - u.x * u.x;
    m.shift = l.origin - m.apply_linear(l.origin);
    return m;
}

Motion Motion::rotation(double angle, Point2 center) {
    Motion m;
    double cs = std::cos(angle), sn = std::sin(angle);
    m.a = cs;
    m.b = -sn;
    m.c = sn;
    m.d = cs;
    m.shift = center - m.apply_linear(center);
    return m;
}

Motion Motion::translation(Point2 t) {
    Motion m;
    m.shift = t;
    return m;
}

std::vector<Point2> PiecewiseIsometry::images(Point2 x, double eps) const {
    std::vector<Point2> out;
    for (auto& f : faces)
        if (polygon_contains_unchecked(f.poly, x, {eps, eps}) != Containment::Outside) out.push_back(f.m.apply(x));
    return out;
}

void split_convex(const std::vector<Point2>& poly, const Line& l, std::vector<Point2>& left,
                  std::vector<Point2>& right, double min_area) {
    left.clear();
    right.clear();
    size_t n = poly.size();
    std::vector<double> s(n);
    for (size_t i = 0; i < n; ++i) s[i] = l.side(poly[i]);
    for (size_t i = 0; i < n; ++i) {
        size_t j = (i + 1) % n;
        Point2 p = poly[i], q = poly[j];
        if (s[i] >= 0) left.push_back(p);
        if (s[i] <= 0) right.push_back(p);
        if ((s[i] > 0 && s[j] < 0) || (s[i] < 0 && s[j] > 0)) {
            double t = s[i] / (s[i] - s[j]);
            Point2 x = lerp(p, q, t);
            left.push_back(x);
            right.push_back(x);
        }
    }
    if (left.size() < 3 || signed_area(left) <= min_area) left.clear();
    if (right.size() < 3 || signed_area(right) <= min_area) right.clear();
}

namespace {

std::vector<Point2> drop_collinear(const std::vector<Point2>& poly, const Tolerance& tol) {
    std::vector<Point2> out = poly;
    bool changed = true;
    while (changed && out.size() > 3) {
        changed = false;
        for (size_t i = 0; i < out.size(); ++i) {
            size_t n = out.size();
            Point2 a = out[(i + n - 1) % n], b = out[i], c = out[(i + 1) % n];
            if (dist(a, b) <= tol.eps ||
                (orient(a, b, c, tol) == Orientation::Collinear && dot(b - a, c - b) > 0)) {
                out.erase(out.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return out;
}

// Union of two convex polygons sharing the directed edge (u,v) of p and (v,u) of q.
bool glue(const std::vector<Point2>& p, const std::vector<Point2>& q, const Tolerance& tol, std::vector<Point2>& out) {
    size_t n = p.size(), m = q.size();
    for (size_t i = 0; i < n; ++i) {
        Point2 u = p[i], v = p[(i + 1) % n];
        for (size_t j = 0; j < m; ++j) {
            if (dist(q[j], v) > tol.eps || dist(q[(j + 1) % m], u) > tol.eps) continue;
            out.clear();
            // p from v around to u, then q from u around to v (exclusive)
            for (size_t k = 0; k < n; ++k) out.push_back(p[(i + 1 + k) % n]);
            for (size_t k = 2; k < m; ++k) out.push_back(q[(j + k) % m]);
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<std::vector<Point2>> convex_partition(const std::vector<Point2>& poly_in, const Tolerance& tol) {
    std::vector<Point2> poly = drop_collinear(poly_in, tol);
    std::vector<std::vector<Point2>> tris;
    std::vector<Point2> rest = poly;
    int guard = 0;
    while (rest.size() > 3 && guard++ < 100000) {
        size_t n = rest.size();
        bool clipped = false;
        for (size_t i = 0; i < n && !clipped; ++i) {
            Point2 a = rest[(i + n - 1) % n], b = rest[i], c = rest[(i + 1) % n];
            if (cross(b - a, c - b) <= tol.eps * dist(a, c)) continue;
            bool empty = true;
            std::vector<Point2> tri{a, b, c};
            for (size_t k = 0; k < n && empty; ++k) {
                if (k == i || k == (i + 1) % n || k == (i + n - 1) % n) continue;
                if (dist(rest[k], a) <= tol.eps || dist(rest[k], c) <= tol.eps) continue;
                if (polygon_contains_unchecked(tri, rest[k], tol) != Containment::Outside) empty = false;
            }
            if (!empty) continue;
            tris.push_back(tri);
            rest.erase(rest.begin() + i);
            clipped = true;
        }
        if (!clipped) {
            // only degenerate ears left: drop a collinear vertex
            size_t before = rest.size();
            rest = drop_collinear(rest, tol);
            if (rest.size() == before) throw KirigamiError("convex_partition: polygon is not simple");
        }
    }
    if (rest.size() == 3 && signed_area(rest) > 0) tris.push_back(rest);

    std::vector<Face> faces;
    for (auto& t : tris) faces.push_back({t, Motion{}, 0});
    merge_faces(faces, tol);
    std::vector<std::vector<Point2>> out;
    for (auto& f : faces) out.push_back(f.poly);
    return out;
}

void merge_faces(std::vector<Face>& faces, const Tolerance& tol) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < faces.size() && !changed; ++i)
            for (size_t j = i + 1; j < faces.size() && !changed; ++j) {
                if (faces[i].piece != faces[j].piece || !faces[i].m.approx_equal(faces[j].m, 1e-12)) continue;
                std::vector<Point2> u;
                if (!glue(faces[i].poly, faces[j].poly, tol, u)) continue;
                u = drop_collinear(u, tol);
                if (!is_convex_ccw(u, tol)) continue;
                faces[i].poly = u;
                faces.erase(faces.begin() + j);
                changed = true;
            }
    }
}

void analyze_adjacency(PiecewiseIsometry& u, const KirigamiSpec& spec, const Tolerance& tol) {
    u.shared.clear();
    u.creases.clear();
    auto on_cut = [&](Segment s) {
        for (auto [a, b] : spec.edges) {
            Segment c{spec.vertices[a], spec.vertices[b]};
            if (on_segment(s.a, c, tol) && on_segment(s.b, c, tol)) return true;
        }
        return false;
    };
    for (size_t i = 0; i < u.faces.size(); ++i) {
        const auto& p = u.faces[i].poly;
        for (size_t j = i + 1; j < u.faces.size(); ++j) {
            const auto& q = u.faces[j].poly;
            for (size_t a = 0; a < p.size(); ++a) {
                Segment e1{p[a], p[(a + 1) % p.size()]};
                for (size_t b = 0; b < q.size(); ++b) {
                    Segment e2{q[b], q[(b + 1) % q.size()]};
                    Intersection x = seg_intersect(e1, e2, tol);
                    if (x.kind != Intersection::Kind::Overlap) continue;
                    // opposite orientation only: faces on both sides
                    if (dot(e1.b - e1.a, e2.b - e2.a) >= 0) continue;
                    Segment s = x.overlap;
                    if (dot(s.b - s.a, e1.b - e1.a) < 0) std::swap(s.a, s.b);
                    SharedEdge se;
                    se.f1 = int(i);
                    se.f2 = int(j);
                    se.seg = s;
                    se.on_cut = on_cut(s);
                    for (Point2 t : {s.a, 0.5 * (s.a + s.b), s.b})
                        se.mismatch = std::max(se.mismatch, dist(u.faces[i].m.apply(t), u.faces[j].m.apply(t)));
                    u.shared.push_back(se);
                    if (!se.on_cut && !u.faces[i].m.approx_equal(u.faces[j].m, 1e-9))
                        u.creases.push_back({s, u.faces[i].m.det() > 0});
                }
            }
        }
    }
}

}  // namespace kirigami
