#pragma once

#include <string>
#include <vector>

#include "kirigami/cut_graph.hpp"

namespace kirigami {

// x -> linear * x + shift, linear stored row-major.
struct Motion {
    double a = 1, b = 0, c = 0, d = 1;
    Point2 shift;

    Point2 apply(Point2 x) const { return {a * x.x + b * x.y + shift.x, c * x.x + d * x.y + shift.y}; }
    Point2 apply_linear(Point2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
    double det() const { return a * d - b * c; }
    Motion inverse() const;
    // (*this) o other
    Motion after(const Motion& other) const;
    double orthogonality_error() const;  // max |M^T M - I|
    bool approx_equal(const Motion& o, double tol) const;

    static Motion reflection(const Line& l);
    static Motion rotation(double angle, Point2 center = {});
    static Motion translation(Point2 t);
};

struct Face {
    std::vector<Point2> poly;  // convex, counterclockwise
    Motion m;
    int piece = -1;
};

struct SharedEdge {
    int f1 = -1, f2 = -1;
    Segment seg;        // oriented along f1's boundary
    bool on_cut = false;
    double mismatch = 0.0;  // max image distance at the ends and midpoint
};

struct Crease {
    Segment seg;
    bool valley = false;
};

struct PiecewiseIsometry {
    std::vector<Face> faces;
    std::vector<SharedEdge> shared;
    std::vector<Crease> creases;

    // Images of x under every face whose closure contains it.
    std::vector<Point2> images(Point2 x, double eps = 1e-9) const;
};

// Convex polygon split by a line; parts with area below min_area are dropped.
void split_convex(const std::vector<Point2>& poly, const Line& l, std::vector<Point2>& left,
                  std::vector<Point2>& right, double min_area = 1e-18);

// Ear clipping of a simple counterclockwise polygon, followed by greedy merging into convex faces.
std::vector<std::vector<Point2>> convex_partition(const std::vector<Point2>& poly, const Tolerance& tol = {});

// Merges edge-adjacent faces of one piece that carry the same motion while the union stays convex.
void merge_faces(std::vector<Face>& faces, const Tolerance& tol = {});

// Fills shared edges and creases. A shared edge lying on a cut is marked and
// is allowed to be discontinuous.
void analyze_adjacency(PiecewiseIsometry& u, const KirigamiSpec& spec, const Tolerance& tol = {});

}  // namespace kirigami
