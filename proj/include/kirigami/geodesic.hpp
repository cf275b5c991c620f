#pragma once

#include <limits>
#include <vector>

#include "kirigami/cut_graph.hpp"

namespace kirigami {

// Node numbering used by the search: 0..n-1 are spec.vertices, then p, then q.
constexpr int kTerminalP = -1;
constexpr int kTerminalQ = -2;

struct Waypoint {
    Point2 pt;
    int vertex = kTerminalP;  // index into spec.vertices, or kTerminalP / kTerminalQ
};

struct GeodesicPolygonal {
    std::vector<Waypoint> waypoints;
    double length = 0.0;
    std::vector<int> sides;          // sector id used at each interior waypoint
    std::vector<int> contains_cuts;  // cut edges that are whole edges of the path
    bool near_tie = false;

    std::vector<int> vertex_sequence() const;
    std::vector<double> arclengths() const;  // cumulative, per waypoint
};

struct GeodesicSet {
    double distance = std::numeric_limits<double>::infinity();
    std::vector<GeodesicPolygonal> geodesics;
    bool near_tie = false;
};

struct NoPathError : KirigamiError {
    using KirigamiError::KirigamiError;
};

struct EnumerationLimitError : KirigamiError {
    using KirigamiError::KirigamiError;
};

struct EdgeAdmissibility {
    bool admissible = false;
    int cut = -1;  // >= 0 when the edge is exactly this cut
    bool left_side = false;
    bool right_side = false;
};

// a, b are node ids: vertex index, kTerminalP or kTerminalQ.
EdgeAdmissibility edge_admissible(int a, int b, const KirigamiSpec& spec, const SlitComplex& cx,
                                  const Tolerance& tol = {});

constexpr size_t kMaxGeodesics = 10000;

GeodesicSet all_geodesics(const KirigamiSpec& spec, const SlitComplex& cx, const Tolerance& tol = {});
GeodesicSet all_geodesics(const KirigamiSpec& spec, const Tolerance& tol = {});

// Distance only; +infinity when p and q are separated.
double geodesic_distance(const KirigamiSpec& spec, const Tolerance& tol = {});

// Sector consistency of an arbitrary waypoint path (vertex ids as in Waypoint).
bool sector_consistent(const GeodesicPolygonal& path, const KirigamiSpec& spec, const SlitComplex& cx,
                       const Tolerance& tol = {});

// Per edge of the path: 0 when the edge is not a whole cut, otherwise the sides
// on which approximating curves may pass it (bit 0: left of travel, bit 1:
// right). Empty when the path is not sector consistent.
std::vector<int> cut_edge_sides(const GeodesicPolygonal& path, const KirigamiSpec& spec, const SlitComplex& cx,
                                const Tolerance& tol = {});

struct BudgetExceededError : KirigamiError {
    using KirigamiError::KirigamiError;
};

// Exhaustive minimum over admissible polygonals with at most max_interior
// distinct interior vertices. Independent of the search graph used by
// all_geodesics. Returns +infinity when nothing is admissible.
double brute_force_distance(const KirigamiSpec& spec, int max_interior, const Tolerance& tol = {},
                            double budget = 5e7);

struct ShortenResult {
    GeodesicPolygonal path;
    int rounds = 0;
    int round_bound = 0;
    std::vector<double> lengths;  // length after each round, starting with the input length
};

// Pulls a polyline from p to q taut against the cut vertices.
ShortenResult shorten(const std::vector<Point2>& tau, const KirigamiSpec& spec, const Tolerance& tol = {});

// A straight move between two arbitrary points that does not cross L.
bool segment_clear(Point2 a, Point2 b, const KirigamiSpec& spec, const SlitComplex& cx,
                   const Tolerance& tol = {});

}  // namespace kirigami
