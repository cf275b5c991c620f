#pragma once

#include <string>
#include <vector>

#include "kirigami/geodesic.hpp"

namespace kirigami {

struct OrderError : KirigamiError {
    using KirigamiError::KirigamiError;
};

struct ExteriorTreeError : KirigamiError {
    std::vector<int> trees;  // component ids
    ExteriorTreeError(const std::string& what, std::vector<int> t) : KirigamiError(what), trees(std::move(t)) {}
};

struct DecompositionError : KirigamiError {
    using KirigamiError::KirigamiError;
};

// Edge labels on region boundaries.
enum class EdgeLabel { Lower, Upper, Tree, Boundary };

struct LoopPoint {
    Point2 pt;
    EdgeLabel label = EdgeLabel::Lower;  // label of the edge leaving this point
};

// Splits a closed walk into loops without repeated points. Points lying in the
// interior of another edge are inserted first; loops with area below
// eps * perimeter are dropped. Orientation is preserved.
std::vector<std::vector<LoopPoint>> simple_subloops(std::vector<LoopPoint> loop, const Tolerance& tol = {});

// lower ⪯ upper: the loop lower * upper^-1 bounds only counterclockwise regions.
bool precedes(const GeodesicPolygonal& lower, const GeodesicPolygonal& upper, const Tolerance& tol = {});

struct GeodesicChain {
    std::vector<GeodesicPolygonal> geodesics;  // least first
    std::vector<double> enclosed_area;          // between consecutive members
};

GeodesicChain build_chain(const GeodesicSet& gs, const Tolerance& tol = {});

// Arclength from p of a point on the polyline, NaN when not on it.
double arclength_at(const GeodesicPolygonal& g, Point2 x, const Tolerance& tol = {});

enum class PieceKind { First, Last, Middle, Pocket };

struct Piece {
    PieceKind kind = PieceKind::Pocket;
    int region = -1;  // index r of the region between chain[r] and chain[r+1]; -1 for the exterior
    int subregion = -1;
    std::vector<Point2> polygon;  // counterclockwise
    // lower / upper geodesic portions, left to right (First, Last, Middle)
    std::vector<Point2> bottom, top;
    std::vector<double> bottom_s, top_s;
    // free tree paths: left runs from bottom.front() up to top.front(), right from bottom.back() to top.back()
    std::vector<Point2> left_path, right_path;
    // Pocket: the single geodesic portion, left to right
    std::vector<Point2> chain;
    std::vector<double> chain_s;
    double target = 0.0;  // Middle: required u(top.front()) - u(bottom.front()) along e1
};

struct Subregion {
    std::vector<Point2> polygon;
    Point2 p1, q1;
    std::vector<int> trees;  // components inside, ordered by first contact along the lower geodesic
};

struct Region {
    int lower = -1, upper = -1;
    std::vector<Subregion> parts;
};

struct RegionDecomposition {
    double length = 0.0;
    std::vector<Region> regions;
    std::vector<Piece> pieces;
    std::vector<int> boundary_trees;  // trees lying on geodesics only
    bool terminals_on_boundary = true;  // exterior flaps are only built in this case
};

// Requires p and q on the domain boundary for the exterior flaps. Throws
// ExteriorTreeError when a tree lies outside every region.
RegionDecomposition decompose(const GeodesicChain& chain, const KirigamiSpec& spec, const Tolerance& tol = {});

const char* piece_kind_name(PieceKind k);

}  // namespace kirigami
