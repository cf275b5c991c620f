#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kirigami/immersion.hpp"
#include "kirigami/ordering.hpp"

namespace kirigami {

struct FoldError : KirigamiError {
    using KirigamiError::KirigamiError;
};

struct SimpleFold {
    Line crease;              // domain line for chord folds, image line otherwise
    Segment chord;            // domain chord (chord folds only)
    bool image_space = false;
};

// Folding state of one piece. Faces start as a convex partition of the
// polygon with the identity map.
class PieceFolder {
public:
    PieceFolder(std::vector<Point2> polygon, int piece_id, const Tolerance& tol = {});

    // Reflects the part of the piece beyond the chord from polygon vertex
    // `vertex` so that the edge towards polygon vertex `next` continues the
    // direction d_in. Returns nullopt when the edge already does. When the
    // fold line misses the piece near the vertex and moving/keep are given, a
    // chord further along the same line is used that moves the points in
    // moving and none of those in keep.
    std::optional<SimpleFold> chord_fold(int vertex, int next, Point2 d_in, const std::vector<Point2>* moving = nullptr,
                                         const std::vector<Point2>* keep = nullptr);
    // Reflects every layer whose image lies on the side of l containing side_point.
    SimpleFold image_fold(const Line& l, Point2 side_point);
    // Reflects the part of the piece cut off by a chord on the line l. Among
    // the chords on l, the nearest to ref that leaves every point of far on
    // the moving side and every point of near on the other is used.
    // With through_ref the chord must contain ref.
    SimpleFold line_fold(const Line& l, const std::vector<Point2>& far, const std::vector<Point2>& near, Point2 ref,
                         bool through_ref = false);
    void apply(const Motion& g);

    Point2 eval(Point2 x) const;  // image of a point of the closed piece
    int vertex_index(Point2 x) const;

    const std::vector<Point2>& polygon() const { return poly_; }
    std::vector<Face>& faces() { return faces_; }
    const std::vector<Face>& faces() const { return faces_; }

private:
    void check_chord(const Segment& chord) const;
    void reflect_part(const Segment& chord, const std::vector<Point2>& far, const std::vector<Point2>& near,
                      Point2 far_point);

    std::vector<Point2> poly_;
    std::vector<Face> faces_;
    std::vector<Segment> chords_;
    Tolerance tol_;
};

// Straightens the chain (consecutive polygon vertices) so that its image is a
// segment. With lead_dir the first vertex is folded too, onto lead_dir;
// otherwise the first edge keeps its direction. Points in keep must not move
// with any fold.
std::vector<SimpleFold> fold_chain_onto_line(PieceFolder& pf, const std::vector<Point2>& chain,
                                             std::optional<Point2> lead_dir = std::nullopt,
                                             const std::vector<Point2>& keep = {});

// The two lines supporting both point sets while separating them, given as
// the tangency vertices. Line ξ_A rises from the lower set (index a_left)
// to the upper set (index b_right); ξ_B falls from the upper set (b_left) to
// the lower set (a_right).
struct Bitangents {
    Line rising, falling;
    int low_on_rising = -1, up_on_rising = -1;
    int low_on_falling = -1, up_on_falling = -1;
};
// lower / upper: vertex lists ordered left to right; `right` is the general direction of both.
Bitangents supporting_bitangents(const std::vector<Point2>& lower, const std::vector<Point2>& upper, Point2 right,
                                 const Tolerance& tol = {});

struct PieceReport {
    int piece = -1;
    PieceKind kind = PieceKind::Pocket;
    int faces = 0;
    int folds = 0;
    // Middle pieces
    double target = 0.0;
    double achieved = 0.0;
    double max_offset = 0.0, min_offset = 0.0;              // from the tangency vertices
    double max_offset_built = 0.0, min_offset_built = 0.0;  // measured on immersions built at the end lines
    int iterations = 0;
    double theta = 0.0;
    std::string branch;
};

struct PieceImmersion {
    std::vector<Face> faces;
    PieceReport report;
};

// Offset u(top.front()) - u(bottom.front()) of the straight construction for
// fold direction d, in closed form.
double middle_offset(const Piece& pc, Point2 d);

PieceImmersion immerse_P_simple(const Piece& pc, int piece_id, const Tolerance& tol = {});
// Pieces whose taut paths between the chains bend around tree vertices. The
// fold line turns about the common point of the two taut paths; parts of the
// paths it crosses are straightened onto it.
PieceImmersion immerse_P_general(const Piece& pc, int piece_id, const Tolerance& tol = {});
PieceImmersion immerse_corner(const Piece& pc, int piece_id, const Tolerance& tol = {});
PieceImmersion immerse_Q_family(const Piece& pc, int piece_id, const Tolerance& tol = {});
// Builds the middle construction for a given direction (used by the sweep and tests).
PieceImmersion build_middle(const Piece& pc, int piece_id, Point2 d, const Tolerance& tol = {});

// Folds a piece along a spine: a polyline from a point of the bottom chain
// to a point of the top chain. The direction dirs[k] of segment k ends up
// along +e1. Throws FoldError when a
// fold leaves the piece or a chain does not end up on the axis.
PieceImmersion build_spine(const Piece& pc, int piece_id, const std::vector<Point2>& pts,
                           const std::vector<Point2>& dirs, const Tolerance& tol = {});
// Offset achieved by build_spine, in closed form.
double spine_offset(const Piece& pc, const std::vector<Point2>& pts, const std::vector<Point2>& dirs);

// Taut path between two boundary vertices inside a simple polygon.
std::vector<Point2> shortest_path_in_polygon(const std::vector<Point2>& poly, int s, int t, const Tolerance& tol = {});

struct Assembly {
    PiecewiseIsometry u;
    std::vector<PieceReport> reports;
};

Assembly assemble(const KirigamiSpec& spec, const RegionDecomposition& dec, const Tolerance& tol = {});

struct ImmersionReport {
    double orthogonality = 0.0;
    double continuity = 0.0;
    double up_error = 0.0, uq_error = 0.0;
    double rectification = 0.0;
    double area_error = 0.0;  // |sum of face areas - domain area|
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

ImmersionReport verify_immersion(const PiecewiseIsometry& u, const std::vector<GeodesicPolygonal>& geodesics,
                                 const KirigamiSpec& spec, double distance);

}  // namespace kirigami
