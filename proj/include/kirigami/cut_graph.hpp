#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kirigami/geom.hpp"

namespace kirigami {

struct KirigamiSpec {
    std::vector<Point2> domain;    // convex, counterclockwise
    std::vector<Point2> vertices;  // cut vertices
    std::vector<std::pair<int, int>> edges;  // cut segments, 0-based vertex indices
    Point2 p;
    Point2 q;
};

struct KirigamiError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : KirigamiError {
    using KirigamiError::KirigamiError;
};

struct Violation {
    std::string code;
    std::string message;
    std::vector<int> indices;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
    std::string summary() const;
};

// Checks every structural invariant of the input model. Does not throw.
ValidationReport validate(const KirigamiSpec& spec, const Tolerance& tol = {});

// Throws ValidationError carrying the report summary when invalid.
void require_valid(const KirigamiSpec& spec, const Tolerance& tol = {});

// Removes vertices with no incident edge and reindexes the edges.
KirigamiSpec drop_isolated_vertices(const KirigamiSpec& spec, std::vector<std::string>* warnings);

struct Sector {
    int vertex = -1;
    double start_angle = 0.0;  // direction of the bounding edge where the sector starts
    double width = kTwoPi;
    int start_edge = -1;  // sector runs counterclockwise from start_edge to end_edge
    int end_edge = -1;
};

struct SlitComplex {
    // per vertex: incident edge ids sorted counterclockwise by direction
    std::vector<std::vector<int>> incident;
    std::vector<std::vector<double>> angles;
    std::vector<Sector> sectors;
    std::vector<std::vector<int>> vertex_sectors;  // parallel to incident: sector i starts at incident[i]
    // pairs of sectors at one vertex sharing a bounding edge
    std::vector<std::pair<int, int>> sector_adjacency;

    // Sector at v containing direction dir strictly inside. -1 for a vertex
    // with no incident edge; -2 when dir runs along an incident edge.
    int sector_containing(int v, Point2 dir, double eps_angle = 1e-12) const;
    // Sector starting at (to the left of) / ending at (to the right of) edge e, seen from v.
    int sector_left_of(int v, int e) const;
    int sector_right_of(int v, int e) const;
};

struct DegenerateCutError : KirigamiError {
    using KirigamiError::KirigamiError;
};

SlitComplex build_slit_complex(const KirigamiSpec& spec, const Tolerance& tol = {});

struct Tree {
    std::vector<int> vertices;
    std::vector<int> edges;
    std::vector<int> leaves;
    bool cyclic = false;
};

struct Forest {
    std::vector<Tree> trees;
    std::vector<int> tree_of_edge;
    std::vector<int> tree_of_vertex;  // -1 for isolated vertices
    bool has_cycle() const;
    // Unique vertex path between two vertices of the same acyclic tree.
    std::vector<int> path(const KirigamiSpec& spec, int from, int to) const;
};

Forest components(const KirigamiSpec& spec);

}  // namespace kirigami
