#pragma once

#include <vector>

#include "mobius/eigenfunction.hpp"
#include "mobius/nodal.hpp"

namespace mobius {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Canonical representative in (0, pi) x [0, pi) of a point of the strip.
Point2 to_fundamental(Point2 p);

// Image of q under the deck group closest to `near`.
Point2 lift_near(Point2 q, Point2 near);

enum class VertexKind { Boundary, Junction, LoopAnchor };

struct CurveVertex {
    Point2 p;
    VertexKind kind = VertexKind::Boundary;
    int degree = 0;
};

// Points are in fundamental coordinates; consecutive points may sit on opposite sides
// of the seam. Closed loops repeat their first point at the end.
struct CurvePolyline {
    int v0 = -1;
    int v1 = -1;
    std::vector<Point2> points;
};

struct CurveGraph {
    std::vector<CurveVertex> vertices;
    std::vector<CurvePolyline> edges;
    std::vector<int> edge_component;
    int components = 0;
    int boundary_component = 0;  // component holding the boundary circle
    int b0 = 1;
    int b1 = 1;
    double spacing = 0.0;  // grid cell size the curves were extracted at

    // Number of times the curves cross the circle of the given radius around p.
    // Equals the number of nodal semi-arcs leaving p when the radius resolves p.
    int incidence(Point2 p, double radius) const;

    // b1 after gluing every component that passes within `radius` of a boundary anchor to
    // the boundary circle, and all components meeting near one interior anchor together.
    int merged_b1(const std::vector<Point2>& boundary_anchors, const std::vector<Point2>& interior_anchors,
                  double radius) const;

    std::vector<Point2> junctions() const;
    std::vector<Point2> boundary_hits() const;
};

// Marching squares on the cell-centre values plus the two Dirichlet edges, stitched
// across the seam. A saddle cell (four edge crossings) becomes a junction vertex when
// Newton on the gradient finds a zero of Phi there; otherwise it is split by the sign
// of the bilinear saddle value.
CurveGraph extract_curves(const EigenfunctionSpec& spec, const SignGrid& grid);

// Components of the zero band (8-neighbour, seam glued) plus the boundary circle;
// an independent estimate of b1.
int zero_band_b1(const SignGrid& grid);

struct EnclosedCurve {
    int component = -1;
    int cell_x = -1;  // checkerboard column (0..3)
    int cell_y = -1;  // checkerboard row, ordered by y
    bool white = true;
};

struct EnclosedLoopReport {
    bool ok = true;
    std::vector<EnclosedCurve> offenders;
};

// Looks for a curve component that stays inside one cell of the checkerboard of
// sin(2x) sin(3y) sin(3x) sin(2y + beta).
EnclosedLoopReport enclosed_loop_report(const CurveGraph& curves, double beta);
bool no_enclosed_loop_check(const EigenfunctionSpec& spec, const SignGrid& grid, double beta);

}  // namespace mobius
