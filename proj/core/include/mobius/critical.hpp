#pragma once

#include <map>
#include <string>
#include <vector>

#include "mobius/curves.hpp"
#include "mobius/eigenfunction.hpp"

namespace mobius {

enum class ZeroKind { Interior, Boundary };

struct CriticalZero {
    Point2 location;
    ZeroKind kind = ZeroKind::Interior;
    int order = 2;
    int nu = 0;   // semi-arcs at an interior zero (2 * order)
    int rho = 0;  // arcs leaving a boundary zero (order - 1)
    bool degenerate = false;  // double root of the boundary equation, or merged candidates
    std::map<std::string, double> residuals;
};

// Family with theta in [0, pi/2]. For theta in (0, pi/2) interior zeros can only sit on a
// line y = k pi/n that is entirely nodal; theta in {0, pi/2} is the product case.
std::vector<CriticalZero> find_interior_critical_zeros(const FamilyParams& params);

// Roots of cot(theta) = -cos(xi) f(y) on each monotone branch of
// f(y) = (n/m) sin(m y + beta) / sin(n y), plus the poles where the boundary derivative
// vanishes. Locations are canonical: y in [0, pi).
std::vector<CriticalZero> find_boundary_critical_zeros(const FamilyParams& params);

std::vector<CriticalZero> find_critical_zeros(const FamilyParams& params);

// Lowest total order with a non-vanishing partial derivative, from the closed-form ladder
// up to order 4. A derivative vanishes below 1e-8 * sum|c| * sqrt(lambda)^order.
// Throws ClassificationError when the point is not a critical zero or the order exceeds 4.
int classify_order(const EigenfunctionSpec& spec, Point2 location);
int classify_order(const FamilyParams& params, Point2 location);

// Critical zeros of an arbitrary spec: boundary roots of d/dx Phi from a dense scan, and
// interior zeros from the junctions of the curve graph.
std::vector<CriticalZero> find_critical_zeros(const EigenfunctionSpec& spec, const CurveGraph& curves);

}  // namespace mobius
