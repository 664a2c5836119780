#pragma once

#include <array>

#include "mobius/eigenfunction.hpp"

namespace mobius::bifurcation {

// 0.5 t (5 + 3t^4) / (1 + 5t^2); an increasing odd bijection of the real line.
double h(double t);
double h_prime(double t);

// 2t^3 (5 + t^2) / (3 + 5t^4); tan(beta) = ell(tan y) on the zero set of g.
double ell(double t);

// [2,3] family: f = 1.5 sin(2y+beta) / sin(3y), g = 2cos(2y+beta) sin(3y) - 3cos(3y) sin(2y+beta).
// f throws PoleError when sin(3y) vanishes.
double f(double beta, double y);
double g(double beta, double y);
double df_dy(double beta, double y);  // 3 g / (2 sin^2(3y))

// [1,2] family analogue: f12 = 2 sin(y+beta) / sin(2y).
double f12(double beta, double y);

// Minimiser of f(beta, .) on the first branch: (0, pi/3) for [2,3], (0, pi/2) for [1,2].
// beta must lie in the open canonical range.
double solve_y_beta(Family family, double beta);

struct BifurcationResult {
    Family family = Family::TwoThree;
    double beta = 0.0;
    double y_beta = 0.0;
    double m_beta = 0.0;      // minimum of f (resp. f12); cot(theta_beta) = m_beta
    double theta_beta = 0.0;
    std::array<double, 2> residuals{};  // critical-point equation, boundary-derivative equation
    bool near_degenerate = false;
};

BifurcationResult solve_theta_beta(Family family, double beta);

}  // namespace mobius::bifurcation
