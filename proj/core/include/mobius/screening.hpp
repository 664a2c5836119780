#pragma once

#include <map>
#include <vector>

#include "mobius/spectrum.hpp"

namespace mobius {

// First positive zero of J0.
inline constexpr double kJ01 = 2.404825557695773;

// Power series of J0; accurate in double precision for |x| <= 10.
double bessel_j0_series(double x);

// Root of bessel_j0_series on [2, 3] by bisection.
double bessel_j01_by_bisection(int iterations = 60);

// Labels k with k == 1 or lambda_{k-1} < lambda_k: the first label of each cluster.
std::vector<int> multiplicity_filter(const SpectrumTable& table);

// lambda pi / j01^2. A Courant-sharp lambda_k with k >= 4 needs k <= ratio.
double faber_krahn_ratio(double lambda, double j01 = kJ01);

// P(x) = (pi/j01^2 - pi/4) x^2 + 2x - 2, with x = sqrt(lambda).
struct WeylQuadratic {
    double leading = 0.0;
    double largest_root = 0.0;  // P < 0 for every x beyond this root
    double cutoff = 0.0;        // ceil(largest_root)^2

    double operator()(double x) const { return leading * x * x + 2.0 * x - 2.0; }
};

// Throws DomainError when the leading coefficient is not negative (no cutoff exists).
WeylQuadratic weyl_quadratic(double j01 = kJ01);

double weyl_cutoff(double j01 = kJ01);

struct ScreeningReport {
    double j01 = kJ01;
    std::vector<int> candidates_after_multiplicity;
    std::vector<int> candidates_below_cutoff;
    std::map<int, double> fk_ratios;  // labels k >= 4 among the candidates
    double weyl_cutoff = 0.0;
    double weyl_root = 0.0;
    std::vector<int> survivors;
};

// Requires the table to reach the Weyl cutoff.
ScreeningReport screen(const SpectrumTable& table, double j01 = kJ01);

}  // namespace mobius
