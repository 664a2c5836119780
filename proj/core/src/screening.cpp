#include "mobius/screening.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

double bessel_j0_series(double x) {
    const double q = -(x * x) / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double bessel_j01_by_bisection(int iterations) {
    double lo = 2.0, hi = 3.0;
    double flo = bessel_j0_series(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = bessel_j0_series(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<int> multiplicity_filter(const SpectrumTable& table) {
    std::vector<int> out;
    out.reserve(table.clusters.size());
    for (const auto& c : table.clusters) out.push_back(c.first_label);
    return out;
}

double faber_krahn_ratio(double lambda, double j01) {
    if (!(lambda > 0.0)) throw DomainError("faber_krahn_ratio needs lambda > 0");
    return lambda * std::numbers::pi / (j01 * j01);
}

WeylQuadratic weyl_quadratic(double j01) {
    WeylQuadratic p;
    p.leading = std::numbers::pi / (j01 * j01) - std::numbers::pi / 4.0;
    if (!(p.leading < 0.0))
        throw DomainError("quadratic bound has no cutoff: leading coefficient " +
                          std::to_string(p.leading) + " is not negative");
    const double disc = 4.0 + 8.0 * p.leading;
    if (disc < 0.0) {
        // P < 0 everywhere: nothing can be Courant-sharp beyond the first eigenvalue.
        p.largest_root = 0.0;
        p.cutoff = 0.0;
        return p;
    }
    p.largest_root = (-2.0 - std::sqrt(disc)) / (2.0 * p.leading);
    const double x = std::ceil(p.largest_root);
    p.cutoff = x * x;
    return p;
}

double weyl_cutoff(double j01) { return weyl_quadratic(j01).cutoff; }

ScreeningReport screen(const SpectrumTable& table, double j01) {
    ScreeningReport r;
    r.j01 = j01;
    const WeylQuadratic p = weyl_quadratic(j01);
    r.weyl_cutoff = p.cutoff;
    r.weyl_root = p.largest_root;
    if (table.lambda_max < r.weyl_cutoff)
        throw OutOfRangeError("spectrum table reaches " + std::to_string(table.lambda_max) +
                              " but screening needs every eigenvalue below " +
                              std::to_string(r.weyl_cutoff));

    r.candidates_after_multiplicity = multiplicity_filter(table);
    for (int k : r.candidates_after_multiplicity) {
        const double lambda = eigenvalue_at_label(table, k);
        if (k >= 4) r.fk_ratios[k] = faber_krahn_ratio(lambda, j01);
        if (!(lambda < r.weyl_cutoff)) continue;
        r.candidates_below_cutoff.push_back(k);
        if (k < 4 || static_cast<double>(k) <= r.fk_ratios[k]) r.survivors.push_back(k);
    }
    return r;
}

}  // namespace mobius
