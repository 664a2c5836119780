#include "mobius/bifurcation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius::bifurcation {

namespace {

constexpr double kPi = std::numbers::pi;

double arccot(double u) { return std::atan2(1.0, u); }

// d/dy g(beta, y)
double dg_dy(double beta, double y) { return 5.0 * std::sin(2.0 * y + beta) * std::sin(3.0 * y); }

double y_beta_two_three(double beta) {
    constexpr double eps = 1e-10;
    double lo = eps, hi = kPi / 3.0 - eps;
    // y -> arccot(h(cot y)) is increasing on (0, pi).
    auto phase = [beta](double y) { return arccot(h(1.0 / std::tan(y))) - beta; };
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (phase(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    double y = 0.5 * (lo + hi);
    for (int i = 0; i < 3; ++i) {
        const double d = dg_dy(beta, y);
        if (d == 0.0) break;
        const double next = y - g(beta, y) / d;
        if (std::abs(g(beta, next)) < std::abs(g(beta, y))) y = next;
    }
    return y;
}

double cube_residual(double beta, double y) {
    const double c = std::cos(y), s = std::sin(y);
    return c * c * c * std::sin(beta) - s * s * s * std::cos(beta);
}

double y_beta_one_two(double beta) {
    double y = arccot(std::cbrt(1.0 / std::tan(beta)));
    for (int i = 0; i < 3; ++i) {
        const double c = std::cos(y), s = std::sin(y);
        const double d = -3.0 * c * c * s * std::sin(beta) - 3.0 * s * s * c * std::cos(beta);
        if (d == 0.0) break;
        const double next = y - cube_residual(beta, y) / d;
        if (std::abs(cube_residual(beta, next)) < std::abs(cube_residual(beta, y))) y = next;
    }
    return y;
}

}  // namespace

double h(double t) { return 0.5 * t * (5.0 + 3.0 * t * t * t * t) / (1.0 + 5.0 * t * t); }

double h_prime(double t) {
    const double a = 3.0 * t * t - 1.0;
    const double d = 1.0 + 5.0 * t * t;
    return 2.5 * a * a * (t * t + 1.0) / (d * d);
}

double ell(double t) {
    const double t2 = t * t;
    return 2.0 * t * t2 * (5.0 + t2) / (3.0 + 5.0 * t2 * t2);
}

double f(double beta, double y) {
    const double s = std::sin(3.0 * y);
    if (std::abs(s) < 1e-14)
        throw PoleError("f(beta, y) has a pole at y = " + std::to_string(y), y,
                        static_cast<int>(std::floor(y / (kPi / 3.0))));
    return 1.5 * std::sin(2.0 * y + beta) / s;
}

double g(double beta, double y) {
    return 2.0 * std::cos(2.0 * y + beta) * std::sin(3.0 * y) -
           3.0 * std::cos(3.0 * y) * std::sin(2.0 * y + beta);
}

double df_dy(double beta, double y) {
    const double s = std::sin(3.0 * y);
    if (std::abs(s) < 1e-14)
        throw PoleError("df/dy has a pole at y = " + std::to_string(y), y,
                        static_cast<int>(std::floor(y / (kPi / 3.0))));
    return 3.0 * g(beta, y) / (2.0 * s * s);
}

double f12(double beta, double y) {
    const double s = std::sin(2.0 * y);
    if (std::abs(s) < 1e-14)
        throw PoleError("f12(beta, y) has a pole at y = " + std::to_string(y), y,
                        static_cast<int>(std::floor(y / (kPi / 2.0))));
    return 2.0 * std::sin(y + beta) / s;
}

double solve_y_beta(Family family, double beta) {
    switch (family) {
        case Family::TwoThree:
            if (!(beta > 0.0 && beta < kPi / 3.0))
                throw DomainError("y_beta for the [2,3] family needs beta in (0, pi/3)");
            return y_beta_two_three(beta);
        case Family::OneTwo:
            if (!(beta > 0.0 && beta < kPi / 2.0))
                throw DomainError("y_beta for the [1,2] family needs beta in (0, pi/2)");
            return y_beta_one_two(beta);
        default:
            throw DomainError("bifurcation values exist only for the [1,2] and [2,3] families");
    }
}

BifurcationResult solve_theta_beta(Family family, double beta) {
    BifurcationResult r;
    r.family = family;
    r.beta = beta;
    r.y_beta = solve_y_beta(family, beta);
    const double y = r.y_beta;
    if (family == Family::TwoThree) {
        r.m_beta = f(beta, y);
        r.theta_beta = arccot(r.m_beta);
        r.residuals[0] = g(beta, y);
        r.residuals[1] = 2.0 * std::cos(r.theta_beta) * std::sin(3.0 * y) -
                         3.0 * std::sin(r.theta_beta) * std::sin(2.0 * y + beta);
        r.near_degenerate = y < 1e-6 || kPi / 3.0 - y < 1e-6;
    } else {
        r.m_beta = f12(beta, y);
        r.theta_beta = arccot(r.m_beta);
        r.residuals[0] = cube_residual(beta, y);
        r.residuals[1] = std::cos(r.theta_beta) * std::sin(2.0 * y) -
                         2.0 * std::sin(r.theta_beta) * std::sin(y + beta);
        r.near_degenerate = y < 1e-6 || kPi / 2.0 - y < 1e-6;
    }
    return r;
}

}  // namespace mobius::bifurcation
