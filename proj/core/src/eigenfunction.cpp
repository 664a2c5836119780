#include "mobius/eigenfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "mobius/errors.hpp"
#include "mobius/spectrum.hpp"

namespace mobius {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPrune = 1e-15;

// sin(arg + q pi/2) without rounding the quarter turns.
double sinq(double arg, int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return std::sin(arg);
        case 1: return std::cos(arg);
        case 2: return -std::sin(arg);
        default: return -std::cos(arg);
    }
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

double y_factor(const TrigMode& md, double y, int oy) {
    if (md.n == 0) return oy == 0 ? 1.0 : 0.0;
    const int q0 = md.kind == YKind::Sin ? 0 : 1;
    return ipow(md.n, oy) * sinq(md.n * y, q0 + oy);
}

double reduce_y(double y) {
    double r = std::fmod(y, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

// sin(m x) / sin(x) = U_{m-1}(cos x)
double chebyshev_u(int m, double c) {
    if (m == 1) return 1.0;
    double u0 = 1.0, u1 = 2.0 * c;
    for (int k = 2; k < m; ++k) {
        const double u2 = 2.0 * c * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

using ModeKey = std::tuple<int, int, int>;

ModeKey key_of(const TrigMode& md) { return {md.m, md.n, md.kind == YKind::Sin ? 1 : 0}; }

}  // namespace

EigenfunctionSpec make_spec(std::vector<TrigMode> modes) {
    std::map<ModeKey, double> merged;
    for (const auto& md : modes) {
        if (!is_admissible(md.m, md.n))
            throw AdmissibilityError("mode (" + std::to_string(md.m) + "," + std::to_string(md.n) +
                                     ") is not admissible: need m >= 1, n >= 0, m + n odd");
        if (md.n == 0 && md.kind == YKind::Sin)
            throw AdmissibilityError("mode with n = 0 must use the cosine y-factor");
        if (!std::isfinite(md.c)) throw DomainError("non-finite mode coefficient");
        merged[key_of(md)] += md.c;
    }
    EigenfunctionSpec spec;
    for (const auto& [k, c] : merged) {
        if (std::abs(c) < kPrune) continue;
        const auto [m, n, s] = k;
        spec.modes.push_back({m, n, s ? YKind::Sin : YKind::Cos, c});
    }
    if (spec.modes.empty()) throw DomainError("eigenfunction has no nonzero coefficient");
    const int lam = spec.modes.front().m * spec.modes.front().m + spec.modes.front().n * spec.modes.front().n;
    for (const auto& md : spec.modes)
        if (md.m * md.m + md.n * md.n != lam)
            throw DomainError("modes do not share one eigenvalue: " + std::to_string(lam) + " vs " +
                              std::to_string(md.m * md.m + md.n * md.n));
    spec.eigenvalue = lam;
    return spec;
}

EigenfunctionSpec family_to_spec(const FamilyParams& p) {
    if ((p.m + p.n) % 2 == 0 || p.m < 1 || p.n < 1)
        throw AdmissibilityError("family (" + std::to_string(p.m) + "," + std::to_string(p.n) +
                                 ") needs positive frequencies with odd sum");
    if (p.m == p.n) throw AdmissibilityError("family frequencies must differ");
    const double ct = std::cos(p.theta), st = std::sin(p.theta);
    return make_spec({
        {p.m, p.n, YKind::Sin, ct},
        {p.n, p.m, YKind::Sin, st * std::cos(p.beta)},
        {p.n, p.m, YKind::Cos, st * std::sin(p.beta)},
    });
}

double evaluate(const EigenfunctionSpec& spec, double x, double y) {
    const double yr = reduce_y(y);
    double s = 0.0;
    for (const auto& md : spec.modes) s += md.c * std::sin(md.m * x) * y_factor(md, yr, 0);
    return s;
}

double reduced_value(const EigenfunctionSpec& spec, double x, double y) {
    const double yr = reduce_y(y);
    const double c = std::cos(x);
    double s = 0.0;
    for (const auto& md : spec.modes) s += md.c * chebyshev_u(md.m, c) * y_factor(md, yr, 0);
    return s;
}

double partial_derivative(const EigenfunctionSpec& spec, double x, double y, int ox, int oy) {
    if (ox < 0 || oy < 0) throw UnsupportedOrderError("negative derivative order");
    if (ox + oy > 4)
        throw UnsupportedOrderError("total derivative order " + std::to_string(ox + oy) + " exceeds 4");
    const double yr = reduce_y(y);
    double s = 0.0;
    for (const auto& md : spec.modes) {
        const double yf = y_factor(md, yr, oy);
        if (yf == 0.0) continue;
        s += md.c * ipow(md.m, ox) * sinq(md.m * x, ox) * yf;
    }
    return s;
}

EigenfunctionSpec apply_translation(const EigenfunctionSpec& spec, double t) {
    std::vector<TrigMode> out;
    out.reserve(2 * spec.modes.size());
    for (const auto& md : spec.modes) {
        if (md.n == 0) {
            out.push_back(md);
            continue;
        }
        const double ph = std::fmod(md.n * t, kTwoPi);
        const double cn = std::cos(ph), sn = std::sin(ph);
        if (md.kind == YKind::Sin) {
            out.push_back({md.m, md.n, YKind::Sin, md.c * cn});
            out.push_back({md.m, md.n, YKind::Cos, -md.c * sn});
        } else {
            out.push_back({md.m, md.n, YKind::Cos, md.c * cn});
            out.push_back({md.m, md.n, YKind::Sin, md.c * sn});
        }
    }
    return make_spec(std::move(out));
}

EigenfunctionSpec scaled(const EigenfunctionSpec& spec, double s) {
    std::vector<TrigMode> out = spec.modes;
    for (auto& md : out) md.c *= s;
    return make_spec(std::move(out));
}

double coefficient_mass(const EigenfunctionSpec& spec) {
    double s = 0.0;
    for (const auto& md : spec.modes) s += std::abs(md.c);
    return s;
}

double checkerboard_value(double beta, double x, double y) {
    return std::sin(2.0 * x) * std::sin(3.0 * y) * std::sin(3.0 * x) * std::sin(2.0 * y + beta);
}

EigenfunctionSpec stern_spec(int r, double epsilon) {
    if (r < 1) throw DomainError("stern_spec needs r >= 1");
    if (!(epsilon >= 0.0)) throw DomainError("stern_spec needs epsilon >= 0");
    return make_spec({{1, 2 * r, YKind::Sin, 1.0}, {2 * r, 1, YKind::Sin, 1.0 + epsilon}});
}

double spec_distance(const EigenfunctionSpec& a, const EigenfunctionSpec& b) {
    std::map<ModeKey, double> diff;
    for (const auto& md : a.modes) diff[key_of(md)] += md.c;
    for (const auto& md : b.modes) diff[key_of(md)] -= md.c;
    double d = 0.0;
    for (const auto& [k, v] : diff) d = std::max(d, std::abs(v));
    return d;
}

}  // namespace mobius
