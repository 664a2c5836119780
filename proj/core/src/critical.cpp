#include "mobius/critical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Origin { Root, Extremum, Special };

struct Candidate {
    Point2 p;
    Origin origin = Origin::Root;
    bool degenerate = false;
};

double zero_scale(const EigenfunctionSpec& spec, int order) {
    return 1e-8 * coefficient_mass(spec) * std::pow(std::max(1.0, std::sqrt(spec.eigenvalue)), order);
}

Point2 canonical_boundary(double xi, double y) {
    if (std::abs(y) < 1e-12) y = 0.0;
    if (y >= kPi - 1e-12) return {kPi - xi, std::max(0.0, y - kPi)};
    if (y < 0.0) return {kPi - xi, y + kPi};
    return {xi, y};
}

double bisect(const std::function<double(double)>& fn, double lo, double hi, int iterations = 80) {
    double flo = fn(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = fn(mid);
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

double newton_polish(const std::function<double(double)>& fn, const std::function<double(double)>& dfn, double y) {
    for (int i = 0; i < 5; ++i) {
        const double d = dfn(y);
        if (d == 0.0) break;
        const double next = y - fn(y) / d;
        if (!(std::abs(fn(next)) < std::abs(fn(y)))) break;
        y = next;
    }
    return y;
}

// Zeros of fn on [lo, hi] from sign changes over a uniform scan.
std::vector<double> scan_roots(const std::function<double(double)>& fn, double lo, double hi, int samples,
                               double zero_tol = 0.0) {
    std::vector<double> out;
    double prev_y = lo, prev = fn(lo);
    if (std::abs(prev) <= zero_tol) {
        out.push_back(lo);
        prev = 0.0;
    }
    for (int i = 1; i <= samples; ++i) {
        const double y = lo + (hi - lo) * i / samples;
        double v = fn(y);
        if (std::abs(v) <= zero_tol) v = 0.0;
        if (v == 0.0)
            out.push_back(y);
        else if (prev != 0.0 && (v > 0.0) != (prev > 0.0))
            out.push_back(bisect(fn, prev_y, y));
        prev_y = y;
        prev = v;
    }
    return out;
}

std::map<std::string, double> residuals_at(const EigenfunctionSpec& spec, Point2 p) {
    return {{"phi", evaluate(spec, p.x, p.y)},
            {"phi_x", partial_derivative(spec, p.x, p.y, 1, 0)},
            {"phi_y", partial_derivative(spec, p.x, p.y, 0, 1)},
            {"phi_xy", partial_derivative(spec, p.x, p.y, 1, 1)}};
}

CriticalZero make_zero(const EigenfunctionSpec& spec, Point2 p, ZeroKind kind, bool degenerate) {
    CriticalZero z;
    z.location = p;
    z.kind = kind;
    z.order = classify_order(spec, p);
    if (kind == ZeroKind::Interior)
        z.nu = 2 * z.order;
    else
        z.rho = z.order - 1;
    z.degenerate = degenerate;
    z.residuals = residuals_at(spec, p);
    return z;
}

double boundary_gap(Point2 a, Point2 b) {
    if (a.x == b.x) return std::abs(a.y - b.y);
    // (0, y) and (pi, y') are neighbours only across the corner (0,0) ~ (pi,pi)
    return std::min(std::abs(a.y + kPi - b.y), std::abs(b.y + kPi - a.y));
}

// Keeps one candidate per cluster, preferring analytic locations.
std::vector<Candidate> dedupe_boundary(std::vector<Candidate> cs) {
    std::stable_sort(cs.begin(), cs.end(),
                     [](const Candidate& a, const Candidate& b) { return a.origin > b.origin; });
    std::vector<Candidate> out;
    for (const auto& c : cs) {
        bool merged = false;
        for (auto& o : out) {
            // a simple root this close to a higher-order point is an artefact of the flat branch
            const double radius = (o.origin != Origin::Root || c.origin != Origin::Root) ? 1e-4 : 1e-6;
            if (boundary_gap(o.p, c.p) < radius) {
                if (o.origin != Origin::Root) o.degenerate = true;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        return a.p.x != b.p.x ? a.p.x < b.p.x : a.p.y < b.p.y;
    });
    return out;
}

void check_theta(const FamilyParams& p) {
    if (!(p.theta >= 0.0 && p.theta <= kPi / 2.0)) throw DomainError("theta must lie in [0, pi/2]");
}

bool is_zero_theta(const FamilyParams& p) { return p.theta < 1e-15; }
bool is_right_theta(const FamilyParams& p) { return kPi / 2.0 - p.theta < 1e-15; }

// sin(p x) sin(q y + phi) for the two product members of a family.
struct Product {
    int p = 0;
    int q = 0;
    double phi = 0.0;
};

Product product_of(const FamilyParams& f) {
    if (is_zero_theta(f)) return {f.m, f.n, 0.0};
    return {f.n, f.m, f.beta};
}

std::vector<double> product_y_zeros(const Product& pr) {
    std::vector<double> ys;
    for (int j = -2 * pr.q - 4; j <= 2 * pr.q + 4; ++j) {
        const double y = (j * kPi - pr.phi) / pr.q;
        if (y < -1e-12 || y >= kPi - 1e-12) continue;
        const double yc = std::max(0.0, y);
        if (std::none_of(ys.begin(), ys.end(), [&](double o) { return std::abs(o - yc) < 1e-9; })) ys.push_back(yc);
    }
    std::sort(ys.begin(), ys.end());
    return ys;
}

}  // namespace

int classify_order(const EigenfunctionSpec& spec, Point2 p) {
    if (std::abs(evaluate(spec, p.x, p.y)) > zero_scale(spec, 0))
        throw ClassificationError("(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") is not a zero");
    for (int k = 1; k <= 4; ++k) {
        for (int ox = 0; ox <= k; ++ox) {
            if (std::abs(partial_derivative(spec, p.x, p.y, ox, k - ox)) > zero_scale(spec, k)) {
                if (k == 1)
                    throw ClassificationError("gradient does not vanish at (" + std::to_string(p.x) + ", " +
                                              std::to_string(p.y) + ")");
                return k;
            }
        }
    }
    throw ClassificationError("all derivatives up to order 4 vanish at (" + std::to_string(p.x) + ", " +
                              std::to_string(p.y) + ")");
}

int classify_order(const FamilyParams& params, Point2 location) {
    return classify_order(family_to_spec(params), location);
}

std::vector<CriticalZero> find_interior_critical_zeros(const FamilyParams& params) {
    check_theta(params);
    const EigenfunctionSpec spec = family_to_spec(params);
    std::vector<CriticalZero> out;
    if (is_zero_theta(params) || is_right_theta(params)) {
        const Product pr = product_of(params);
        for (int k = 1; k < pr.p; ++k)
            for (double y : product_y_zeros(pr)) out.push_back(make_zero(spec, {k * kPi / pr.p, y}, ZeroKind::Interior, false));
        return out;
    }
    const int m = params.m, n = params.n;
    for (int k = 0; k < n; ++k) {
        const double ys = k * kPi / n;
        if (std::abs(std::sin(m * ys + params.beta)) > 1e-12) continue;
        // The whole line is nodal; crossings are where the transverse derivative vanishes.
        auto dy = [&](double x) { return partial_derivative(spec, x, ys, 0, 1); };
        auto dxy = [&](double x) { return partial_derivative(spec, x, ys, 1, 1); };
        std::vector<Point2> found;
        for (double x : scan_roots(dy, 1e-6, kPi - 1e-6, 2048)) {
            x = newton_polish(dy, dxy, x);
            if (x <= 1e-6 || x >= kPi - 1e-6) continue;
            if (std::any_of(found.begin(), found.end(), [&](Point2 q) { return std::abs(q.x - x) < 1e-6; })) continue;
            found.push_back({x, ys});
        }
        for (const auto& p : found) out.push_back(make_zero(spec, p, ZeroKind::Interior, false));
    }
    return out;
}

std::vector<CriticalZero> find_boundary_critical_zeros(const FamilyParams& params) {
    check_theta(params);
    const EigenfunctionSpec spec = family_to_spec(params);
    std::vector<Candidate> cands;
    if (is_zero_theta(params) || is_right_theta(params)) {
        const Product pr = product_of(params);
        for (double xi : {0.0, kPi})
            for (double y : product_y_zeros(pr)) cands.push_back({canonical_boundary(xi, y), Origin::Special, false});
    } else {
        const int m = params.m, n = params.n;
        const double beta = params.beta;
        const double ct = std::cos(params.theta) / std::sin(params.theta);
        const double tol_h = 1e-10 * (m + n);
        const double tol_f = 1e-9 * (1.0 + std::abs(ct));
        auto gfun = [&](double y) {
            return m * std::cos(m * y + beta) * std::sin(n * y) - n * std::cos(n * y) * std::sin(m * y + beta);
        };
        std::vector<double> poles;
        for (int k = 0; k <= n; ++k) poles.push_back(k * kPi / n);
        std::vector<double> extrema;
        for (double y : scan_roots(gfun, 0.0, kPi, 4096))
            if (std::none_of(poles.begin(), poles.end(), [&](double p) { return std::abs(p - y) < 1e-6; }))
                extrema.push_back(y);

        for (double xi : {0.0, kPi}) {
            const double eps = xi == 0.0 ? 1.0 : -1.0;
            const double em = m % 2 == 0 ? 1.0 : eps, en = n % 2 == 0 ? 1.0 : eps;
            auto hfun = [&](double y) {
                return m * em * std::cos(params.theta) * std::sin(n * y) +
                       n * en * std::sin(params.theta) * std::sin(m * y + beta);
            };
            auto dhfun = [&](double y) {
                return m * n * em * std::cos(params.theta) * std::cos(n * y) +
                       n * m * en * std::sin(params.theta) * std::cos(m * y + beta);
            };
            auto ffun = [&](double y) {
                return ct + eps * (static_cast<double>(n) / m) * std::sin(m * y + beta) / std::sin(n * y);
            };
            for (int k = 0; k < n; ++k)
                if (std::abs(hfun(poles[k])) <= tol_h)
                    cands.push_back({canonical_boundary(xi, poles[k]), Origin::Special, false});
            for (double e : extrema)
                if (std::abs(ffun(e)) <= tol_f) cands.push_back({canonical_boundary(xi, e), Origin::Extremum, true});

            std::vector<double> br = poles;
            br.insert(br.end(), extrema.begin(), extrema.end());
            std::sort(br.begin(), br.end());
            for (std::size_t i = 0; i + 1 < br.size(); ++i) {
                const double a = br[i], b = br[i + 1];
                if (b - a < 1e-12) continue;
                const double d = std::min(1e-9, (b - a) / 4.0);
                const double fa = ffun(a + d), fb = ffun(b - d);
                if (!std::isfinite(fa) || !std::isfinite(fb) || fa == 0.0 || fb == 0.0) continue;
                if ((fa > 0.0) == (fb > 0.0)) continue;
                double y = bisect(ffun, a + d, b - d);
                y = newton_polish(hfun, dhfun, y);
                cands.push_back({canonical_boundary(xi, y), Origin::Root, false});
            }
        }
    }
    std::vector<CriticalZero> out;
    for (const auto& c : dedupe_boundary(std::move(cands)))
        out.push_back(make_zero(spec, c.p, ZeroKind::Boundary, c.degenerate));
    return out;
}

std::vector<CriticalZero> find_critical_zeros(const FamilyParams& params) {
    auto out = find_interior_critical_zeros(params);
    auto bd = find_boundary_critical_zeros(params);
    out.insert(out.end(), bd.begin(), bd.end());
    return out;
}

std::vector<CriticalZero> find_critical_zeros(const EigenfunctionSpec& spec, const CurveGraph& curves) {
    std::vector<CriticalZero> out;
    std::vector<Point2> interior;
    for (const auto& p : curves.junctions()) {
        const bool seen = std::any_of(interior.begin(), interior.end(), [&](Point2 q) {
            const Point2 l = lift_near(p, q);
            return std::hypot(l.x - q.x, l.y - q.y) < 1e-6;
        });
        if (!seen) interior.push_back(p);
    }
    for (const auto& p : interior) out.push_back(make_zero(spec, p, ZeroKind::Interior, false));

    const double scale1 = coefficient_mass(spec) * std::max(1.0, std::sqrt(spec.eigenvalue));
    constexpr int samples = 4096;
    std::vector<Candidate> cands;
    for (double xi : {0.0, kPi}) {
        auto hfun = [&](double y) { return partial_derivative(spec, xi, y, 1, 0); };
        auto dhfun = [&](double y) { return partial_derivative(spec, xi, y, 1, 1); };
        for (double y : scan_roots(hfun, 0.0, kPi, samples, 1e-13 * scale1))
            cands.push_back({canonical_boundary(xi, newton_polish(hfun, dhfun, y)), Origin::Root, false});
        // Touching zeros do not change sign: look at small local minima of |d/dx Phi|.
        std::vector<double> hv(samples + 1);
        for (int i = 0; i <= samples; ++i) hv[i] = hfun(kPi * i / samples);
        for (int i = 1; i < samples; ++i) {
            const double a = std::abs(hv[i - 1]), b = std::abs(hv[i]), c = std::abs(hv[i + 1]);
            if (!(b <= a && b <= c) || b > 1e-2 * scale1) continue;
            if ((hv[i - 1] > 0.0) != (hv[i + 1] > 0.0)) continue;
            double lo = kPi * (i - 1) / samples, hi = kPi * (i + 1) / samples;
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            for (int it = 0; it < 100; ++it) {
                const double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                if (std::abs(hfun(x1)) < std::abs(hfun(x2)))
                    hi = x2;
                else
                    lo = x1;
            }
            const double y = 0.5 * (lo + hi);
            if (std::abs(hfun(y)) <= 1e-9 * scale1) cands.push_back({canonical_boundary(xi, y), Origin::Extremum, true});
        }
    }
    for (const auto& c : dedupe_boundary(std::move(cands)))
        out.push_back(make_zero(spec, c.p, ZeroKind::Boundary, c.degenerate));
    return out;
}

}  // namespace mobius
