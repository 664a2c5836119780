#include "mobius/euler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mobius/bifurcation.hpp"
#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

std::string violation_message(const EulerLedger& l) {
    std::string what = "Euler ledger fails: " + l.describe();
    if (l.non_orientable > 1) what += "; more than one non-orientable domain";
    for (const auto& m : l.incidence_mismatches) what += "; " + m;
    return what;
}

}  // namespace

std::string EulerLedger::describe() const {
    std::ostringstream os;
    os << "k=" << k << " omega=" << omega << " b1=" << b1 << " b0=" << b0 << " interior=" << interior_term
       << " boundary=" << boundary_term << " lhs-rhs=" << lhs_minus_rhs;
    if (params) os << " (beta=" << params->beta << ", theta=" << params->theta << ")";
    return os.str();
}

EulerViolation::EulerViolation(EulerLedger ledger)
    : std::runtime_error(violation_message(ledger)), ledger_(std::move(ledger)) {}

EulerLedger euler_ledger(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                         const NodalAnalysis& analysis, const EulerOptions& options) {
    EulerLedger l;
    l.params = params;
    l.resolution = analysis.grid.nx;
    l.k = analysis.domains.count;
    l.non_orientable = analysis.domains.non_orientable_count();
    l.omega = l.non_orientable > 0 ? 1 : 0;

    const CurveGraph curves = extract_curves(spec, analysis.grid);
    l.zeros = params ? find_critical_zeros(*params) : find_critical_zeros(spec, curves);

    const double radius = options.merge_cells * curves.spacing;
    std::vector<Point2> boundary_anchors, interior_anchors;
    for (const auto& z : l.zeros) {
        const int arcs = z.kind == ZeroKind::Interior ? z.nu : z.rho;
        const int seen = curves.incidence(z.location, radius);
        if (seen != arcs) {
            std::ostringstream os;
            os << "incidence " << seen << " at (" << z.location.x << ", " << z.location.y << ") but order " << z.order
               << " gives " << arcs;
            l.incidence_mismatches.push_back(os.str());
        }
        if (z.kind == ZeroKind::Interior) {
            l.nu_excess += z.nu - 2;
            interior_anchors.push_back(z.location);
        } else {
            l.rho_total += z.rho;
            boundary_anchors.push_back(z.location);
        }
    }
    l.b0 = curves.b0;
    l.b1 = curves.merged_b1(boundary_anchors, interior_anchors, radius);
    l.b1_zero_band = zero_band_b1(analysis.grid);
    l.interior_term = 0.5 * l.nu_excess;
    l.boundary_term = 0.5 * l.rho_total;
    l.lhs_minus_rhs = 0.5 * l.twice_residual(l.omega);
    return l;
}

EulerLedger euler_check(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                        const NodalAnalysis& analysis, const EulerOptions& options) {
    EulerLedger l = euler_ledger(spec, params, analysis, options);
    if (!l.balanced() || l.non_orientable > 1 || !l.incidence_mismatches.empty()) throw EulerViolation(std::move(l));
    return l;
}

EulerLedger euler_check(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                        const EulerOptions& options) {
    NodalOptions nopt = options.nodal;
    nopt.with_orientability = true;
    return euler_check(spec, params, analyze_nodal(spec, nopt), options);
}

std::vector<FamilyParams> sweep_points(Family family, int beta_samples, int theta_samples) {
    if (family == Family::General) throw DomainError("sweeps are defined for the [1,2] and [2,3] families");
    if (beta_samples < 3 || theta_samples < 3) throw DomainError("sweeps need at least 3 samples per axis");
    const double bmax = family == Family::TwoThree ? kPi / 3.0 : kPi / 2.0;
    std::vector<FamilyParams> out;
    for (int i = 0; i < beta_samples; ++i) {
        const double beta = (i + 1) * bmax / (beta_samples + 1);
        const double tb = bifurcation::solve_theta_beta(family, beta).theta_beta;
        for (int j = 0; j < theta_samples; ++j) {
            double theta = (j + 1) * (kPi / 2.0) / (theta_samples + 1);
            if (std::abs(theta - tb) < 0.02) theta = theta < tb ? tb - 0.02 : tb + 0.02;
            out.push_back(family == Family::TwoThree ? FamilyParams::two_three(beta, theta)
                                                     : FamilyParams::one_two(beta, theta));
        }
    }
    return out;
}

std::vector<EulerLedger> euler_sweep(Family family, int beta_samples, int theta_samples, const EulerOptions& options) {
    std::vector<EulerLedger> out;
    for (const auto& p : sweep_points(family, beta_samples, theta_samples))
        out.push_back(euler_check(family_to_spec(p), p, options));
    return out;
}

}  // namespace mobius
