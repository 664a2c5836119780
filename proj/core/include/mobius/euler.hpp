#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mobius/critical.hpp"
#include "mobius/curves.hpp"
#include "mobius/eigenfunction.hpp"
#include "mobius/nodal.hpp"

namespace mobius {

// k = omega + b1 - b0 + 1/2 sum(nu - 2) + 1/2 sum(rho)
struct EulerLedger {
    int k = 0;
    int omega = 0;
    int non_orientable = 0;
    int b0 = 1;
    int b1 = 0;
    int b1_zero_band = 0;   // independent estimate from the sampled zero band
    int nu_excess = 0;      // sum over interior zeros of nu - 2
    int rho_total = 0;      // sum over boundary zeros of rho
    double interior_term = 0.0;
    double boundary_term = 0.0;
    double lhs_minus_rhs = 0.0;
    int resolution = 0;
    std::optional<FamilyParams> params;
    std::vector<CriticalZero> zeros;
    std::vector<std::string> incidence_mismatches;

    // Twice the imbalance with omega replaced, kept in integers.
    int twice_residual(int omega_value) const { return 2 * (k - omega_value - b1 + b0) - nu_excess - rho_total; }
    bool balanced() const { return twice_residual(omega) == 0; }
    std::string describe() const;
};

class EulerViolation : public std::runtime_error {
public:
    explicit EulerViolation(EulerLedger ledger);
    const EulerLedger& ledger() const { return ledger_; }

private:
    EulerLedger ledger_;
};

struct EulerOptions {
    NodalOptions nodal;
    double merge_cells = 2.0;  // incidence and anchor radius in grid cells
};

// Fills the ledger without judging it.
EulerLedger euler_ledger(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                         const NodalAnalysis& analysis, const EulerOptions& options = {});

// Same, then throws EulerViolation when the identity fails, when more than one domain is
// non-orientable, or when the arc counts disagree with the curve incidence.
EulerLedger euler_check(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                        const EulerOptions& options = {});
EulerLedger euler_check(const EigenfunctionSpec& spec, const std::optional<FamilyParams>& params,
                        const NodalAnalysis& analysis, const EulerOptions& options = {});

// Interior (beta, theta) grid of a family. beta_i = (i+1) B/(n+1) with B = pi/3 for [2,3]
// and pi/2 for [1,2]; theta likewise over (0, pi/2), pushed 0.02 away from theta_beta.
std::vector<FamilyParams> sweep_points(Family family, int beta_samples, int theta_samples);

std::vector<EulerLedger> euler_sweep(Family family, int beta_samples, int theta_samples,
                                     const EulerOptions& options = {});

}  // namespace mobius
