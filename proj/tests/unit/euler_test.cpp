#include <gtest/gtest.h>

#include <cmath>
#include <optional>

#include "mobius/bifurcation.hpp"
#include "mobius/errors.hpp"
#include "mobius/euler.hpp"
#include "oracles.hpp"

using namespace mobius;
using oracle::pi;

namespace {

EulerOptions options(int n = 400) {
    EulerOptions o;
    o.nodal.resolution = n;
    return o;
}

EulerLedger ledger(const FamilyParams& p) { return euler_check(family_to_spec(p), p, options()); }
EulerLedger ledger(const EigenfunctionSpec& s) { return euler_check(s, std::nullopt, options()); }

EigenfunctionSpec sin_mx(int m) { return make_spec({{m, 0, YKind::Cos, 1.0}}); }

}  // namespace

TEST(Euler, ProductPatternTerms) {
    const EulerLedger l = ledger(FamilyParams::two_three(0.3, 0.0));
    EXPECT_EQ(l.k, 6);
    EXPECT_EQ(l.omega, 0);
    EXPECT_EQ(l.b1, 1);
    EXPECT_EQ(l.b0, 1);
    EXPECT_EQ(l.nu_excess, 6);   // three crossings, nu = 4
    EXPECT_EQ(l.rho_total, 6);   // six boundary zeros, rho = 1
    EXPECT_DOUBLE_EQ(l.interior_term, 3.0);
    EXPECT_DOUBLE_EQ(l.boundary_term, 3.0);
    EXPECT_DOUBLE_EQ(l.lhs_minus_rhs, 0.0);
    EXPECT_TRUE(l.balanced());
}

TEST(Euler, BalancesOnTheReferenceConfigurations) {
    struct Case {
        FamilyParams p;
        int k;
    };
    const double tb = bifurcation::solve_theta_beta(Family::TwoThree, 0.4).theta_beta;
    const Case cs[] = {
        {FamilyParams::two_three(0.2, pi / 2), 6}, {FamilyParams::two_three(0.0, 0.2), 4},
        {FamilyParams::two_three(0.0, pi / 4), 4}, {FamilyParams::two_three(0.0, 1.2), 4},
        {FamilyParams::two_three(pi / 3, 0.2), 4}, {FamilyParams::two_three(pi / 3, pi / 4), 4},
        {FamilyParams::two_three(pi / 3, 1.2), 4}, {FamilyParams::two_three(0.4, tb - 0.1), 3},
        {FamilyParams::two_three(0.4, tb), 3},     {FamilyParams::two_three(0.4, tb + 0.1), 3},
        {FamilyParams::one_two(0.3, 0.2), 2},      {FamilyParams::one_two(0.3, 1.3), 2},
        {FamilyParams::one_two(0.0, 0.7), 2},      {FamilyParams::one_two(pi / 2, 0.7), 2},
    };
    for (const auto& c : cs) {
        const EulerLedger l = ledger(c.p);
        EXPECT_EQ(l.k, c.k) << l.describe();
        EXPECT_EQ(l.twice_residual(l.omega), 0) << l.describe();
        EXPECT_TRUE(l.incidence_mismatches.empty()) << l.describe();
        EXPECT_EQ(l.b1, l.b1_zero_band) << l.describe();
    }
}

TEST(Euler, OmegaIsOneForTheOneSidedPatterns) {
    std::vector<EulerLedger> ls{ledger(sin_mx(1)), ledger(sin_mx(3)), ledger(sin_mx(5))};
    for (double beta : {0.3, 0.9}) {
        const double t12 = bifurcation::solve_theta_beta(Family::OneTwo, beta).theta_beta;
        ls.push_back(ledger(FamilyParams::one_two(beta, (t12 + pi / 2) / 2)));
    }
    for (double beta : {0.3, 0.7}) {
        const double t23 = bifurcation::solve_theta_beta(Family::TwoThree, beta).theta_beta;
        ls.push_back(ledger(FamilyParams::two_three(beta, (t23 + pi / 2) / 2)));
    }
    EXPECT_EQ(ls[0].k, 1);
    EXPECT_EQ(ls[1].k, 2);
    EXPECT_EQ(ls[2].k, 3);
    for (const auto& l : ls) {
        EXPECT_EQ(l.omega, 1) << l.describe();
        EXPECT_EQ(l.non_orientable, 1) << l.describe();
        EXPECT_TRUE(l.balanced()) << l.describe();
        // The orientability term is live: dropping it unbalances by exactly one.
        EXPECT_EQ(l.twice_residual(0), 2) << l.describe();
    }
}

TEST(Euler, OmegaIsZeroBelowTheBifurcation) {
    const double beta = 0.7;
    const double tb = bifurcation::solve_theta_beta(Family::TwoThree, beta).theta_beta;
    const EulerLedger l = ledger(FamilyParams::two_three(beta, tb / 2));
    EXPECT_EQ(l.omega, 0);
    EXPECT_EQ(l.non_orientable, 0);
    EXPECT_TRUE(l.balanced());
}

TEST(Euler, SternPatterns) {
    for (int r : {2, 3}) {
        const EulerLedger l = ledger(stern_spec(r, 0.01));
        EXPECT_EQ(l.k, 2) << l.describe();
        EXPECT_TRUE(l.balanced()) << l.describe();
    }
}

TEST(Euler, TamperedCountIsRejected) {
    const FamilyParams p = FamilyParams::two_three(0.4, 0.3);
    const EigenfunctionSpec s = family_to_spec(p);
    NodalAnalysis a = analyze_nodal(s, options().nodal);
    a.domains.count += 1;
    try {
        euler_check(s, p, a, options());
        FAIL() << "expected EulerViolation";
    } catch (const EulerViolation& e) {
        EXPECT_EQ(e.ledger().twice_residual(e.ledger().omega), 2);
        EXPECT_FALSE(e.ledger().balanced());
    }
    const EulerLedger quiet = euler_ledger(s, p, a, options());
    EXPECT_FALSE(quiet.balanced());
}

TEST(Euler, SweepPoints) {
    const auto pts = sweep_points(Family::TwoThree, 4, 5);
    ASSERT_EQ(pts.size(), 20u);
    for (const auto& p : pts) {
        EXPECT_GT(p.beta, 0.0);
        EXPECT_LT(p.beta, pi / 3);
        EXPECT_GT(p.theta, 0.0);
        EXPECT_LT(p.theta, pi / 2);
        EXPECT_GE(std::abs(p.theta - bifurcation::solve_theta_beta(Family::TwoThree, p.beta).theta_beta), 0.02 - 1e-12);
    }
    EXPECT_NEAR(pts.front().beta, (pi / 3) / 5, 1e-15);
    EXPECT_THROW(sweep_points(Family::TwoThree, 2, 5), DomainError);
    EXPECT_THROW(sweep_points(Family::General, 4, 4), DomainError);
}

TEST(Euler, SmallSweepsBalance) {
    for (Family f : {Family::TwoThree, Family::OneTwo}) {
        for (const auto& l : euler_sweep(f, 3, 3, options(300))) {
            EXPECT_TRUE(l.balanced()) << l.describe();
            EXPECT_EQ(l.k, f == Family::TwoThree ? 3 : 2) << l.describe();
            EXPECT_LE(l.non_orientable, 1);
        }
    }
}
