#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mobius/bifurcation.hpp"
#include "mobius/critical.hpp"
#include "mobius/errors.hpp"
#include "mobius/nodal.hpp"
#include "oracles.hpp"

using namespace mobius;
using oracle::pi;

namespace {

const CriticalZero* find_at(const std::vector<CriticalZero>& zs, Point2 p, double tol = 1e-6) {
    for (const auto& z : zs)
        if (std::abs(z.location.x - p.x) < tol && std::abs(z.location.y - p.y) < tol) return &z;
    return nullptr;
}

int count_on_edge(const std::vector<CriticalZero>& zs, double x, double y0, double y1) {
    return static_cast<int>(std::count_if(zs.begin(), zs.end(), [&](const CriticalZero& z) {
        return z.kind == ZeroKind::Boundary && z.location.x == x && z.location.y > y0 && z.location.y < y1;
    }));
}

}  // namespace

TEST(Critical, OrderFourAtTheCorner) {
    const FamilyParams p = FamilyParams::two_three(pi / 3, pi / 4);
    const auto zs = find_critical_zeros(p);
    const CriticalZero* z = find_at(zs, {pi, pi / 3});
    ASSERT_NE(z, nullptr);
    EXPECT_EQ(z->kind, ZeroKind::Boundary);
    EXPECT_EQ(z->order, 4);
    EXPECT_EQ(z->rho, 3);
    EXPECT_EQ(classify_order(p, {pi, pi / 3}), 4);
}

TEST(Critical, OrderThreeAtTheBifurcation) {
    for (int i = 1; i <= 5; ++i) {
        const double beta = i * (pi / 3) / 6;
        const auto b = bifurcation::solve_theta_beta(Family::TwoThree, beta);
        const FamilyParams p = FamilyParams::two_three(beta, b.theta_beta);
        const auto zs = find_critical_zeros(p);
        const CriticalZero* z = find_at(zs, {pi, b.y_beta}, 1e-5);
        ASSERT_NE(z, nullptr) << beta;
        EXPECT_EQ(z->order, 3) << beta;
        EXPECT_EQ(z->rho, 2);
        EXPECT_EQ(classify_order(p, {pi, b.y_beta}), 3);
    }
}

TEST(Critical, GenericBoundaryZerosHaveOrderTwo) {
    const auto zs = find_boundary_critical_zeros(FamilyParams::two_three(0.4, 0.3));
    ASSERT_FALSE(zs.empty());
    for (const auto& z : zs) {
        EXPECT_EQ(z.order, 2);
        EXPECT_EQ(z.rho, 1);
    }
}

TEST(Critical, NoInteriorZerosForGenericParameters) {
    std::mt19937_64 rng(oracle::kSeed);
    for (int i = 0; i < 20; ++i) {
        const double beta = oracle::uniform(rng, 1e-3, pi / 3 - 1e-3), theta = oracle::uniform(rng, 1e-3, pi / 2 - 1e-3);
        EXPECT_TRUE(find_interior_critical_zeros(FamilyParams::two_three(beta, theta)).empty()) << beta << ' ' << theta;
    }
}

TEST(Critical, ProductCaseHasCrossings) {
    const auto zs = find_critical_zeros(FamilyParams::two_three(0.3, 0.0));  // sin 2x sin 3y
    int interior = 0, boundary = 0;
    for (const auto& z : zs) {
        if (z.kind == ZeroKind::Interior) {
            ++interior;
            EXPECT_EQ(z.order, 2);
            EXPECT_EQ(z.nu, 4);
            EXPECT_NEAR(z.location.x, pi / 2, 1e-12);
        } else {
            ++boundary;
            EXPECT_EQ(z.order, 2);
        }
    }
    EXPECT_EQ(interior, 3);
    EXPECT_EQ(boundary, 6);
}

TEST(Critical, InteriorZeroOnAFullyNodalLine) {
    // beta = pi/3: y = pi/3 is entirely nodal and meets the other branch in the interior.
    const auto zs = find_interior_critical_zeros(FamilyParams::two_three(pi / 3, pi / 4));
    for (const auto& z : zs) {
        EXPECT_NEAR(std::sin(3 * z.location.y) * std::sin(2 * z.location.y + pi / 3), 0.0, 1e-12);
        EXPECT_EQ(z.nu, 2 * z.order);
    }
}

// Roots of cot(theta) = f(y) on (0, pi/3) at xi = pi: none, one double or two simple.
TEST(Critical, BoundaryRootTrichotomy) {
    std::mt19937_64 rng(oracle::kSeed + 1);
    for (int i = 0; i < 30; ++i) {
        const double beta = oracle::uniform(rng, 0.02, pi / 3 - 0.02);
        const auto b = bifurcation::solve_theta_beta(Family::TwoThree, beta);
        double theta;
        int want;
        switch (i % 3) {
            case 0: theta = b.theta_beta + oracle::uniform(rng, 0.02, pi / 2 - b.theta_beta - 0.01); want = 0; break;
            case 1: theta = b.theta_beta; want = 1; break;
            default: theta = oracle::uniform(rng, 0.01, b.theta_beta - 0.02); want = 2; break;
        }
        const auto zs = find_boundary_critical_zeros(FamilyParams::two_three(beta, theta));
        EXPECT_EQ(count_on_edge(zs, pi, 0.0, pi / 3), want) << "beta " << beta << " theta " << theta
                                                            << " cot " << 1 / std::tan(theta) << " m " << b.m_beta;
    }
}

TEST(CriticalProperty, ReportedZerosAreCritical) {
    std::mt19937_64 rng(oracle::kSeed + 2);
    std::vector<FamilyParams> ps{FamilyParams::two_three(pi / 3, pi / 4), FamilyParams::two_three(0.0, 0.0),
                                 FamilyParams::two_three(0.0, 0.7), FamilyParams::one_two(0.5, pi / 2)};
    for (int i = 0; i < 20; ++i)
        ps.push_back(i % 2 ? FamilyParams::two_three(oracle::uniform(rng, 0, pi / 3), oracle::uniform(rng, 0, pi / 2))
                           : FamilyParams::one_two(oracle::uniform(rng, 0, pi / 2), oracle::uniform(rng, 0, pi / 2)));
    for (const auto& p : ps) {
        const EigenfunctionSpec s = family_to_spec(p);
        const double mass = coefficient_mass(s), root = std::sqrt(s.eigenvalue);
        for (const auto& z : find_critical_zeros(p)) {
            const double x = z.location.x, y = z.location.y;
            EXPECT_LT(std::abs(evaluate(s, x, y)), 1e-10 * mass);
            EXPECT_LT(std::hypot(partial_derivative(s, x, y, 1, 0), partial_derivative(s, x, y, 0, 1)), 1e-8 * mass * root)
                << p.beta << ' ' << p.theta << " at " << x << ',' << y;
            EXPECT_GE(y, 0.0);
            EXPECT_LT(y, pi);
            if (z.kind == ZeroKind::Interior) {
                EXPECT_EQ(z.nu, 2 * z.order);
                if (p.family == Family::TwoThree && p.theta > 0 && p.theta < pi / 2)
                    EXPECT_NEAR(std::sin(3 * y) * std::sin(2 * y + p.beta), 0.0, 1e-9);
            } else {
                EXPECT_EQ(z.rho, z.order - 1);
            }
        }
    }
}

TEST(CriticalProperty, ReflectionUnderPhaseShift) {
    std::mt19937_64 rng(oracle::kSeed + 3);
    for (int i = 0; i < 10; ++i) {
        const double beta = oracle::uniform(rng, 0.05, pi / 3 - 0.05), theta = oracle::uniform(rng, 0.05, pi / 2 - 0.05);
        const auto a = find_critical_zeros(FamilyParams::two_three(beta, theta));
        const auto b = find_critical_zeros(FamilyParams::two_three(beta + pi, theta));
        ASSERT_EQ(a.size(), b.size());
        for (const auto& z : a) {
            const CriticalZero* w = find_at(b, {pi - z.location.x, z.location.y}, 1e-8);
            ASSERT_NE(w, nullptr) << z.location.x << ',' << z.location.y;
            EXPECT_EQ(w->order, z.order);
        }
    }
}

TEST(CriticalProperty, OrderMatchesCurveIncidence) {
    std::vector<FamilyParams> ps{FamilyParams::two_three(0.0, 0.0),      FamilyParams::two_three(0.2, pi / 2),
                                 FamilyParams::two_three(0.0, 0.2),      FamilyParams::two_three(pi / 3, 1.2),
                                 FamilyParams::two_three(0.4, 0.3),      FamilyParams::two_three(0.7, 1.3),
                                 FamilyParams::one_two(0.9, 1.2),        FamilyParams::one_two(0.4, 0.2)};
    for (double beta : {0.3, pi / 6, 0.8}) ps.push_back(FamilyParams::two_three(beta, bifurcation::solve_theta_beta(Family::TwoThree, beta).theta_beta));
    for (const auto& p : ps) {
        const EigenfunctionSpec s = family_to_spec(p);
        const CurveGraph g = extract_curves(s, sample_grid(s, 800, 800));
        for (const auto& z : find_critical_zeros(p)) {
            const int arcs = g.incidence(z.location, 2 * g.spacing);
            if (z.kind == ZeroKind::Boundary)
                EXPECT_EQ(arcs, z.rho) << p.beta << ' ' << p.theta << " at " << z.location.x << ',' << z.location.y;
            else
                EXPECT_EQ(arcs, z.nu) << p.beta << ' ' << p.theta << " at " << z.location.x << ',' << z.location.y;
        }
    }
}

TEST(Critical, GeneralSpecFromCurves) {
    const EigenfunctionSpec s = stern_spec(2, 0.01);
    const CurveGraph g = extract_curves(s, sample_grid(s, 800, 800));
    const auto zs = find_critical_zeros(s, g);
    for (const auto& z : zs) {
        EXPECT_LT(std::abs(evaluate(s, z.location.x, z.location.y)), 1e-9 * coefficient_mass(s));
        EXPECT_EQ(z.order, classify_order(s, z.location));
    }
    // sin(x) has no critical zeros at all.
    const EigenfunctionSpec one = make_spec({{1, 0, YKind::Cos, 1.0}});
    EXPECT_TRUE(find_critical_zeros(one, extract_curves(one, sample_grid(one, 200, 200))).empty());
}

TEST(Critical, Errors) {
    EXPECT_THROW(find_critical_zeros(FamilyParams::two_three(0.2, 2.0)), DomainError);
    EXPECT_THROW(find_critical_zeros(FamilyParams::two_three(0.2, -0.1)), DomainError);
    const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.4, 0.3));
    EXPECT_THROW(classify_order(s, {1.0, 1.0}), ClassificationError);
    // On the edge Phi vanishes but the normal derivative generally does not.
    EXPECT_THROW(classify_order(s, {0.0, 1.0}), ClassificationError);
}
