#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mobius/errors.hpp"
#include "mobius/eigenfunction.hpp"
#include "oracles.hpp"

using namespace mobius;
using oracle::pi;

namespace {

std::vector<EigenfunctionSpec> sample_specs(std::mt19937_64& rng) {
    std::vector<EigenfunctionSpec> specs{
        make_spec({{1, 0, YKind::Cos, 1.0}}),
        make_spec({{3, 0, YKind::Cos, -2.0}}),
        make_spec({{5, 0, YKind::Cos, 1.0}}),
        stern_spec(2, 0.01),
        stern_spec(3, 0.01),
        make_spec({{1, 8, YKind::Sin, 0.3}, {8, 1, YKind::Cos, -1.2}, {4, 7, YKind::Sin, 0.7}, {7, 4, YKind::Cos, 0.1}}),
    };
    for (int i = 0; i < 10; ++i) {
        specs.push_back(family_to_spec(FamilyParams::two_three(oracle::uniform(rng, -pi, pi), oracle::uniform(rng, 0, pi / 2))));
        specs.push_back(family_to_spec(FamilyParams::one_two(oracle::uniform(rng, -pi, pi), oracle::uniform(rng, 0, pi / 2))));
    }
    return specs;
}

// Direct evaluation of the family formula, independent of the mode expansion.
double family_direct(const FamilyParams& p, double x, double y) {
    return std::cos(p.theta) * std::sin(p.m * x) * std::sin(p.n * y) +
           std::sin(p.theta) * std::sin(p.n * x) * std::sin(p.m * y + p.beta);
}

}  // namespace

TEST(Eigenfunction, FamilyExpansionMatchesFormula) {
    std::mt19937_64 rng(oracle::kSeed);
    for (int t = 0; t < 50; ++t) {
        const FamilyParams p = t % 2 ? FamilyParams::two_three(oracle::uniform(rng, -pi, pi), oracle::uniform(rng, 0, pi / 2))
                                     : FamilyParams::one_two(oracle::uniform(rng, -pi, pi), oracle::uniform(rng, 0, pi / 2));
        const EigenfunctionSpec s = family_to_spec(p);
        EXPECT_EQ(s.eigenvalue, p.m * p.m + p.n * p.n);
        for (int k = 0; k < 10; ++k) {
            const double x = oracle::uniform(rng, 0, pi), y = oracle::uniform(rng, -10, 10);
            EXPECT_NEAR(evaluate(s, x, y), family_direct(p, x, y), 1e-13);
        }
    }
}

TEST(EigenfunctionProperty, MobiusInvariance) {
    std::mt19937_64 rng(oracle::kSeed);
    for (const auto& s : sample_specs(rng))
        for (int k = 0; k < 100; ++k) {
            const double x = oracle::uniform(rng, 0, pi), y = oracle::uniform(rng, 0, 2 * pi);
            EXPECT_NEAR(evaluate(s, pi - x, y + pi), evaluate(s, x, y), 1e-12);
        }
}

TEST(EigenfunctionProperty, EigenEquationResidual) {
    std::mt19937_64 rng(oracle::kSeed + 1);
    for (const auto& s : sample_specs(rng))
        for (int k = 0; k < 100; ++k) {
            const double x = oracle::uniform(rng, 0, pi), y = oracle::uniform(rng, 0, 2 * pi);
            const double lap = partial_derivative(s, x, y, 2, 0) + partial_derivative(s, x, y, 0, 2);
            EXPECT_NEAR(-lap, s.eigenvalue * evaluate(s, x, y), 1e-10 * (1 + s.eigenvalue) * coefficient_mass(s));
        }
}

TEST(EigenfunctionProperty, DirichletOnBothEdges) {
    std::mt19937_64 rng(oracle::kSeed + 2);
    for (const auto& s : sample_specs(rng))
        for (int k = 0; k < 20; ++k) {
            const double y = oracle::uniform(rng, 0, 2 * pi);
            EXPECT_NEAR(evaluate(s, 0.0, y), 0.0, 1e-12);
            EXPECT_NEAR(evaluate(s, pi, y), 0.0, 1e-12);
        }
}

TEST(EigenfunctionProperty, PhaseShiftByPiReflects) {
    std::mt19937_64 rng(oracle::kSeed + 3);
    for (int t = 0; t < 40; ++t) {
        const double beta = oracle::uniform(rng, -pi, pi), theta = oracle::uniform(rng, 0, pi / 2);
        const FamilyParams p = t % 2 ? FamilyParams::two_three(beta, theta) : FamilyParams::one_two(beta, theta);
        FamilyParams q = p;
        q.beta += pi;
        const double sign = p.n % 2 ? -1.0 : 1.0;
        const EigenfunctionSpec a = family_to_spec(p), b = family_to_spec(q);
        for (int k = 0; k < 25; ++k) {
            const double x = oracle::uniform(rng, 0, pi), y = oracle::uniform(rng, 0, 2 * pi);
            EXPECT_NEAR(evaluate(b, x, y), sign * evaluate(a, pi - x, y), 1e-12);
        }
    }
}

TEST(EigenfunctionProperty, PartialsAgreeWithFiniteDifferences) {
    std::mt19937_64 rng(oracle::kSeed + 4);
    for (const auto& s : sample_specs(rng)) {
        const double mass = coefficient_mass(s), root = std::sqrt(s.eigenvalue);
        for (int k = 0; k < 10; ++k) {
            const double x = oracle::uniform(rng, 0.1, pi - 0.1), y = oracle::uniform(rng, 0, 2 * pi);
            for (int ox = 0; ox <= 3; ++ox)
                for (int oy = 0; ox + oy <= 3; ++oy) {
                    const double h = 1e-3 / root;
                    const double dx = oracle::fd4([&](double t) { return partial_derivative(s, t, y, ox, oy); }, x, h);
                    const double dy = oracle::fd4([&](double t) { return partial_derivative(s, x, t, ox, oy); }, y, h);
                    const double scale = mass * std::pow(root, ox + oy + 1);
                    EXPECT_NEAR(partial_derivative(s, x, y, ox + 1, oy), dx, 1e-6 * scale) << ox << oy;
                    EXPECT_NEAR(partial_derivative(s, x, y, ox, oy + 1), dy, 1e-6 * scale) << ox << oy;
                }
        }
    }
}

TEST(Eigenfunction, ZerothPartialIsValue) {
    const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.4, 0.9));
    EXPECT_DOUBLE_EQ(partial_derivative(s, 1.1, 2.3, 0, 0), evaluate(s, 1.1, 2.3));
    EXPECT_THROW(partial_derivative(s, 1.0, 1.0, 3, 2), UnsupportedOrderError);
    EXPECT_THROW(partial_derivative(s, 1.0, 1.0, -1, 0), UnsupportedOrderError);
}

TEST(Eigenfunction, ReducedValueDividesBySine) {
    std::mt19937_64 rng(oracle::kSeed + 5);
    const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.7, 0.4));
    for (int k = 0; k < 50; ++k) {
        const double x = oracle::uniform(rng, 0.05, pi - 0.05), y = oracle::uniform(rng, 0, pi);
        EXPECT_NEAR(reduced_value(s, x, y), evaluate(s, x, y) / std::sin(x), 1e-12);
    }
    // Limits at the edges equal the normal derivative (up to sign).
    EXPECT_NEAR(reduced_value(s, 0.0, 0.8), partial_derivative(s, 0.0, 0.8, 1, 0), 1e-12);
    EXPECT_NEAR(reduced_value(s, pi, 0.8), -partial_derivative(s, pi, 0.8, 1, 0), 1e-12);
    EXPECT_NEAR(reduced_value(s, 1e-9, 0.8), reduced_value(s, 0.0, 0.8), 1e-7);
}

TEST(Eigenfunction, TranslationShiftsTheFunction) {
    std::mt19937_64 rng(oracle::kSeed + 6);
    const EigenfunctionSpec s = stern_spec(2, 0.01);
    for (int k = 0; k < 20; ++k) {
        const double t = oracle::uniform(rng, -5, 5);
        const EigenfunctionSpec u = apply_translation(s, t);
        EXPECT_EQ(u.eigenvalue, s.eigenvalue);
        for (int i = 0; i < 10; ++i) {
            const double x = oracle::uniform(rng, 0, pi), y = oracle::uniform(rng, 0, 2 * pi);
            EXPECT_NEAR(evaluate(u, x, y), evaluate(s, x, y - t), 1e-12);
        }
    }
}

TEST(Eigenfunction, MakeSpecCanonicalises) {
    const EigenfunctionSpec s = make_spec({{2, 1, YKind::Sin, 1.0}, {1, 2, YKind::Cos, 0.5}, {2, 1, YKind::Sin, 0.25},
                                           {1, 2, YKind::Sin, 1e-17}});
    EXPECT_EQ(s.eigenvalue, 5.0);
    ASSERT_EQ(s.modes.size(), 2u);
    double sum = 0;
    for (const auto& m : s.modes) sum += m.c;
    EXPECT_DOUBLE_EQ(sum, 1.75);
    EXPECT_EQ(spec_distance(s, make_spec({{1, 2, YKind::Cos, 0.5}, {2, 1, YKind::Sin, 1.25}})), 0.0);
}

TEST(Eigenfunction, MakeSpecErrors) {
    EXPECT_THROW(make_spec({{1, 1, YKind::Sin, 1.0}}), AdmissibilityError);
    EXPECT_THROW(make_spec({{1, 0, YKind::Sin, 1.0}}), AdmissibilityError);
    EXPECT_THROW(make_spec({{1, 2, YKind::Sin, 1.0}, {3, 0, YKind::Cos, 1.0}}), DomainError);
    EXPECT_THROW(make_spec({{1, 2, YKind::Sin, 0.0}}), DomainError);
    EXPECT_THROW(make_spec({}), DomainError);
    EXPECT_THROW(family_to_spec(FamilyParams::general(1, 3, 0.0, 0.5)), AdmissibilityError);
    EXPECT_THROW(family_to_spec(FamilyParams::general(2, 2, 0.0, 0.5)), AdmissibilityError);
    EXPECT_NO_THROW(family_to_spec(FamilyParams::general(1, 4, 0.2, 0.5)));
}

TEST(Eigenfunction, SternSpec) {
    const EigenfunctionSpec s2 = stern_spec(2, 0.01);
    EXPECT_EQ(s2.eigenvalue, 17.0);
    const EigenfunctionSpec want = make_spec({{1, 4, YKind::Sin, 1.0}, {4, 1, YKind::Sin, 1.01}});
    EXPECT_LT(spec_distance(s2, want), 1e-15);
    EXPECT_EQ(stern_spec(3, 0.01).eigenvalue, 37.0);
    EXPECT_NO_THROW(stern_spec(2, 0.0));
    EXPECT_THROW(stern_spec(2, -0.1), DomainError);
    EXPECT_THROW(stern_spec(0, 0.1), DomainError);
}

TEST(Eigenfunction, CheckerboardValue) {
    EXPECT_NEAR(checkerboard_value(0.3, 0.4, 0.5),
                std::sin(0.8) * std::sin(1.5) * std::sin(1.2) * std::sin(1.0 + 0.3), 1e-15);
    EXPECT_EQ(checkerboard_value(0.1, 0.0, 1.0), 0.0);
}

TEST(Eigenfunction, ScaledAndMass) {
    const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.0, pi / 4));
    EXPECT_NEAR(coefficient_mass(s), std::sqrt(2.0), 1e-15);
    const EigenfunctionSpec t = scaled(s, -3.0);
    EXPECT_NEAR(evaluate(t, 0.3, 0.9), -3.0 * evaluate(s, 0.3, 0.9), 1e-14);
}
