#pragma once

#include <vector>

namespace mobius {

enum class YKind { Sin, Cos };

// coefficient · sin(m x) · {sin,cos}(n y). For n == 0 only Cos is allowed (factor 1).
struct TrigMode {
    int m = 1;
    int n = 0;
    YKind kind = YKind::Cos;
    double c = 1.0;
};

struct EigenfunctionSpec {
    std::vector<TrigMode> modes;
    double eigenvalue = 0.0;
};

// Validates admissibility and a common eigenvalue, merges duplicate modes, drops
// coefficients below 1e-15 and sorts. Throws AdmissibilityError / DomainError.
EigenfunctionSpec make_spec(std::vector<TrigMode> modes);

enum class Family { OneTwo, TwoThree, General };

// cos(theta) sin(m x) sin(n y) + sin(theta) sin(n x) sin(m y + beta)
struct FamilyParams {
    Family family = Family::TwoThree;
    int m = 2;
    int n = 3;
    double beta = 0.0;
    double theta = 0.0;

    static FamilyParams one_two(double beta, double theta) { return {Family::OneTwo, 1, 2, beta, theta}; }
    static FamilyParams two_three(double beta, double theta) { return {Family::TwoThree, 2, 3, beta, theta}; }
    static FamilyParams general(int m, int n, double beta, double theta) {
        return {Family::General, m, n, beta, theta};
    }
};

EigenfunctionSpec family_to_spec(const FamilyParams& params);

double evaluate(const EigenfunctionSpec& spec, double x, double y);

// Phi(x, y) / sin(x), extended continuously to x = 0 and x = pi. Same sign as Phi inside
// the strip and generically nonzero on the Dirichlet edges.
double reduced_value(const EigenfunctionSpec& spec, double x, double y);

// Closed-form partial derivative, order_x + order_y <= 4.
double partial_derivative(const EigenfunctionSpec& spec, double x, double y, int order_x, int order_y);

// Spec of Phi(x, y - t); its nodal set is the nodal set of Phi shifted by +t.
EigenfunctionSpec apply_translation(const EigenfunctionSpec& spec, double t);

EigenfunctionSpec scaled(const EigenfunctionSpec& spec, double s);

// Sum of |c|; scale used by the relative zero thresholds.
double coefficient_mass(const EigenfunctionSpec& spec);

// sin(2x) sin(3y) sin(3x) sin(2y + beta)
double checkerboard_value(double beta, double x, double y);

// sin(x) sin(2ry) + (1 + eps) sin(2rx) sin(y). eps < 0 throws; eps == 0 is the
// degenerate symmetric case and is accepted.
EigenfunctionSpec stern_spec(int r, double epsilon);

// Largest absolute coefficient difference; a mode missing on one side counts as zero.
double spec_distance(const EigenfunctionSpec& a, const EigenfunctionSpec& b);

}  // namespace mobius
