#pragma once

#include <compare>
#include <vector>

namespace mobius {

// Frequencies of sin(mx)·{cos,sin}(ny/a). Admissible iff m >= 1, n >= 0 and m + n odd.
struct ModePair {
    int m = 1;
    int n = 0;
    auto operator<=>(const ModePair&) const = default;
};

bool is_admissible(int m, int n);

struct EigenvalueCluster {
    double value = 0.0;
    std::vector<ModePair> modes;
    int multiplicity = 0;
    int first_label = 0;
    int last_label = 0;
};

struct SpectrumTable {
    double a = 1.0;
    double lambda_max = 0.0;
    std::vector<EigenvalueCluster> clusters;

    int last_label() const { return clusters.empty() ? 0 : clusters.back().last_label; }
};

// Every cluster with value <= lambda_max. For a == 1 the values are exact integers;
// otherwise values within 1e-9 (1 + lambda) are merged into one cluster.
SpectrumTable enumerate_spectrum(double a, double lambda_max);

// N(lambda) = #{k : lambda_k < lambda}, multiplicities counted.
long counting_function(const SpectrumTable& table, double lambda);

// pi lambda / 4 - 2 sqrt(lambda) + 1
double weyl_lower_bound(double lambda);

double eigenvalue_at_label(const SpectrumTable& table, int k);

}  // namespace mobius
