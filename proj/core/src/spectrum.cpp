#include "mobius/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

bool is_admissible(int m, int n) { return m >= 1 && n >= 0 && ((m + n) % 2 == 1); }

namespace {

struct RawMode {
    double value;
    ModePair mode;
};

std::vector<RawMode> exact_modes(long lmax) {
    std::vector<RawMode> out;
    for (long m = 1; m * m <= lmax; ++m) {
        for (long n = 0; m * m + n * n <= lmax; ++n) {
            if ((m + n) % 2 == 0) continue;
            out.push_back({static_cast<double>(m * m + n * n),
                           ModePair{static_cast<int>(m), static_cast<int>(n)}});
        }
    }
    return out;
}

std::vector<RawMode> float_modes(double a, double lambda_max) {
    std::vector<RawMode> out;
    const double slack = 1e-9 * (1.0 + lambda_max);
    const int m_max = static_cast<int>(std::floor(std::sqrt(lambda_max))) + 1;
    for (int m = 1; m <= m_max; ++m) {
        const double rest = lambda_max - static_cast<double>(m) * m;
        if (rest < -slack) break;
        const int n_max = static_cast<int>(std::floor(a * std::sqrt(std::max(rest, 0.0)))) + 1;
        for (int n = 0; n <= n_max; ++n) {
            if ((m + n) % 2 == 0) continue;
            const double v = static_cast<double>(m) * m + (static_cast<double>(n) * n) / (a * a);
            if (v <= lambda_max + slack) out.push_back({v, ModePair{m, n}});
        }
    }
    return out;
}

}  // namespace

SpectrumTable enumerate_spectrum(double a, double lambda_max) {
    if (!(a > 0.0)) throw DomainError("width parameter a must be positive");
    if (!(lambda_max >= 0.0)) throw DomainError("lambda_max must be nonnegative");

    SpectrumTable table;
    table.a = a;
    table.lambda_max = lambda_max;

    const bool exact = (a == 1.0);
    std::vector<RawMode> raw = exact ? exact_modes(static_cast<long>(std::floor(lambda_max)))
                                     : float_modes(a, lambda_max);
    std::sort(raw.begin(), raw.end(), [](const RawMode& l, const RawMode& r) {
        if (l.value != r.value) return l.value < r.value;
        return l.mode < r.mode;
    });

    int label = 1;
    for (std::size_t i = 0; i < raw.size();) {
        EigenvalueCluster c;
        c.value = raw[i].value;
        std::size_t j = i;
        const double tol = exact ? 0.0 : 1e-9 * (1.0 + raw[i].value);
        while (j < raw.size() && raw[j].value - raw[i].value <= tol) {
            c.modes.push_back(raw[j].mode);
            c.multiplicity += raw[j].mode.n == 0 ? 1 : 2;
            ++j;
        }
        c.first_label = label;
        c.last_label = label + c.multiplicity - 1;
        label = c.last_label + 1;
        table.clusters.push_back(std::move(c));
        i = j;
    }
    return table;
}

long counting_function(const SpectrumTable& table, double lambda) {
    if (lambda > table.lambda_max)
        throw OutOfRangeError("counting function queried at " + std::to_string(lambda) +
                              " beyond table limit " + std::to_string(table.lambda_max));
    long count = 0;
    for (const auto& c : table.clusters) {
        if (c.value < lambda)
            count += c.multiplicity;
        else
            break;
    }
    return count;
}

double weyl_lower_bound(double lambda) {
    if (lambda < 0.0) throw DomainError("weyl_lower_bound needs lambda >= 0");
    return std::numbers::pi * lambda / 4.0 - 2.0 * std::sqrt(lambda) + 1.0;
}

double eigenvalue_at_label(const SpectrumTable& table, int k) {
    if (k < 1) throw DomainError("labels start at 1");
    for (const auto& c : table.clusters)
        if (k >= c.first_label && k <= c.last_label) return c.value;
    throw OutOfRangeError("label " + std::to_string(k) + " beyond table (last label " +
                          std::to_string(table.last_label()) + ")");
}

}  // namespace mobius
