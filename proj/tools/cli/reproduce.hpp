#pragma once

#include <string>
#include <vector>

#include "mobius/screening.hpp"

namespace mobius::cli {

struct ReproduceOptions {
    int resolution = 800;
    double j01 = kJ01;
    int sweep_samples = 8;  // interior (beta, theta) grid of the [2,3] family
};

struct StageResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct ReproduceReport {
    std::vector<StageResult> stages;
    std::vector<int> screening_survivors;
    std::vector<int> courant_sharp;  // labels confirmed by an eigenfunction with k domains
    int max_count_two_three = 0;
    bool pass = false;
};

// Spectrum table, screening, nodal exclusion of lambda_6 and lambda_7, and constructive
// confirmation of lambda_1 and lambda_2.
ReproduceReport run_reproduce_theorem(const ReproduceOptions& options);

}  // namespace mobius::cli
