#pragma once

#include <cstdint>
#include <vector>

#include "mobius/eigenfunction.hpp"

namespace mobius {

// Uniform grid on the fundamental rectangle (0, pi) x [0, pi). Cell (i, j) has centre
// ((i + 1/2) pi/nx, (j + 1/2) pi/ny); the top edge of row ny-1 is glued to the bottom
// edge of row 0 with the column reversal i -> nx-1-i. Values are Phi / sin(x).
struct SignGrid {
    int nx = 0;
    int ny = 0;
    int refinement_depth = 0;
    double zero_tol = 1e-9;
    double max_abs = 0.0;
    std::vector<std::int8_t> signs;   // +1, -1, or 0 for the zero band; index j*nx + i
    std::vector<double> centers;      // value at cell centres
    std::vector<double> left_edge;    // value at (0, y_j)
    std::vector<double> right_edge;   // value at (pi, y_j)

    int seam_map(int i) const { return nx - 1 - i; }
    int index(int i, int j) const { return j * nx + i; }
    int sign(int i, int j) const { return signs[static_cast<std::size_t>(index(i, j))]; }
    double hx() const;
    double hy() const;
    double cell_x(int i) const;
    double cell_y(int j) const;
    long zero_band_cells() const;
};

SignGrid sample_grid(const EigenfunctionSpec& spec, int nx, int ny, double zero_tol = 1e-9);

struct NodalDomainSet {
    int count = 0;
    std::vector<int> labels;        // per cell; -1 inside the zero band
    std::vector<double> areas;      // per label
    std::vector<int> label_sign;    // +1 / -1 per label
    std::vector<bool> orientable;   // per label, empty until orientability() has run
    std::vector<int> preimage_components;

    int non_orientable_count() const;
};

// Union-find over same-sign 4-neighbours with seam adjacency. Areas add each zero-band
// cell to an adjacent domain of the same centre sign, so they sum to about pi^2.
NodalDomainSet count_nodal_domains(const SignGrid& grid);

// Orientability of each domain from the number of components of its preimage in the
// cylinder double cover. Also stores the result in `domains`.
std::vector<bool> orientability(const SignGrid& grid, NodalDomainSet& domains);

// Throws ConsistencyError when count exceeds the Courant bound k.
void check_courant_bound(const NodalDomainSet& domains, int label);

struct NodalOptions {
    int resolution = 800;
    double zero_tol = 1e-9;
    bool check_stability = true;  // compare against 2N, and 4N on disagreement
    bool with_orientability = true;
};

struct NodalAnalysis {
    SignGrid grid;                  // grid at the accepted resolution
    NodalDomainSet domains;
    std::vector<int> resolutions;   // every resolution that was sampled
    std::vector<int> counts;        // domain count at each of them
};

// Samples at N and 2N; on disagreement refines once more to 4N and accepts the 4N grid
// when it agrees with 2N. Throws NonConvergenceError otherwise.
NodalAnalysis analyze_nodal(const EigenfunctionSpec& spec, const NodalOptions& options = {});

}  // namespace mobius
