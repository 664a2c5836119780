#include "mobius/nodal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int a) {
        while (parent_[a] != a) {
            parent_[a] = parent_[parent_[a]];
            a = parent_[a];
        }
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
    }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

double chebyshev_ratio(int m, double c) {
    if (m == 1) return 1.0;
    double u0 = 1.0, u1 = 2.0 * c;
    for (int k = 2; k < m; ++k) {
        const double u2 = 2.0 * c * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

double y_part(const TrigMode& md, double y) {
    if (md.n == 0) return 1.0;
    return md.kind == YKind::Sin ? std::sin(md.n * y) : std::cos(md.n * y);
}

int sgn(double v, double thr) { return v > thr ? 1 : (v < -thr ? -1 : 0); }

}  // namespace

double SignGrid::hx() const { return kPi / nx; }
double SignGrid::hy() const { return kPi / ny; }
double SignGrid::cell_x(int i) const { return (i + 0.5) * hx(); }
double SignGrid::cell_y(int j) const { return (j + 0.5) * hy(); }

long SignGrid::zero_band_cells() const {
    return static_cast<long>(std::count(signs.begin(), signs.end(), std::int8_t{0}));
}

SignGrid sample_grid(const EigenfunctionSpec& spec, int nx, int ny, double zero_tol) {
    if (nx < 16 || ny < 16) throw DomainError("sample_grid needs nx, ny >= 16");
    if (!(zero_tol > 0.0)) throw DomainError("sample_grid needs zero_tol > 0");
    if (spec.modes.empty() || coefficient_mass(spec) == 0.0)
        throw DomainError("sample_grid: degenerate eigenfunction");

    SignGrid g;
    g.nx = nx;
    g.ny = ny;
    g.zero_tol = zero_tol;

    const std::size_t K = spec.modes.size();
    const double hx = kPi / nx, hy = kPi / ny;

    // Separable tables: x-factor at corners and centres, y-factor at corners and centres.
    std::vector<std::vector<double>> xc(K, std::vector<double>(nx + 1)), xm(K, std::vector<double>(nx));
    std::vector<std::vector<double>> yc(K, std::vector<double>(ny)), ym(K, std::vector<double>(ny));
    std::vector<double> at0(K), atpi(K);
    for (std::size_t k = 0; k < K; ++k) {
        const auto& md = spec.modes[k];
        for (int i = 0; i <= nx; ++i) {
            const double c = i == 0 ? 1.0 : (i == nx ? -1.0 : std::cos(i * hx));
            xc[k][i] = md.c * chebyshev_ratio(md.m, c);
        }
        for (int i = 0; i < nx; ++i) xm[k][i] = md.c * chebyshev_ratio(md.m, std::cos((i + 0.5) * hx));
        for (int j = 0; j < ny; ++j) {
            yc[k][j] = y_part(md, j * hy);
            ym[k][j] = y_part(md, (j + 0.5) * hy);
        }
        at0[k] = xc[k][0];
        atpi[k] = xc[k][nx];
    }

    // Corner values; row ny is row 0 seen through the seam, copied so both sides agree.
    const int cw = nx + 1;
    std::vector<double> corner(static_cast<std::size_t>(cw) * (ny + 1), 0.0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i <= nx; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < K; ++k) v += xc[k][i] * yc[k][j];
            corner[static_cast<std::size_t>(j) * cw + i] = v;
        }
    for (int i = 0; i <= nx; ++i)
        corner[static_cast<std::size_t>(ny) * cw + i] = corner[static_cast<std::size_t>(nx - i)];

    g.centers.assign(static_cast<std::size_t>(nx) * ny, 0.0);
    g.left_edge.assign(ny, 0.0);
    g.right_edge.assign(ny, 0.0);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < K; ++k) v += xm[k][i] * ym[k][j];
            g.centers[static_cast<std::size_t>(j) * nx + i] = v;
        }
        double l = 0.0, r = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            l += at0[k] * ym[k][j];
            r += atpi[k] * ym[k][j];
        }
        g.left_edge[j] = l;
        g.right_edge[j] = r;
    }

    double mx = 0.0;
    for (double v : corner) mx = std::max(mx, std::abs(v));
    for (double v : g.centers) mx = std::max(mx, std::abs(v));
    if (mx == 0.0) throw DomainError("sample_grid: eigenfunction vanishes on the grid");
    g.max_abs = mx;
    const double thr = zero_tol * mx;

    g.signs.assign(static_cast<std::size_t>(nx) * ny, 0);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int s = sgn(g.centers[static_cast<std::size_t>(j) * nx + i], thr);
            if (s == 0) continue;
            const double* lo = &corner[static_cast<std::size_t>(j) * cw + i];
            const double* hi = &corner[static_cast<std::size_t>(j + 1) * cw + i];
            if (sgn(lo[0], thr) != s || sgn(lo[1], thr) != s || sgn(hi[0], thr) != s ||
                sgn(hi[1], thr) != s)
                continue;
            g.signs[static_cast<std::size_t>(j) * nx + i] = static_cast<std::int8_t>(s);
        }
    return g;
}

int NodalDomainSet::non_orientable_count() const {
    return static_cast<int>(std::count(orientable.begin(), orientable.end(), false));
}

NodalDomainSet count_nodal_domains(const SignGrid& grid) {
    const int nx = grid.nx, ny = grid.ny;
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    DisjointSets ds(n);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const int s = grid.sign(i, j);
            if (s == 0) continue;
            if (i + 1 < nx && grid.sign(i + 1, j) == s) ds.unite(grid.index(i, j), grid.index(i + 1, j));
            if (j + 1 < ny) {
                if (grid.sign(i, j + 1) == s) ds.unite(grid.index(i, j), grid.index(i, j + 1));
            } else {
                const int k = grid.seam_map(i);
                if (grid.sign(k, 0) == s) ds.unite(grid.index(i, j), grid.index(k, 0));
            }
        }

    NodalDomainSet d;
    d.labels.assign(n, -1);
    std::vector<int> root_label(n, -1);
    for (std::size_t c = 0; c < n; ++c) {
        if (grid.signs[c] == 0) continue;
        const int r = ds.find(static_cast<int>(c));
        if (root_label[r] < 0) {
            root_label[r] = d.count++;
            d.label_sign.push_back(grid.signs[c]);
        }
        d.labels[c] = root_label[r];
    }

    const double cell = grid.hx() * grid.hy();
    d.areas.assign(d.count, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        if (d.labels[c] >= 0) d.areas[d.labels[c]] += cell;

    // Zero-band cells go to a neighbouring domain with the same centre sign.
    const double thr = grid.zero_tol * grid.max_abs;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const std::size_t c = static_cast<std::size_t>(grid.index(i, j));
            if (grid.signs[c] != 0) continue;
            const int s = sgn(grid.centers[c], thr);
            if (s == 0) continue;
            int nb[4][2] = {{i - 1, j}, {i + 1, j}, {i, j - 1}, {i, j + 1}};
            for (auto& q : nb) {
                int qi = q[0], qj = q[1];
                if (qi < 0 || qi >= nx) continue;
                if (qj < 0) {
                    qj = ny - 1;
                    qi = grid.seam_map(qi);
                } else if (qj >= ny) {
                    qj = 0;
                    qi = grid.seam_map(qi);
                }
                const int lab = d.labels[static_cast<std::size_t>(grid.index(qi, qj))];
                if (lab >= 0 && d.label_sign[lab] == s) {
                    d.areas[lab] += cell;
                    break;
                }
            }
        }
    return d;
}

std::vector<bool> orientability(const SignGrid& grid, NodalDomainSet& domains) {
    const int nx = grid.nx, ny = grid.ny, rows = 2 * ny;
    auto label_at = [&](int i, int j) {
        if (j < ny) return domains.labels[static_cast<std::size_t>(j) * nx + i];
        return domains.labels[static_cast<std::size_t>(j - ny) * nx + (nx - 1 - i)];
    };
    auto id = [nx](int i, int j) { return j * nx + i; };

    DisjointSets ds(static_cast<std::size_t>(nx) * rows);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < nx; ++i) {
            const int lab = label_at(i, j);
            if (lab < 0) continue;
            if (i + 1 < nx && label_at(i + 1, j) == lab) ds.unite(id(i, j), id(i + 1, j));
            const int jn = (j + 1) % rows;
            if (label_at(i, jn) == lab) ds.unite(id(i, j), id(i, jn));
        }

    std::vector<int> first(domains.count, -1), second(domains.count, -1), comps(domains.count, 0);
    for (int j = 0; j < rows; ++j)
        for (int i = 0; i < nx; ++i) {
            const int lab = label_at(i, j);
            if (lab < 0) continue;
            const int r = ds.find(id(i, j));
            if (r == first[lab] || r == second[lab]) continue;
            if (first[lab] < 0) {
                first[lab] = r;
                comps[lab] = 1;
            } else if (second[lab] < 0) {
                second[lab] = r;
                comps[lab] = 2;
            } else {
                comps[lab] = 3;
            }
        }

    std::vector<bool> out(domains.count);
    for (int lab = 0; lab < domains.count; ++lab) {
        if (comps[lab] != 1 && comps[lab] != 2)
            throw ConsistencyError("domain " + std::to_string(lab) + " has " +
                                   std::to_string(comps[lab]) + " preimage components in the double cover");
        out[lab] = comps[lab] == 2;
    }
    domains.orientable = out;
    domains.preimage_components = comps;
    return out;
}

void check_courant_bound(const NodalDomainSet& domains, int label) {
    if (domains.count > label)
        throw ConsistencyError(std::to_string(domains.count) + " nodal domains exceed the Courant bound " +
                               std::to_string(label));
}

NodalAnalysis analyze_nodal(const EigenfunctionSpec& spec, const NodalOptions& options) {
    if (options.resolution < 16) throw DomainError("resolution must be at least 16");
    NodalAnalysis a;
    const int n0 = options.resolution;

    auto run = [&](int n, int depth) {
        SignGrid g = sample_grid(spec, n, n, options.zero_tol);
        g.refinement_depth = depth;
        NodalDomainSet d = count_nodal_domains(g);
        a.resolutions.push_back(n);
        a.counts.push_back(d.count);
        return std::pair{std::move(g), std::move(d)};
    };

    auto [g0, d0] = run(n0, 0);
    a.grid = std::move(g0);
    a.domains = std::move(d0);

    if (options.check_stability) {
        auto [g1, d1] = run(2 * n0, 1);
        if (d1.count != a.domains.count) {
            auto [g2, d2] = run(4 * n0, 2);
            if (d2.count != d1.count) {
                std::ostringstream os;
                os << "nodal domain count not stable under refinement:";
                for (std::size_t i = 0; i < a.counts.size(); ++i)
                    os << " N=" << a.resolutions[i] << " -> " << a.counts[i];
                throw NonConvergenceError(os.str());
            }
            a.grid = std::move(g2);
            a.domains = std::move(d2);
        }
    }
    if (options.with_orientability) orientability(a.grid, a.domains);
    return a;
}

}  // namespace mobius
