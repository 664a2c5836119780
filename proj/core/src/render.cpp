#include "mobius/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kScale = 160.0;  // pixels per unit length
constexpr double kMargin = 24.0;

std::string hex_color(std::uint32_t c) {
    if (c > 0xffffff) throw DomainError("colour does not fit in 24 bits");
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%06x", static_cast<unsigned>(c));
    return buf;
}

double px(double x) { return kMargin + x * kScale; }
double py(double y) { return kMargin + (kPi - y) * kScale; }

void check_params(const EmbeddingParams& p) {
    if (!(p.R > kPi / 2.0)) throw DomainError("embedding needs R > pi/2");
    if (!(p.a > 0.0)) throw DomainError("embedding needs a > 0");
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir, ec)) throw IoError("output directory does not exist: " + dir.string());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            fs::remove(tmp, ec);
            throw IoError("write failed for " + tmp.string());
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at " + path.string());
    }
}

bool seam_is_nodal(const EigenfunctionSpec& spec) {
    const double tol = 1e-12 * coefficient_mass(spec);
    for (int i = 1; i < 64; ++i)
        if (std::abs(evaluate(spec, kPi * i / 64.0, 0.0)) > tol) return false;
    return true;
}

std::string fundamental_domain_svg(const EigenfunctionSpec& spec, const CurveGraph& curves, const PlotStyle& style,
                                   const NodalAnalysis* labels) {
    const std::string nodal = hex_color(style.nodal_color);
    const std::string boundary = hex_color(style.boundary_color);
    const std::string seam = hex_color(style.seam_color);
    const double side = kPi * kScale + 2.0 * kMargin;

    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side << "\" viewBox=\"0 0 "
       << side << ' ' << side << "\">\n";
    os << "<title>Nodal set on the fundamental rectangle, lambda = " << spec.eigenvalue << "</title>\n";
    os << "<metadata>Fundamental rectangle (0,pi) x [0,pi); the top edge is glued to the bottom edge with x -> pi - x. "
          "Nodal lines red, Dirichlet boundary blue. The 3-D embedding F is not conformal, so angles between nodal "
          "arcs at critical zeros are distorted in mesh views.";
    for (const auto& m : spec.modes)
        os << " mode(" << m.m << ',' << m.n << ',' << (m.kind == YKind::Sin ? "sin" : "cos") << ")=" << m.c;
    os << "</metadata>\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << side << "\" height=\"" << side << "\" fill=\"#ffffff\"/>\n";

    if (!seam_is_nodal(spec)) {
        for (double y : {0.0, kPi})
            os << "<line x1=\"" << px(0) << "\" y1=\"" << py(y) << "\" x2=\"" << px(kPi) << "\" y2=\"" << py(y)
               << "\" stroke=\"" << seam << "\" stroke-width=\"1.5\" stroke-dasharray=\"6 4\"/>\n";
    }
    for (double x : {0.0, kPi})
        os << "<line x1=\"" << px(x) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\"" << py(kPi)
           << "\" stroke=\"" << boundary << "\" stroke-width=\"3\"/>\n";

    os.precision(3);
    for (const auto& e : curves.edges) {
        std::vector<std::vector<Point2>> runs(1);
        for (std::size_t k = 0; k < e.points.size(); ++k) {
            if (k > 0 && std::abs(e.points[k].y - e.points[k - 1].y) > kPi / 2.0) runs.emplace_back();
            runs.back().push_back(e.points[k]);
        }
        for (const auto& run : runs) {
            if (run.size() < 2) continue;
            os << "<polyline fill=\"none\" stroke=\"" << nodal << "\" stroke-width=\"2\" points=\"";
            for (const auto& p : run) os << px(p.x) << ',' << py(p.y) << ' ';
            os << "\"/>\n";
        }
    }

    if (style.domain_labels && labels) {
        const auto& g = labels->grid;
        const auto& d = labels->domains;
        std::vector<double> sx(d.count, 0.0), sy(d.count, 0.0);
        std::vector<long> n(d.count, 0);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const int l = d.labels[static_cast<std::size_t>(g.index(i, j))];
                if (l < 0) continue;
                sx[l] += g.cell_x(i);
                sy[l] += g.cell_y(j);
                ++n[l];
            }
        for (int l = 0; l < d.count; ++l) {
            if (n[l] == 0) continue;
            double cx = sx[l] / n[l], cy = sy[l] / n[l];
            // Averages of domains that wrap through the seam can land outside; snap to the closest own cell.
            double best = 1e300;
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    if (d.labels[static_cast<std::size_t>(g.index(i, j))] != l) continue;
                    const double dd = std::hypot(g.cell_x(i) - sx[l] / n[l], g.cell_y(j) - sy[l] / n[l]);
                    if (dd < best) {
                        best = dd;
                        cx = g.cell_x(i);
                        cy = g.cell_y(j);
                    }
                }
            os << "<text x=\"" << px(cx) << "\" y=\"" << py(cy) << "\" font-size=\"14\" text-anchor=\"middle\">"
               << (l + 1) << (d.label_sign[l] > 0 ? "+" : "-") << "</text>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

void plot_fundamental_domain(const EigenfunctionSpec& spec, const CurveGraph& curves, const PlotStyle& style,
                             const std::filesystem::path& path, const NodalAnalysis* labels) {
    write_file_atomic(path, fundamental_domain_svg(spec, curves, style, labels));
}

std::array<double, 3> embed_point(const EmbeddingParams& p, double w, double v) {
    check_params(p);
    const double t = v / p.a;
    const double r = p.R + w * std::sin(t);
    return {w * std::cos(t), r * std::cos(2.0 * t), r * std::sin(2.0 * t)};
}

std::array<double, 3> embed_du(const EmbeddingParams& p, double /*w*/, double v) {
    check_params(p);
    const double t = v / p.a;
    return {std::cos(t), std::sin(t) * std::cos(2.0 * t), std::sin(t) * std::sin(2.0 * t)};
}

std::array<double, 3> embed_dv(const EmbeddingParams& p, double w, double v) {
    check_params(p);
    const double t = v / p.a;
    const double r = p.R + w * std::sin(t);
    const double dr = w * std::cos(t) / p.a;
    return {-w * std::sin(t) / p.a, dr * std::cos(2.0 * t) - 2.0 * r * std::sin(2.0 * t) / p.a,
            dr * std::sin(2.0 * t) + 2.0 * r * std::cos(2.0 * t) / p.a};
}

long Mesh::edge_count() const {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& t : triangles)
        for (int k = 0; k < 3; ++k) ++edges[std::minmax(t[k], t[(k + 1) % 3])];
    return static_cast<long>(edges.size());
}

long Mesh::euler_characteristic() const {
    return static_cast<long>(vertices.size()) - edge_count() + static_cast<long>(triangles.size());
}

int Mesh::boundary_loops() const {
    std::map<std::pair<int, int>, int> edges;
    for (const auto& t : triangles)
        for (int k = 0; k < 3; ++k) ++edges[std::minmax(t[k], t[(k + 1) % 3])];
    std::map<int, std::vector<int>> adj;
    for (const auto& [e, n] : edges)
        if (n == 1) {
            adj[e.first].push_back(e.second);
            adj[e.second].push_back(e.first);
        }
    std::map<int, bool> seen;
    int loops = 0;
    for (const auto& [v, _] : adj) {
        if (seen[v]) continue;
        ++loops;
        std::vector<int> stack{v};
        seen[v] = true;
        while (!stack.empty()) {
            const int a = stack.back();
            stack.pop_back();
            for (int b : adj[a])
                if (!seen[b]) {
                    seen[b] = true;
                    stack.push_back(b);
                }
        }
    }
    return loops;
}

Mesh build_mesh(const EmbeddingParams& p) {
    check_params(p);
    if (p.u_samples < 8 || p.v_samples < 8) throw DomainError("mesh needs at least 8 samples in each direction");
    const int U = p.u_samples, V = p.v_samples;
    Mesh m;
    m.vertices.reserve(static_cast<std::size_t>(U + 1) * V);
    for (int j = 0; j < V; ++j)
        for (int i = 0; i <= U; ++i) m.vertices.push_back(embed_point(p, i * kPi / U - kPi / 2.0, j * kPi / V));
    auto id = [&](int i, int j) { return j < V ? j * (U + 1) + i : U - i; };
    for (int j = 0; j < V; ++j)
        for (int i = 0; i < U; ++i) {
            const int a = id(i, j), b = id(i + 1, j), c = id(i, j + 1), d = id(i + 1, j + 1);
            m.triangles.push_back({a, b, d});
            m.triangles.push_back({a, d, c});
        }
    return m;
}

std::vector<std::array<double, 3>> soul_curve(const EmbeddingParams& p, int samples) {
    std::vector<std::array<double, 3>> out;
    for (int k = 0; k < samples; ++k) out.push_back(embed_point(p, 0.0, k * kPi / samples));
    out.push_back(out.front());
    return out;
}

std::string mesh_obj(const Mesh& mesh) {
    std::ostringstream os;
    os.precision(10);
    os << "# Moebius strip, seam welded\n";
    for (const auto& v : mesh.vertices) os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
    for (const auto& t : mesh.triangles) os << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    return os.str();
}

std::string nodal_obj(const EmbeddingParams& params, const CurveGraph& curves) {
    std::ostringstream os;
    os.precision(10);
    os << "# nodal polylines on the embedded strip\n";
    long next = 1;
    for (const auto& e : curves.edges) {
        const long first = next;
        for (const auto& q : e.points) {
            const auto v = embed_point(params, q.x - kPi / 2.0, q.y);
            os << "v " << v[0] << ' ' << v[1] << ' ' << v[2] << '\n';
            ++next;
        }
        os << 'l';
        for (long k = first; k < next; ++k) os << ' ' << k;
        os << '\n';
    }
    return os.str();
}

MeshFiles export_mesh(const EmbeddingParams& params, const std::optional<EigenfunctionSpec>& spec,
                      const std::filesystem::path& path, int nodal_resolution) {
    MeshFiles files;
    write_file_atomic(path, mesh_obj(build_mesh(params)));
    files.mesh = path;
    if (spec) {
        const SignGrid grid = sample_grid(*spec, nodal_resolution, nodal_resolution);
        std::filesystem::path side = path;
        side.replace_extension();
        side += ".nodal.obj";
        write_file_atomic(side, nodal_obj(params, extract_curves(*spec, grid)));
        files.nodal = side;
    }
    return files;
}

}  // namespace mobius
