#include "mobius/curves.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>

#include "mobius/errors.hpp"

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

class Dsu {
public:
    explicit Dsu(std::size_t n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
    int find(int a) {
        while (p_[a] != a) a = p_[a] = p_[p_[a]];
        return a;
    }
    void unite(int a, int b) { p_[find(a)] = find(b); }

private:
    std::vector<int> p_;
};

// Newton on the gradient from a saddle estimate. Returns the point only when it lands
// within two cells on a zero of Phi with vanishing gradient.
std::optional<Point2> polish_critical(const EigenfunctionSpec& spec, Point2 p, double h) {
    const double mass = coefficient_mass(spec);
    const double k = std::sqrt(spec.eigenvalue);
    Point2 q = p;
    for (int it = 0; it < 12; ++it) {
        const double fx = partial_derivative(spec, q.x, q.y, 1, 0);
        const double fy = partial_derivative(spec, q.x, q.y, 0, 1);
        const double fxx = partial_derivative(spec, q.x, q.y, 2, 0);
        const double fxy = partial_derivative(spec, q.x, q.y, 1, 1);
        const double fyy = partial_derivative(spec, q.x, q.y, 0, 2);
        const double det = fxx * fyy - fxy * fxy;
        if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
        const double dx = (fyy * fx - fxy * fy) / det;
        const double dy = (fxx * fy - fxy * fx) / det;
        q.x -= dx;
        q.y -= dy;
        if (std::hypot(dx, dy) < 1e-15) break;
    }
    if (!std::isfinite(q.x) || !std::isfinite(q.y)) return std::nullopt;
    if (std::hypot(q.x - p.x, q.y - p.y) > 2.0 * h || q.x <= 0.0 || q.x >= kPi) return std::nullopt;
    if (std::abs(evaluate(spec, q.x, q.y)) > 1e-9 * mass) return std::nullopt;
    const double grad = std::hypot(partial_derivative(spec, q.x, q.y, 1, 0), partial_derivative(spec, q.x, q.y, 0, 1));
    if (grad > 1e-7 * mass * k) return std::nullopt;
    return to_fundamental(q);
}

enum class NodeKind { Interior, Boundary, Junction };

struct Builder {
    const EigenfunctionSpec& spec;
    const SignGrid& g;
    int ncols;  // nx + 2 node columns: x = 0, cell centres, x = pi
    std::vector<Point2> pos;
    std::vector<NodeKind> kind;
    std::unordered_map<std::uint64_t, int> crossing;
    std::vector<std::array<int, 2>> segments;

    Builder(const EigenfunctionSpec& sp, const SignGrid& grid) : spec(sp), g(grid), ncols(grid.nx + 2) {}

    double node_x(int c) const {
        if (c == 0) return 0.0;
        if (c == ncols - 1) return kPi;
        return (c - 0.5) * g.hx();
    }
    double node_value(int c, int j) const {
        if (c == 0) return g.left_edge[j];
        if (c == ncols - 1) return g.right_edge[j];
        return g.centers[static_cast<std::size_t>(j) * g.nx + (c - 1)];
    }
    int node_id(int c, int j) const { return j * ncols + c; }

    struct Corner {
        int id;
        double v;
        Point2 p;  // lifted position
    };

    int crossing_node(const Corner& a, const Corner& b, bool boundary) {
        const std::uint64_t lo = static_cast<std::uint64_t>(std::min(a.id, b.id));
        const std::uint64_t hi = static_cast<std::uint64_t>(std::max(a.id, b.id));
        const std::uint64_t key = (lo << 32) | hi;
        auto it = crossing.find(key);
        if (it != crossing.end()) return it->second;
        const double t = a.v / (a.v - b.v);
        const Point2 q{a.p.x + t * (b.p.x - a.p.x), a.p.y + t * (b.p.y - a.p.y)};
        const int idx = static_cast<int>(pos.size());
        pos.push_back(to_fundamental(q));
        kind.push_back(boundary ? NodeKind::Boundary : NodeKind::Interior);
        crossing.emplace(key, idx);
        return idx;
    }

    void cell(int c, int j) {
        const double hy = g.hy();
        const double y0 = (j + 0.5) * hy;
        Corner a{node_id(c, j), node_value(c, j), {node_x(c), y0}};
        Corner b{node_id(c + 1, j), node_value(c + 1, j), {node_x(c + 1), y0}};
        Corner d, e;
        if (j + 1 < g.ny) {
            d = {node_id(c, j + 1), node_value(c, j + 1), {node_x(c), y0 + hy}};
            e = {node_id(c + 1, j + 1), node_value(c + 1, j + 1), {node_x(c + 1), y0 + hy}};
        } else {
            const int cd = ncols - 1 - c, ce = ncols - 2 - c;
            d = {node_id(cd, 0), node_value(cd, 0), {node_x(c), y0 + hy}};
            e = {node_id(ce, 0), node_value(ce, 0), {node_x(c + 1), y0 + hy}};
        }
        const bool sa = a.v >= 0.0, sb = b.v >= 0.0, sd = d.v >= 0.0, se = e.v >= 0.0;
        std::array<int, 4> hit{-1, -1, -1, -1};  // bottom, right, top, left
        int n = 0;
        if (sa != sb) hit[0] = crossing_node(a, b, false), ++n;
        if (sb != se) hit[1] = crossing_node(b, e, c + 1 == ncols - 1), ++n;
        if (sd != se) hit[2] = crossing_node(d, e, false), ++n;
        if (sa != sd) hit[3] = crossing_node(a, d, c == 0), ++n;
        if (n == 0) return;
        if (n == 2) {
            int u = -1, w = -1;
            for (int h : hit)
                if (h >= 0) (u < 0 ? u : w) = h;
            segments.push_back({u, w});
            return;
        }
        // Saddle cell: all four edges cut.
        const double den = a.v - b.v - d.v + e.v;
        const double su = std::clamp((a.v - d.v) / den, 0.0, 1.0);
        const double sv = std::clamp((a.v - b.v) / den, 0.0, 1.0);
        const Point2 q{a.p.x + su * (b.p.x - a.p.x), a.p.y + sv * hy};
        if (auto z = polish_critical(spec, q, std::max(g.hx(), hy))) {
            const int jn = static_cast<int>(pos.size());
            pos.push_back(*z);
            kind.push_back(NodeKind::Junction);
            for (int h : hit) segments.push_back({jn, h});
            return;
        }
        const double saddle = (a.v * e.v - b.v * d.v) / den;
        if ((saddle >= 0.0) == sa) {
            segments.push_back({hit[0], hit[1]});
            segments.push_back({hit[2], hit[3]});
        } else {
            segments.push_back({hit[0], hit[3]});
            segments.push_back({hit[1], hit[2]});
        }
    }
};

double boundary_value(const EigenfunctionSpec& spec, double xi, double y) { return reduced_value(spec, xi, y); }

// Sharpen a boundary hit by bisection along the Dirichlet edge.
Point2 polish_boundary(const EigenfunctionSpec& spec, Point2 p, double hy) {
    const double xi = p.x < kPi / 2 ? 0.0 : kPi;
    double lo = p.y - hy, hi = p.y + hy;
    double flo = boundary_value(spec, xi, lo), fhi = boundary_value(spec, xi, hi);
    if ((flo > 0) == (fhi > 0)) return p;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = boundary_value(spec, xi, mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return to_fundamental({xi, 0.5 * (lo + hi)});
}

}  // namespace

Point2 to_fundamental(Point2 p) {
    double y = std::fmod(p.y, 2.0 * kPi);
    if (y < 0.0) y += 2.0 * kPi;
    double x = p.x;
    if (y >= kPi) {
        y -= kPi;
        x = kPi - x;
    }
    if (y >= kPi) {  // rounding landed on the seam: (x, pi) ~ (pi - x, 0)
        y = 0.0;
        x = kPi - x;
    }
    return {x, y};
}

Point2 lift_near(Point2 q, Point2 near) {
    q = to_fundamental(q);
    Point2 best = q;
    double bd = std::hypot(q.x - near.x, q.y - near.y);
    for (int k = -2; k <= 2; ++k) {
        if (k == 0) continue;
        const Point2 c{(k % 2 != 0) ? kPi - q.x : q.x, q.y + k * kPi};
        const double d = std::hypot(c.x - near.x, c.y - near.y);
        if (d < bd) {
            bd = d;
            best = c;
        }
    }
    return best;
}

int CurveGraph::incidence(Point2 p, double radius) const {
    int count = 0;
    const double r2 = radius * radius;
    for (const auto& e : edges) {
        for (std::size_t k = 0; k + 1 < e.points.size(); ++k) {
            const Point2 a = lift_near(e.points[k], p);
            const Point2 b = lift_near(e.points[k + 1], a);
            const double dx = b.x - a.x, dy = b.y - a.y;
            const double fx = a.x - p.x, fy = a.y - p.y;
            const double qa = dx * dx + dy * dy;
            if (qa == 0.0) continue;
            const double qb = 2.0 * (fx * dx + fy * dy);
            const double qc = fx * fx + fy * fy - r2;
            const double disc = qb * qb - 4.0 * qa * qc;
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            const double t1 = (-qb - sq) / (2.0 * qa), t2 = (-qb + sq) / (2.0 * qa);
            if (t1 >= 0.0 && t1 < 1.0) ++count;
            if (t2 != t1 && t2 >= 0.0 && t2 < 1.0) ++count;
        }
    }
    return count;
}

std::vector<Point2> CurveGraph::junctions() const {
    std::vector<Point2> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::Junction) out.push_back(v.p);
    return out;
}

std::vector<Point2> CurveGraph::boundary_hits() const {
    std::vector<Point2> out;
    for (const auto& v : vertices)
        if (v.kind == VertexKind::Boundary) out.push_back(v.p);
    return out;
}

int CurveGraph::merged_b1(const std::vector<Point2>& boundary_anchors, const std::vector<Point2>& interior_anchors,
                          double radius) const {
    Dsu ds(static_cast<std::size_t>(components));
    auto near_components = [&](Point2 a) {
        std::vector<int> out;
        for (std::size_t e = 0; e < edges.size(); ++e)
            for (const auto& p : edges[e].points) {
                const Point2 l = lift_near(p, a);
                if (std::hypot(l.x - a.x, l.y - a.y) <= radius) {
                    out.push_back(edge_component[e]);
                    break;
                }
            }
        return out;
    };
    for (const auto& a : boundary_anchors)
        for (int c : near_components(a)) ds.unite(c, boundary_component);
    for (const auto& a : interior_anchors) {
        const auto cs = near_components(a);
        for (std::size_t i = 1; i < cs.size(); ++i) ds.unite(cs[i], cs[0]);
    }
    std::set<int> roots;
    for (int c = 0; c < components; ++c) roots.insert(ds.find(c));
    return static_cast<int>(roots.size());
}

CurveGraph extract_curves(const EigenfunctionSpec& spec, const SignGrid& grid) {
    Builder b(spec, grid);
    for (int j = 0; j < grid.ny; ++j)
        for (int c = 0; c < grid.nx + 1; ++c) b.cell(c, j);

    const int nn = static_cast<int>(b.pos.size());
    std::vector<std::vector<std::pair<int, int>>> adj(nn);
    for (int s = 0; s < static_cast<int>(b.segments.size()); ++s) {
        adj[b.segments[s][0]].push_back({b.segments[s][1], s});
        adj[b.segments[s][1]].push_back({b.segments[s][0], s});
    }
    for (int v = 0; v < nn; ++v) {
        const int want = b.kind[v] == NodeKind::Boundary ? 1 : (b.kind[v] == NodeKind::Junction ? 4 : 2);
        const int deg = static_cast<int>(adj[v].size());
        if (deg != want)
            throw ExtractionError("curve node at (" + std::to_string(b.pos[v].x) + ", " +
                                  std::to_string(b.pos[v].y) + ") has degree " + std::to_string(deg) +
                                  ", expected " + std::to_string(want));
    }

    CurveGraph out;
    out.spacing = std::max(grid.hx(), grid.hy());
    std::vector<int> vertex_of(nn, -1);
    for (int v = 0; v < nn; ++v) {
        if (b.kind[v] == NodeKind::Interior) continue;
        Point2 p = b.pos[v];
        if (b.kind[v] == NodeKind::Boundary) p = polish_boundary(spec, p, grid.hy());
        b.pos[v] = p;
        vertex_of[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back({p, b.kind[v] == NodeKind::Boundary ? VertexKind::Boundary : VertexKind::Junction,
                                static_cast<int>(adj[v].size())});
    }

    std::vector<char> used(b.segments.size(), 0);
    auto walk = [&](int start, int first_seg, int first_next) {
        CurvePolyline pl;
        pl.v0 = vertex_of[start];
        pl.points.push_back(b.pos[start]);
        int prev_seg = first_seg, cur = first_next;
        used[first_seg] = 1;
        while (true) {
            pl.points.push_back(b.pos[cur]);
            if (vertex_of[cur] >= 0) break;
            int next = -1, seg = -1;
            for (auto [w, s] : adj[cur])
                if (s != prev_seg && !used[s]) {
                    next = w;
                    seg = s;
                    break;
                }
            if (seg < 0) break;
            used[seg] = 1;
            prev_seg = seg;
            cur = next;
        }
        pl.v1 = vertex_of[cur];
        return pl;
    };

    for (int v = 0; v < nn; ++v) {
        if (vertex_of[v] < 0) continue;
        for (auto [w, s] : adj[v])
            if (!used[s]) out.edges.push_back(walk(v, s, w));
    }
    // What is left are closed loops through degree-2 nodes only.
    for (int s = 0; s < static_cast<int>(b.segments.size()); ++s) {
        if (used[s]) continue;
        const int start = b.segments[s][0];
        vertex_of[start] = static_cast<int>(out.vertices.size());
        out.vertices.push_back({b.pos[start], VertexKind::LoopAnchor, 2});
        out.edges.push_back(walk(start, s, b.segments[s][1]));
    }

    // Components, with every boundary hit attached to the single boundary circle.
    const int nv = static_cast<int>(out.vertices.size());
    Dsu ds(static_cast<std::size_t>(nv) + 1);
    const int circle = nv;
    for (const auto& e : out.edges) ds.unite(e.v0, e.v1);
    for (int v = 0; v < nv; ++v)
        if (out.vertices[v].kind == VertexKind::Boundary) ds.unite(v, circle);
    std::unordered_map<int, int> comp_id;
    for (int v = 0; v <= nv; ++v) {
        const int r = ds.find(v);
        if (!comp_id.count(r)) comp_id.emplace(r, static_cast<int>(comp_id.size()));
    }
    out.b1 = static_cast<int>(comp_id.size());
    out.boundary_component = comp_id[ds.find(circle)];
    out.components = out.b1;
    for (const auto& e : out.edges) out.edge_component.push_back(comp_id[ds.find(e.v0)]);
    return out;
}

int zero_band_b1(const SignGrid& grid) {
    const int nx = grid.nx, ny = grid.ny;
    const int n = nx * ny;
    Dsu ds(static_cast<std::size_t>(n) + 1);
    const int circle = n;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            if (grid.sign(i, j) != 0) continue;
            const int id = grid.index(i, j);
            if (i == 0 || i == nx - 1) ds.unite(id, circle);
            for (int di = -1; di <= 1; ++di) {
                const int qi = i + di;
                if (qi < 0 || qi >= nx) continue;
                if (di == 1 && grid.sign(qi, j) == 0) ds.unite(id, grid.index(qi, j));
                if (j + 1 < ny) {
                    if (grid.sign(qi, j + 1) == 0) ds.unite(id, grid.index(qi, j + 1));
                } else {
                    const int k = grid.seam_map(qi);
                    if (grid.sign(k, 0) == 0) ds.unite(id, grid.index(k, 0));
                }
            }
        }
    std::set<int> roots;
    roots.insert(ds.find(circle));
    for (int c = 0; c < n; ++c)
        if (grid.signs[static_cast<std::size_t>(c)] == 0) roots.insert(ds.find(c));
    return static_cast<int>(roots.size());
}

EnclosedLoopReport enclosed_loop_report(const CurveGraph& curves, double beta) {
    const std::array<double, 3> xs{kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0};
    std::vector<double> ys{0.0, kPi / 3.0, 2.0 * kPi / 3.0};
    for (int k = -2; k <= 4; ++k) {
        double y = (k * kPi - beta) / 2.0;
        if (y >= 0.0 && y < kPi) ys.push_back(y);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end(), [](double a, double b) { return b - a < 1e-12; }), ys.end());

    auto cell_of = [&](Point2 p) {
        const int cx = static_cast<int>(std::upper_bound(xs.begin(), xs.end(), p.x) - xs.begin());
        const int cy = static_cast<int>(std::upper_bound(ys.begin(), ys.end(), p.y) - ys.begin());
        return std::pair{cx, cy};
    };

    std::vector<std::set<std::pair<int, int>>> cells(curves.components);
    for (std::size_t e = 0; e < curves.edges.size(); ++e)
        for (const auto& p : curves.edges[e].points) cells[curves.edge_component[e]].insert(cell_of(p));

    EnclosedLoopReport rep;
    for (int c = 0; c < curves.components; ++c) {
        if (c == curves.boundary_component || cells[c].size() != 1) continue;
        const auto [cx, cy] = *cells[c].begin();
        // Probe the cell interior to tell white from grey.
        const double x0 = cx == 0 ? 0.0 : xs[cx - 1], x1 = cx == 3 ? kPi : xs[cx];
        const double y0 = cy == 0 ? 0.0 : ys[cy - 1];
        const double y1 = cy == static_cast<int>(ys.size()) ? kPi : ys[cy];
        const double pv = checkerboard_value(beta, 0.5 * (x0 + x1), 0.5 * (y0 + y1));
        rep.offenders.push_back({c, cx, cy, pv <= 0.0});
    }
    rep.ok = rep.offenders.empty();
    return rep;
}

bool no_enclosed_loop_check(const EigenfunctionSpec& spec, const SignGrid& grid, double beta) {
    return enclosed_loop_report(extract_curves(spec, grid), beta).ok;
}

}  // namespace mobius
