#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "mobius/errors.hpp"
#include "mobius/render.hpp"
#include "oracles.hpp"

using namespace mobius;
using oracle::pi;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
    const char* env = std::getenv("MOBIUS_TEST_TMP");
    fs::path d = (env && *env ? fs::path(env) : fs::temp_directory_path() / "mobius_tests") / name;
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_prefix(const std::string& text, const std::string& prefix) {
    std::istringstream is(text);
    std::string line;
    int n = 0;
    while (std::getline(is, line))
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

double dist(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1], a[2] - b[2]);
}

}  // namespace

TEST(Render, AtomicWrite) {
    const fs::path d = scratch_dir("atomic");
    const fs::path p = d / "out.txt";
    write_file_atomic(p, "first");
    write_file_atomic(p, "second");
    EXPECT_EQ(slurp(p), "second");
    int entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(d)) ++entries;
    EXPECT_EQ(entries, 1);
    EXPECT_THROW(write_file_atomic(d / "missing" / "x.txt", "x"), IoError);
}

TEST(Render, SeamNodality) {
    EXPECT_TRUE(seam_is_nodal(family_to_spec(FamilyParams::two_three(0.0, 0.0))));
    EXPECT_TRUE(seam_is_nodal(family_to_spec(FamilyParams::two_three(0.0, 0.8))));
    EXPECT_FALSE(seam_is_nodal(family_to_spec(FamilyParams::two_three(0.3, 0.8))));
    EXPECT_FALSE(seam_is_nodal(make_spec({{1, 0, YKind::Cos, 1.0}})));
}

TEST(Render, SvgOfTheFundamentalRectangle) {
    const EigenfunctionSpec s = family_to_spec(FamilyParams::two_three(0.4, 0.3));
    NodalOptions o;
    o.resolution = 200;
    const NodalAnalysis a = analyze_nodal(s, o);
    const CurveGraph g = extract_curves(s, a.grid);
    PlotStyle style;
    style.domain_labels = true;
    const std::string svg = fundamental_domain_svg(s, g, style, &a);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"#ff0000\""), std::string::npos);
    EXPECT_NE(svg.find("stroke=\"#0000ff\""), std::string::npos);
    EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);  // seam drawn: not nodal at beta = 0.4
    EXPECT_NE(svg.find("not conformal"), std::string::npos);
    EXPECT_GT(count_prefix(svg, "<polyline"), 0);
    EXPECT_EQ(count_prefix(svg, "<text"), a.domains.count);

    const fs::path p = scratch_dir("svg") / "nodal.svg";
    plot_fundamental_domain(s, g, style, p, &a);
    EXPECT_EQ(slurp(p), svg);

    style.nodal_color = 0x1000000;
    EXPECT_THROW(fundamental_domain_svg(s, g, style), DomainError);
}

TEST(RenderProperty, SeamWeld) {
    const EmbeddingParams p;
    for (int i = 0; i <= 100; ++i) {
        const double w = -pi / 2 + i * pi / 100;
        EXPECT_LT(dist(embed_point(p, w, 0.0), embed_point(p, -w, pi)), 1e-12);
    }
}

TEST(RenderProperty, CoordinateDirectionsAreOrthogonal) {
    std::mt19937_64 rng(oracle::kSeed);
    const EmbeddingParams p;
    for (int i = 0; i < 200; ++i) {
        const double w = oracle::uniform(rng, -pi / 2, pi / 2), v = oracle::uniform(rng, 0, 2 * pi);
        const auto du = embed_du(p, w, v), dv = embed_dv(p, w, v);
        EXPECT_NEAR(du[0] * dv[0] + du[1] * dv[1] + du[2] * dv[2], 0.0, 1e-12);
        // And they are the derivatives of the embedding.
        for (int c = 0; c < 3; ++c) {
            EXPECT_NEAR(du[c], oracle::fd4([&](double t) { return embed_point(p, t, v)[c]; }, w, 1e-4), 1e-9);
            EXPECT_NEAR(dv[c], oracle::fd4([&](double t) { return embed_point(p, w, t)[c]; }, v, 1e-4), 1e-9);
        }
    }
}

TEST(Render, SoulIsACircleOfRadiusR) {
    const EmbeddingParams p;
    const auto soul = soul_curve(p, 64);
    ASSERT_EQ(soul.size(), 65u);
    EXPECT_EQ(soul.front(), soul.back());
    for (const auto& q : soul) {
        EXPECT_NEAR(q[0], 0.0, 1e-15);
        EXPECT_NEAR(std::hypot(q[1], q[2]), p.R, 1e-12);
    }
    std::set<std::pair<long, long>> distinct;
    for (std::size_t i = 0; i + 1 < soul.size(); ++i)
        distinct.insert({std::lround(soul[i][1] * 1e6), std::lround(soul[i][2] * 1e6)});
    EXPECT_EQ(distinct.size(), 64u);
}

TEST(RenderProperty, WeldedMeshIsAMobiusStrip) {
    for (auto [u, v] : {std::pair{8, 8}, std::pair{16, 40}, std::pair{256, 256}}) {
        EmbeddingParams p;
        p.u_samples = u;
        p.v_samples = v;
        const Mesh m = build_mesh(p);
        EXPECT_EQ(m.vertices.size(), static_cast<std::size_t>((u + 1) * v));
        EXPECT_EQ(m.triangles.size(), static_cast<std::size_t>(2 * u * v));
        EXPECT_EQ(m.euler_characteristic(), 0);
        EXPECT_EQ(m.boundary_loops(), 1);
        // Every interior edge is shared by exactly two triangles.
        std::map<std::pair<int, int>, int> use;
        for (const auto& t : m.triangles)
            for (int k = 0; k < 3; ++k) {
                const int a = t[k], b = t[(k + 1) % 3];
                ++use[{std::min(a, b), std::max(a, b)}];
            }
        for (const auto& [e, n] : use) EXPECT_LE(n, 2);
        // No two vertices coincide: the seam row is not duplicated.
        std::set<std::array<long, 3>> keys;
        for (const auto& q : m.vertices) keys.insert({std::lround(q[0] * 1e9), std::lround(q[1] * 1e9), std::lround(q[2] * 1e9)});
        EXPECT_EQ(keys.size(), m.vertices.size());
    }
}

TEST(Render, ExportMeshWithNodalSidecar) {
    const fs::path d = scratch_dir("mesh");
    EmbeddingParams p;
    p.u_samples = 32;
    p.v_samples = 64;
    const MeshFiles f = export_mesh(p, family_to_spec(FamilyParams::two_three(0.4, 0.3)), d / "strip.obj", 200);
    ASSERT_TRUE(f.nodal.has_value());
    EXPECT_EQ(f.nodal->filename(), "strip.nodal.obj");
    const std::string obj = slurp(f.mesh);
    EXPECT_EQ(count_prefix(obj, "v "), 33 * 64);
    EXPECT_EQ(count_prefix(obj, "f "), 2 * 32 * 64);
    const std::string nodal = slurp(*f.nodal);
    EXPECT_GT(count_prefix(nodal, "l "), 0);
    const MeshFiles bare = export_mesh(p, std::nullopt, d / "bare.obj");
    EXPECT_FALSE(bare.nodal.has_value());
    EXPECT_FALSE(fs::exists(d / "bare.nodal.obj"));
}

TEST(Render, EmbeddingErrors) {
    EmbeddingParams p;
    p.R = 1.5;
    EXPECT_THROW(embed_point(p, 0.0, 0.0), DomainError);
    EmbeddingParams q;
    q.u_samples = 4;
    EXPECT_THROW(build_mesh(q), DomainError);
}
