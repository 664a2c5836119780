#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mobius/curves.hpp"
#include "mobius/eigenfunction.hpp"
#include "mobius/nodal.hpp"

namespace mobius {

struct PlotStyle {
    std::uint32_t nodal_color = 0xff0000;
    std::uint32_t boundary_color = 0x0000ff;
    std::uint32_t seam_color = 0x000000;
    bool domain_labels = false;
};

// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// True when Phi vanishes identically on the seam y = 0.
bool seam_is_nodal(const EigenfunctionSpec& spec);

// SVG of the fundamental rectangle. `labels`, when given, places domain numbers at area
// centroids (requires style.domain_labels).
std::string fundamental_domain_svg(const EigenfunctionSpec& spec, const CurveGraph& curves, const PlotStyle& style,
                                   const NodalAnalysis* labels = nullptr);
void plot_fundamental_domain(const EigenfunctionSpec& spec, const CurveGraph& curves, const PlotStyle& style,
                             const std::filesystem::path& path, const NodalAnalysis* labels = nullptr);

struct EmbeddingParams {
    double R = 3.0;
    double a = 1.0;
    int u_samples = 256;
    int v_samples = 256;
};

// (w cos v, (R + w sin v) cos 2v, (R + w sin v) sin 2v) for a = 1, with w = u - pi/2.
std::array<double, 3> embed_point(const EmbeddingParams& params, double w, double v);

// Partial derivatives of the embedding in u and v.
std::array<double, 3> embed_du(const EmbeddingParams& params, double w, double v);
std::array<double, 3> embed_dv(const EmbeddingParams& params, double w, double v);

struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;

    long edge_count() const;
    long euler_characteristic() const;
    // Closed loops formed by edges that belong to exactly one triangle.
    int boundary_loops() const;
};

// Grid u_i = i pi/U, v_j = j pi/V (j < V); the row v = pi is welded onto v = 0 with
// i -> U - i, so no seam vertices are duplicated.
Mesh build_mesh(const EmbeddingParams& params);

// Closed polyline of the centre line w = 0.
std::vector<std::array<double, 3>> soul_curve(const EmbeddingParams& params, int samples);

std::string mesh_obj(const Mesh& mesh);
std::string nodal_obj(const EmbeddingParams& params, const CurveGraph& curves);

struct MeshFiles {
    std::filesystem::path mesh;
    std::optional<std::filesystem::path> nodal;  // <stem>.nodal.obj next to the mesh
};

MeshFiles export_mesh(const EmbeddingParams& params, const std::optional<EigenfunctionSpec>& spec,
                      const std::filesystem::path& path, int nodal_resolution = 400);

}  // namespace mobius
