#pragma once

#include <array>
#include <string>
#include <vector>

#include "hermeig/domain.hpp"

namespace hermeig {

enum class EdgeTag { Axis, Outer };

struct BoundaryEdge {
    int v0 = 0, v1 = 0;
    EdgeTag tag = EdgeTag::Outer;
};

// Conforming triangulation with tagged boundary. Triangles are positively
// oriented; every boundary edge carries exactly one tag; Axis edges lie on
// x = 0 to within 1e-12 (half-domain meshes only).
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    double h = 0.0;  // realized maximum edge length

    double max_edge_length() const;
    double total_area() const;
    // Sum over triangles of the Gaussian-weighted area (mesh mass under
    // exp(-(x^2+y^2)/2) dx dy, i.e. 2*pi times the polygonal gamma_2).
    double gaussian_mass() const;
};

// Deterministic triangulation of a bounded validated domain with target edge
// length h; structured for rectangles, polar for disks, column-fitted along
// the profile graphs otherwise. Generated purely from (domain, h).
Mesh triangulate(const Domain& dom, double h);

// Mirror x -> -x with orientation fixed; used by symmetry tests.
Mesh mirror_mesh(const Mesh& mesh);

// Derive boundary edges (edges on exactly one triangle) and tag them; called
// by the generators, exposed for meshes assembled in tests.
void finalize_mesh(Mesh& mesh);

// ASCII export: vertices / triangles / tagged edges (+ optional nodal field).
std::string mesh_to_ascii(const Mesh& mesh, const std::vector<double>* nodal_values = nullptr);

}  // namespace hermeig
