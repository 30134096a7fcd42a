#pragma once

#include "curvlab/curve.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace curvlab {

enum class Topology { disk, annulus, moebius };

const char* to_string(Topology t);
Topology topology_from_string(const std::string& s);

/// Number of boundary loops a topology carries.
std::size_t loop_count(Topology t);

using Triangle = std::array<int, 3>;
using Edge = std::array<int, 2>;

/// Triangulated surface in R^3 with pinned boundary loops.
///
/// Boundary loops are vertex cycles; the edges lying on exactly one triangle
/// must be exactly the loop edges. Non-orientable meshes carry a witness: the
/// interior edges across which the stored triangle orientations agree instead
/// of being opposite. A consistent orientation exists iff the witness can be
/// removed by flipping triangles, which is impossible for a Moebius band.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  std::vector<std::vector<int>> boundary_loops;
  Topology topology = Topology::disk;
  bool orientable = true;
  std::vector<Edge> twist_edges;

  std::size_t vertex_count() const noexcept { return vertices.size(); }
  std::size_t triangle_count() const noexcept { return triangles.size(); }

  /// Diagonal of the bounding box.
  double scale() const;

  std::vector<bool> boundary_mask() const;

  /// Boundary loop k as a closed polyline.
  PolylineCurve loop_curve(std::size_t k) const;
  std::vector<PolylineCurve> boundary_curves() const;
};

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);
double triangle_area(const TriangleMesh& mesh, const Triangle& t);

/// Throws invalid_mesh on a violated invariant.
void validate(const TriangleMesh& mesh);

/// Tries to orient all triangles consistently by propagation across interior
/// edges. Returns false when two propagation paths disagree.
bool has_consistent_orientation(const TriangleMesh& mesh);

/// Interior edges whose two triangles traverse them in the same direction.
std::vector<Edge> orientation_cocycle(const TriangleMesh& mesh);

double surface_area(const TriangleMesh& mesh);

/// Sum of triangle angles at a vertex divided by 2 pi.
double vertex_density(const TriangleMesh& mesh, int vertex);

/// 2 pi minus the angle sum at an interior vertex.
double angle_defect(const TriangleMesh& mesh, int vertex);

/// Exterior angle of the boundary polyline at a boundary vertex, or -1 when
/// the vertex is interior.
double boundary_turning_angle(const TriangleMesh& mesh, int vertex);

/// Max distance of the vertices from their best-fit plane, relative to scale().
double planarity_residual(const TriangleMesh& mesh);

/// Pins for build_initial_mesh: each curve must be closed and lie in R^3
/// (R^2 curves are embedded at z = 0).
TriangleMesh build_initial_mesh(std::span<const PolylineCurve> curves, Topology topology,
                                int resolution);

}  // namespace curvlab
