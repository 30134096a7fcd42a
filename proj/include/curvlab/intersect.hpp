#pragma once

// Mesh self-intersection: exact orientation predicates, triangle-triangle
// tests, and an axis-aligned bounding-box tree for the broad phase.

#include "curvlab/mesh.hpp"

#include <utility>
#include <vector>

namespace curvlab {

/// Sign of det[b - a, c - a, d - a]: +1, 0 or -1, exact for all finite
/// doubles. A floating-point filter decides most cases; the rest are
/// evaluated in rational arithmetic.
int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

/// Exact sign of det[b - a, c - a] in the coordinate plane dropping `axis`.
int orient2d(const Vec3& a, const Vec3& b, const Vec3& c, int axis);

/// Whether closed triangles abc and def share at least one point (exact).
bool triangles_intersect(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                         const Vec3& f);

double triangle_distance(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                         const Vec3& f);

struct SelfIntersectionReport {
  std::vector<std::pair<int, int>> intersecting_pairs;  ///< triangle indices, first < second
  double min_separation = 0.0;  ///< over triangle pairs sharing no vertex
  bool empty() const noexcept { return intersecting_pairs.empty(); }
};

/// Tests every pair of triangles that share no vertex. Pairs that touch
/// exactly, or come within 1e-12 * scale, are reported as intersecting.
SelfIntersectionReport self_intersection_report(const TriangleMesh& mesh);

}  // namespace curvlab
