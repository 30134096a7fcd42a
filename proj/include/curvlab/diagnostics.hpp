#pragma once

// Theorem-level verdicts over curves, cones and solved meshes, and their
// aggregation into a JSON report.

#include "curvlab/curve.hpp"
#include "curvlab/mesh.hpp"
#include "curvlab/plateau.hpp"

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace curvlab {

inline constexpr double kCurveTol = 1e-9;
inline constexpr double kMeshTol = 5e-3;

/// holds is always slack >= -tolerance.
struct TheoremVerdict {
  std::string theorem_id;
  bool holds = false;
  double slack = 0.0;
  double tolerance = 0.0;
  std::map<std::string, nlohmann::json> context;

  static TheoremVerdict make(std::string id, double slack, double tolerance);
};

/// total curvature minus the length of the radial projection from p.
TheoremVerdict verify_projection_bound(const PolylineCurve& curve, const Vec& p, double tol = kCurveTol);

/// tc - pi - theta - length of the projection from a vertex.
TheoremVerdict verify_boundary_projection_bound(const PolylineCurve& curve, std::size_t vertex,
                                                double tol = kCurveTol);

/// Cone density of the boundary at a mesh vertex minus its vertex density.
/// When the mesh is not a cone over p the context records the strict gap.
TheoremVerdict verify_density_cone_bound(const TriangleMesh& mesh, std::span<const PolylineCurve> curves,
                                         int vertex, double tol = kMeshTol);

/// Same at every interior vertex; slack is the minimum over vertices.
TheoremVerdict verify_density_cone_bound_all(const TriangleMesh& mesh, double tol = kMeshTol);

/// Slack is the most negative successive difference of theta_total (zero when
/// the profile never decreases).
TheoremVerdict verify_monotonicity(const DensityProfile& profile, double tol = kMeshTol);

/// Distance of the vertex density at a boundary vertex from the nearest value
/// in {1/2 - theta/2pi, 1/2 + theta/2pi} (from 0 when theta = pi), negated.
TheoremVerdict verify_corner_density(const TriangleMesh& mesh, int vertex, double tol = kMeshTol);

/// Slack 0 when no triangle pairs intersect, else minus the pair count.
TheoremVerdict verify_embedded(const TriangleMesh& mesh);

struct UnknotCertificate {
  bool certified = false;
  double tc = 0.0;
};

/// Certified when tc <= 4 pi + 1e-9. An uncertified curve may still be
/// unknotted; no claim is made.
UnknotCertificate unknotted_certificate(const PolylineCurve& curve);

/// tc - 2 pi per component; slack is the minimum. With two components the
/// context reports whether the total stays within 4 pi.
TheoremVerdict fenchel_screen(std::span<const PolylineCurve> curves, double tol = kCurveTol);
TheoremVerdict fenchel_screen(const PolylineCurve& curve, double tol = kCurveTol);

nlohmann::json to_json(const TheoremVerdict& v);

/// Verdicts grouped by theorem_id with per-group pass counts; "all_hold" at
/// the top level.
nlohmann::json aggregate(const std::vector<TheoremVerdict>& verdicts);

/// Base points used for profile checks at a solved mesh: the vertices of
/// minimal and maximal vertex density among interior vertices.
std::vector<int> extremal_density_vertices(const TriangleMesh& mesh);

}  // namespace curvlab
