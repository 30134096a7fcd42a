#pragma once

// Discrete Plateau problem: least-area triangulated surfaces with pinned
// boundary, plus area-in-ball densities and the extended density profile of
// the surface joined with the exterior cone over its boundary.

#include "curvlab/mesh.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace curvlab {

enum class StepRule { fixed, backtracking };

const char* to_string(StepRule r);
StepRule step_rule_from_string(const std::string& s);

struct SolverParams {
  int max_iters = 2000;
  double grad_tol = 1e-9;  ///< on |grad A| / sqrt(A) over interior vertices
  double area_tol = 1e-12; ///< on relative area change over the last 10 steps
  StepRule step_rule = StepRule::backtracking;
  int remesh_every = 50;
  std::uint64_t seed = 0;  ///< visiting order of the remesher's smoothing pass

  void check() const;
};

struct ConvergenceReport {
  double initial_area = 0.0;
  double final_area = 0.0;
  int iterations = 0;
  double residual = 0.0;  ///< final |grad A| / sqrt(A)
  bool converged = false;
  std::string reason;  ///< "grad_tol", "area_tol", "stalled" or "max_iters"
  int remesh_passes = 0;
  int edge_flips = 0;
  int preconditioned_steps = 0;
  int gradient_steps = 0;
  std::vector<double> area_history;  ///< initial area, then the area after every accepted step
};

struct SolveResult {
  TriangleMesh mesh;
  ConvergenceReport report;
};

/// Area gradient at every vertex (boundary entries included).
std::vector<Vec3> area_gradient(const TriangleMesh& mesh);

/// Minimizes total area over the interior vertex positions. Every accepted
/// step lowers the area; boundary vertices are never written. Throws
/// solver_degenerate if triangles collapse and remeshing cannot repair them.
SolveResult minimize_area(TriangleMesh mesh, const SolverParams& params);

/// One remeshing pass: angle-reducing flips of interior edges, then tangential
/// smoothing. Changes that would raise the area are rejected. Returns the
/// number of flips.
int remesh(TriangleMesh& mesh, std::uint64_t seed);

struct BallArea {
  double area = 0.0;
  double error_bound = 0.0;  ///< total area of the unresolved boundary cells
};

/// Area of the mesh inside the closed ball B(p, r). Triangles inside the ball
/// count exactly; triangles crossing the sphere are bisected along their
/// longest edge until the pieces are smaller than 1e-3 r, and each remaining
/// crossing piece contributes the part where the linear interpolant of
/// |x - p|^2 - r^2 is negative.
BallArea area_in_ball(const TriangleMesh& mesh, const Vec3& p, double r);

/// area_in_ball / (pi r^2). Throws invalid_argument for r <= 0.
double density_ratio(const TriangleMesh& mesh, const Vec3& p, double r);

struct DensityProfile {
  Vec3 p = Vec3::Zero();
  std::vector<double> radii;
  std::vector<double> theta_surface;
  std::vector<double> theta_cone;
  std::vector<double> theta_total;
};

/// theta_cone uses the exterior cone over every given boundary curve.
DensityProfile extended_density_profile(const TriangleMesh& mesh, std::span<const PolylineCurve> curves,
                                        const Vec3& p, const std::vector<double>& radii);

/// Same, over the mesh's own boundary loops.
DensityProfile extended_density_profile(const TriangleMesh& mesh, const Vec3& p,
                                        const std::vector<double>& radii);

/// count radii r_k = rmin (rmax / rmin)^(k / (count - 1)).
std::vector<double> geometric_radii(double rmin, double rmax, int count);

}  // namespace curvlab
