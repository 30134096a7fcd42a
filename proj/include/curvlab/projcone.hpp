#pragma once

// Radial projection of polygonal curves onto the unit sphere about a point,
// densities of the cone over the curve, and areas of the interior and
// exterior cones intersected with a ball.

#include "curvlab/curve.hpp"

#include <span>
#include <vector>

namespace curvlab {

/// Image of a polyline under x -> (x - p)/|x - p|, stored centered at the
/// origin. Straight edges map to great-circle arcs, so arc lengths are exact.
struct SphericalPolyline {
  Vec center;
  std::vector<Vec> points;
  std::vector<double> arc_lengths;
  bool closed = true;

  double length() const;
};

struct ConeDensityReport {
  double spherical_length = 0.0;
  double density = 0.0;   ///< spherical_length / 2pi
  double bound_tc = 0.0;  ///< total curvature of the curve
  double slack = 0.0;     ///< bound_tc - spherical_length
};

struct BoundaryProjectionReport {
  double length = 0.0;  ///< length of the projection of the curve minus p
  double tc = 0.0;
  double theta = 0.0;  ///< exterior angle at p
  double slack = 0.0;  ///< tc - pi - theta - length
};

struct OpenConeReport {
  double spherical_length = 0.0;
  double density = 0.0;
  double tc = 0.0;
  double bound = 0.0;  ///< (tc + pi) / 2pi
  double slack = 0.0;  ///< bound - density
};

/// Throws projection_undefined if p is within 1e-12 * diam of the curve.
SphericalPolyline radial_project(const PolylineCurve& curve, const Vec& p);

double spherical_length(const SphericalPolyline& sp);

/// Sum of projected arc lengths of all edges (wrap edge included when closed).
double projected_length(const PolylineCurve& curve, const Vec& p);

ConeDensityReport cone_density(const PolylineCurve& curve, const Vec& p);

/// Cone density of a boundary made of several closed components.
double cone_density(std::span<const PolylineCurve> curves, const Vec& p);

/// Projection from a vertex of a closed curve. The two incident edges project
/// to the single points -T_- and T^+, so only the remaining edges contribute.
BoundaryProjectionReport boundary_projection_bound(const PolylineCurve& curve,
                                                   std::size_t vertex_index);

OpenConeReport open_curve_cone_bound(const PolylineCurve& curve, const Vec& p);

/// Area of {p + t(x - p) : x in curve, t >= 1} inside B(p, r). Mapping area:
/// overlapping pieces count with multiplicity. Edges whose line passes
/// through p contribute nothing.
double exterior_cone_area_in_ball(const PolylineCurve& curve, const Vec& p, double r);

/// Area of {p + t(x - p) : x in curve, 0 <= t <= 1} inside B(p, r).
double cone_area_in_ball(const PolylineCurve& curve, const Vec& p, double r);

/// Length of the radial projection of the part of the curve inside B(p, r).
double clipped_projected_length(const PolylineCurve& curve, const Vec& p, double r);

/// Distance of the vertices from the best 2-plane through p, relative to
/// max |x - p|. Zero iff the curve lies in a 2-plane through p.
double coplanarity_residual(const PolylineCurve& curve, const Vec& p);

/// Discrete local convexity of a planar curve with respect to p: every
/// vertex turns toward p within the plane. Informational only.
bool locally_convex_about(const PolylineCurve& curve, const Vec& p, double tol = 1e-9);

}  // namespace curvlab
