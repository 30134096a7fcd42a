#pragma once

// Deterministic fixture curves.

#include "curvlab/curve.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace curvlab::gen {

struct Plane {
  Vec u;  ///< first in-plane unit vector
  Vec w;  ///< second in-plane unit vector, orthogonal to u

  static Plane xy(int dim = 3);
};

/// Regular n-gon inscribed in a circle.
PolylineCurve circle(std::size_t n, double radius = 1.0, const Vec& center = Vec::Zero(3),
                     const Plane& plane = Plane::xy());

/// Planar convex polygon in the xy-plane of R^3 with vertex k at angle
/// 2 pi k / count and distance radii[k % radii.size()] from the origin.
/// Throws invalid_argument if the profile is not strictly convex.
PolylineCurve convex_polygon(std::size_t vertex_count, const std::vector<double>& radii);

/// The unit circle traversed twice, n vertices per turn, pushed off itself
/// by eps: radius 1 + eps (1 + cos(t/2)) / 2 and height eps sin(t/2) / 2 for
/// t in [0, 4 pi). eps = 0 gives the exactly doubled n-gon.
PolylineCurve doubled_circle(std::size_t n, double eps);

/// Two copies of a regular n-gon sitting in the half plane y >= 0 with a
/// vertex at the origin, tilted about the x-axis by +tilt and -tilt and
/// traversed one after the other. The copy of the origin that starts the
/// second polygon is moved by sep along +y, which makes the curve embedded.
/// The polygons are sized so that their xy shadows keep a margin sep around
/// the unit disk centered at moebius_shadow_center. Throws invalid_argument
/// unless the result is embedded with total curvature < 4 pi.
PolylineCurve moebius_boundary(std::size_t polygon_n, double tilt, double sep);

/// Center (in the xy-plane) of the unit disk covered twice by the shadow of
/// moebius_boundary(polygon_n, tilt, .).
Vec moebius_shadow_center(std::size_t polygon_n, double tilt, double sep);

/// (p, q) torus knot with n vertices on a torus of radii R > r.
PolylineCurve torus_knot(int p, int q, std::size_t n, double R = 2.0, double r = 1.0);

/// Unit circle in the xy-plane plus a random trigonometric polynomial of the
/// given number of harmonics in every coordinate; coefficients of harmonic k
/// are uniform in [-amplitude/k, amplitude/k].
PolylineCurve random_trig_curve(std::uint64_t seed, int harmonics, double amplitude,
                                std::size_t n = 128, int dim = 3);

/// Open arc of a random trigonometric curve: parameter range [0, 3 pi / 2].
PolylineCurve random_open_curve(std::uint64_t seed, int harmonics, double amplitude,
                                std::size_t n = 64, int dim = 3);

/// Two coaxial circles (axis z) at heights -gap/2 and +gap/2, both oriented
/// counterclockwise seen from +z.
std::pair<PolylineCurve, PolylineCurve> circle_pair(double radius1, double radius2, double gap,
                                                    std::size_t n = 64);

/// Replaces every corner by an inscribed circular arc of `segments` chords.
/// Each arc turns the same total angle as the corner it replaces, so total
/// curvature is unchanged. Throws invalid_argument when an arc does not fit.
PolylineCurve round_corners(const PolylineCurve& curve, double radius, int segments = 8);

/// Axis-aligned unit square in the xy-plane of R^3, counterclockwise from the
/// origin.
PolylineCurve unit_square();

}  // namespace curvlab::gen
