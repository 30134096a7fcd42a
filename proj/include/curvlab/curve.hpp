#pragma once

#include "curvlab/common.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace curvlab {

/// A closed or open polygonal curve in R^dim.
///
/// Closed curves do not repeat the first vertex; the closing edge is implicit.
/// Construction rejects non-finite coordinates and consecutive vertices closer
/// than 1e-12 times the diameter.
class PolylineCurve {
 public:
  PolylineCurve(PointMatrix coords, bool closed);

  static PolylineCurve from_points(const std::vector<Vec>& points, bool closed);

  int dim() const noexcept { return static_cast<int>(coords_.rows()); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.cols()); }
  bool closed() const noexcept { return closed_; }

  /// dim x n, one coordinate per contiguous row.
  const PointMatrix& coords() const noexcept { return coords_; }

  Vec vertex(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }

  /// Number of edges: n for closed curves, n - 1 for open ones.
  std::size_t edge_count() const noexcept { return closed_ ? size() : size() - 1; }

  /// Vertex index following i, wrapping for closed curves.
  std::size_t next(std::size_t i) const noexcept { return i + 1 == size() ? 0 : i + 1; }
  std::size_t prev(std::size_t i) const noexcept { return i == 0 ? size() - 1 : i - 1; }

  /// Edge vector from vertex i to its successor.
  Vec edge(std::size_t i) const { return vertex(next(i)) - vertex(i); }

  std::vector<Vec> points() const;

 private:
  PointMatrix coords_;
  bool closed_;
};

/// Drops vertices closer than rel_tol * diameter to their predecessor.
/// Not applied by the constructor; callers opt in.
std::vector<Vec> merge_near_duplicates(const std::vector<Vec>& points, bool closed, double rel_tol);

struct TangentPair {
  Vec t_plus;
  Vec t_minus;
};

double total_curvature(const PolylineCurve& curve);

/// Turning angle in [0, pi] at a vertex. Throws no_exterior_angle at the
/// endpoints of an open curve.
double exterior_angle(const PolylineCurve& curve, std::size_t vertex_index);

TangentPair one_sided_tangents(const PolylineCurve& curve, std::size_t vertex_index);

/// Unit chord from vertex i to vertex j, i < j.
Vec chord_direction(const PolylineCurve& curve, std::size_t i, std::size_t j);

/// Total curvature of the open arc strictly between vertices a < b (turning
/// at a + 1, ..., b - 1).
double arc_total_curvature(const PolylineCurve& curve, std::size_t a, std::size_t b);

/// Length of the sub-polyline from vertex a to vertex b, a <= b.
double arc_length(const PolylineCurve& curve, std::size_t a, std::size_t b);

struct ChordAngleCheck {
  bool holds;
  double angle;  ///< angle between T_ax and T_yb
  double arc_tc;
  double slack;  ///< arc_tc - angle
};

/// Checks angle(T_ax, T_yb) <= TC(arc (a, b)) for a < x <= y < b.
ChordAngleCheck chord_angle_bound_check(const PolylineCurve& curve, std::size_t a, std::size_t x,
                                        std::size_t y, std::size_t b, double tol = 1e-9);

enum class BoundStatus { holds, violated, not_applicable };

struct ChordLengthCheck {
  BoundStatus status;
  double kappa;  ///< total curvature of the open arc
  double ratio;  ///< arclength / chord
  double bound;  ///< 1 / cos(2 kappa), NaN when not applicable
};

/// Arclength of arc (a, b) against chord / cos(2 kappa); only defined for
/// kappa < pi / 4.
ChordLengthCheck chord_length_bound_check(const PolylineCurve& curve, std::size_t a, std::size_t b,
                                          double tol = 1e-9);

double arclength(const PolylineCurve& curve);
double diameter(const PolylineCurve& curve);

/// diam * TC / length. Bounded below by a constant depending only on dim.
double rectifiability_ratio(const PolylineCurve& curve);

/// Minimum distance between pairs of edges that share no vertex. Zero means
/// the polyline touches itself. Returns +inf when no such pair exists.
double min_nonadjacent_edge_distance(const PolylineCurve& curve);

using CurveSampler = std::function<Vec(double)>;

struct RefinementOptions {
  std::size_t initial_vertices = 8;
  int max_doublings = 20;
};

/// Doubles an inscribed polygon until consecutive total-curvature estimates
/// differ by less than tc_tol. Closed samplers are evaluated on [0, 1), open
/// ones on [0, 1].
PolylineCurve refine_to_tolerance(const CurveSampler& sampler, bool closed, double tc_tol,
                                  const RefinementOptions& options = {});

}  // namespace curvlab
