#include "curvlab/curve.hpp"

#include "curvlab/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace curvlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_curve: return "invalid_curve";
    case ErrorCode::no_exterior_angle: return "no_exterior_angle";
    case ErrorCode::degenerate_chord: return "degenerate_chord";
    case ErrorCode::index_order: return "index_order";
    case ErrorCode::refinement_failure: return "refinement_failure";
    case ErrorCode::pathological_curve: return "pathological_curve";
    case ErrorCode::base_point_on_curve: return "base_point_on_curve";
    case ErrorCode::projection_undefined: return "projection_undefined";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::invalid_mesh: return "invalid_mesh";
    case ErrorCode::incompatible_topology: return "incompatible_topology";
    case ErrorCode::solver_degenerate: return "solver_degenerate";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

namespace {

double coords_diameter(const PointMatrix& coords) {
  const auto& k = kernels::active_kernels();
  return std::sqrt(k.max_pairwise_dist2(coords.data(), static_cast<std::size_t>(coords.cols()),
                                        static_cast<std::size_t>(coords.rows()),
                                        static_cast<std::size_t>(coords.cols())));
}

}  // namespace

PolylineCurve::PolylineCurve(PointMatrix coords, bool closed)
    : coords_(std::move(coords)), closed_(closed) {
  if (coords_.rows() < 2) throw Error(ErrorCode::invalid_curve, "curve dimension must be >= 2");
  const auto n = static_cast<std::size_t>(coords_.cols());
  if (closed_ && n < 3) throw Error(ErrorCode::invalid_curve, "closed curve needs >= 3 vertices");
  if (!closed_ && n < 2) throw Error(ErrorCode::invalid_curve, "open curve needs >= 2 vertices");
  if (!coords_.allFinite()) throw Error(ErrorCode::invalid_curve, "non-finite vertex coordinate");

  const double diam = coords_diameter(coords_);
  const double min_edge = 1e-12 * diam;
  for (std::size_t i = 0; i < edge_count(); ++i) {
    const double len = edge(i).norm();
    if (!(len > min_edge)) {
      throw Error(ErrorCode::invalid_curve,
                  "degenerate edge " + std::to_string(i) + " (length " + std::to_string(len) + ")");
    }
  }
}

PolylineCurve PolylineCurve::from_points(const std::vector<Vec>& points, bool closed) {
  if (points.empty()) throw Error(ErrorCode::invalid_curve, "empty vertex list");
  const auto dim = points.front().size();
  PointMatrix coords(dim, static_cast<Eigen::Index>(points.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) throw Error(ErrorCode::invalid_curve, "mixed vertex dimensions");
    coords.col(static_cast<Eigen::Index>(i)) = points[i];
  }
  return PolylineCurve(std::move(coords), closed);
}

std::vector<Vec> PolylineCurve::points() const {
  std::vector<Vec> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(vertex(i));
  return out;
}

std::vector<Vec> merge_near_duplicates(const std::vector<Vec>& points, bool closed,
                                       double rel_tol) {
  if (points.size() < 2) return points;
  double diam = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      diam = std::max(diam, (points[i] - points[j]).norm());
  const double tol = rel_tol * diam;
  std::vector<Vec> out;
  for (const auto& p : points) {
    if (!out.empty() && (p - out.back()).norm() <= tol) continue;
    out.push_back(p);
  }
  while (closed && out.size() > 1 && (out.back() - out.front()).norm() <= tol) out.pop_back();
  return out;
}

double exterior_angle(const PolylineCurve& curve, std::size_t vertex_index) {
  if (vertex_index >= curve.size()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  if (!curve.closed() && (vertex_index == 0 || vertex_index + 1 == curve.size())) {
    throw Error(ErrorCode::no_exterior_angle, "endpoint of an open curve has no exterior angle");
  }
  const Vec in = curve.vertex(vertex_index) - curve.vertex(curve.prev(vertex_index));
  const Vec out = curve.vertex(curve.next(vertex_index)) - curve.vertex(vertex_index);
  return angle_between(in, out);
}

double total_curvature(const PolylineCurve& curve) {
  const std::size_t n = curve.size();
  double sum = 0.0;
  if (curve.closed()) {
    for (std::size_t i = 0; i < n; ++i) sum += exterior_angle(curve, i);
  } else {
    for (std::size_t i = 1; i + 1 < n; ++i) sum += exterior_angle(curve, i);
  }
  return sum;
}

TangentPair one_sided_tangents(const PolylineCurve& curve, std::size_t vertex_index) {
  if (vertex_index >= curve.size()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  if (!curve.closed() && (vertex_index == 0 || vertex_index + 1 == curve.size())) {
    throw Error(ErrorCode::no_exterior_angle, "endpoint of an open curve");
  }
  const Vec in = curve.vertex(vertex_index) - curve.vertex(curve.prev(vertex_index));
  const Vec out = curve.vertex(curve.next(vertex_index)) - curve.vertex(vertex_index);
  return TangentPair{out.normalized(), in.normalized()};
}

Vec chord_direction(const PolylineCurve& curve, std::size_t i, std::size_t j) {
  if (i >= j || j >= curve.size()) {
    throw Error(ErrorCode::index_order, "chord_direction requires i < j < n");
  }
  const Vec chord = curve.vertex(j) - curve.vertex(i);
  const double len = chord.norm();
  const double diam = diameter(curve);
  if (!(len > 1e-12 * diam)) throw Error(ErrorCode::degenerate_chord, "coincident chord endpoints");
  return chord / len;
}

double arc_total_curvature(const PolylineCurve& curve, std::size_t a, std::size_t b) {
  if (a >= b || b >= curve.size()) throw Error(ErrorCode::index_order, "arc requires a < b < n");
  double sum = 0.0;
  for (std::size_t k = a + 1; k < b; ++k) sum += exterior_angle(curve, k);
  return sum;
}

double arc_length(const PolylineCurve& curve, std::size_t a, std::size_t b) {
  if (a > b || b >= curve.size()) throw Error(ErrorCode::index_order, "arc requires a <= b < n");
  double sum = 0.0;
  for (std::size_t k = a; k < b; ++k) sum += (curve.vertex(k + 1) - curve.vertex(k)).norm();
  return sum;
}

ChordAngleCheck chord_angle_bound_check(const PolylineCurve& curve, std::size_t a, std::size_t x,
                                        std::size_t y, std::size_t b, double tol) {
  if (!(a < x && x <= y && y < b) || b >= curve.size()) {
    throw Error(ErrorCode::index_order, "chord_angle_bound_check requires a < x <= y < b < n");
  }
  const Vec t_ax = chord_direction(curve, a, x);
  const Vec t_yb = chord_direction(curve, y, b);
  const double angle = angle_between(t_ax, t_yb);
  const double tc = arc_total_curvature(curve, a, b);
  const double slack = tc - angle;
  return ChordAngleCheck{slack >= -tol, angle, tc, slack};
}

ChordLengthCheck chord_length_bound_check(const PolylineCurve& curve, std::size_t a, std::size_t b,
                                          double tol) {
  const double kappa = arc_total_curvature(curve, a, b);
  const double chord = (curve.vertex(b) - curve.vertex(a)).norm();
  const double len = arc_length(curve, a, b);
  const double ratio = len / chord;
  if (kappa >= kPi / 4.0) {
    return ChordLengthCheck{BoundStatus::not_applicable, kappa, ratio,
                            std::numeric_limits<double>::quiet_NaN()};
  }
  const double bound = 1.0 / std::cos(2.0 * kappa);
  const auto status = len <= chord * bound + tol ? BoundStatus::holds : BoundStatus::violated;
  return ChordLengthCheck{status, kappa, ratio, bound};
}

double arclength(const PolylineCurve& curve) {
  double sum = 0.0;
  for (std::size_t i = 0; i < curve.edge_count(); ++i) sum += curve.edge(i).norm();
  return sum;
}

double diameter(const PolylineCurve& curve) { return coords_diameter(curve.coords()); }

double rectifiability_ratio(const PolylineCurve& curve) {
  return diameter(curve) * total_curvature(curve) / arclength(curve);
}

namespace {

// Closest distance between segments [p0, p1] and [q0, q1] in any dimension.
double segment_segment_distance(const Vec& p0, const Vec& p1, const Vec& q0, const Vec& q1) {
  const Vec d1 = p1 - p0;
  const Vec d2 = q1 - q0;
  const Vec r = p0 - q0;
  const double a = d1.squaredNorm();
  const double e = d2.squaredNorm();
  const double f = d2.dot(r);
  const double c = d1.dot(r);
  const double b = d1.dot(d2);
  const double denom = a * e - b * b;
  double s = denom > 1e-300 * a * e ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
  double t = (b * s + f) / e;
  if (t < 0.0) {
    t = 0.0;
    s = std::clamp(-c / a, 0.0, 1.0);
  } else if (t > 1.0) {
    t = 1.0;
    s = std::clamp((b - c) / a, 0.0, 1.0);
  }
  return (p0 + s * d1 - (q0 + t * d2)).norm();
}

}  // namespace

double min_nonadjacent_edge_distance(const PolylineCurve& curve) {
  const std::size_t m = curve.edge_count();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t i1 = curve.next(i);
    for (std::size_t j = i + 1; j < m; ++j) {
      const std::size_t j1 = curve.next(j);
      if (j == i1 || j1 == i) continue;
      best = std::min(best, segment_segment_distance(curve.vertex(i), curve.vertex(i1),
                                                     curve.vertex(j), curve.vertex(j1)));
    }
  }
  return best;
}

PolylineCurve refine_to_tolerance(const CurveSampler& sampler, bool closed, double tc_tol,
                                  const RefinementOptions& options) {
  if (!(tc_tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tc_tol must be positive");
  auto build = [&](std::size_t count) {
    std::vector<Vec> pts;
    pts.reserve(count + 1);
    if (closed) {
      for (std::size_t k = 0; k < count; ++k) pts.push_back(sampler(double(k) / double(count)));
    } else {
      for (std::size_t k = 0; k <= count; ++k) pts.push_back(sampler(double(k) / double(count)));
    }
    return PolylineCurve::from_points(pts, closed);
  };

  std::size_t count = std::max<std::size_t>(options.initial_vertices, closed ? 3 : 2);
  PolylineCurve current = build(count);
  double tc = total_curvature(current);
  for (int doubling = 0; doubling < options.max_doublings; ++doubling) {
    count *= 2;
    PolylineCurve refined = build(count);
    const double tc_refined = total_curvature(refined);
    // Dyadic refinement inscribes the previous polygon; its total curvature
    // cannot drop beyond rounding.
    if (tc_refined < tc - 1e-9 * std::max(1.0, tc)) {
      throw Error(ErrorCode::refinement_failure, "total curvature decreased under refinement");
    }
    const double change = tc_refined - tc;
    current = std::move(refined);
    tc = tc_refined;
    if (change < tc_tol) return current;
  }
  throw Error(ErrorCode::refinement_failure, "total curvature did not converge");
}

}  // namespace curvlab
