#include "curvlab/projcone.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <functional>
#include <numeric>

namespace curvlab {

double SphericalPolyline::length() const {
  return std::accumulate(arc_lengths.begin(), arc_lengths.end(), 0.0);
}

namespace {

void require_projectable(const PolylineCurve& curve, const Vec& p) {
  if (p.size() != curve.dim()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  const double tol = 1e-12 * diameter(curve);
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    if (point_segment_distance(p, curve.vertex(i), curve.vertex(curve.next(i))) <= tol) {
      throw Error(ErrorCode::projection_undefined, "point lies on the curve");
    }
  }
}

// Cone over one edge, in the 2-plane through p spanned by the edge. Rays at
// angle psi from the foot of the perpendicular hit the edge's line at
// distance d / cos(psi); the edge covers psi in [psi_begin, psi_end].
struct EdgeCone {
  bool degenerate = true;
  double d = 0.0;
  double psi_begin = 0.0;
  double psi_end = 0.0;
};

EdgeCone edge_cone(const Vec& a, const Vec& b, const Vec& p) {
  const Vec A = a - p;
  const Vec B = b - p;
  const double la = A.norm();
  const double lb = B.norm();
  EdgeCone cone;
  const double scale = std::max(la, lb);
  if (!(la > 1e-14 * scale) || !(lb > 1e-14 * scale)) return cone;
  const double alpha = angle_between(A, B);
  if (!(alpha > 1e-15) || alpha > kPi - 1e-15) return cone;

  const Vec e1 = A / la;
  const double bx = B.dot(e1);
  const double by = (B - bx * e1).norm();
  // Edge from (la, 0) to (bx, by) in plane coordinates.
  const double ux = bx - la;
  const double uy = by;
  const double ulen = std::hypot(ux, uy);
  double nx = uy / ulen;
  double ny = -ux / ulen;
  double d = nx * la;
  if (d < 0.0) {
    nx = -nx;
    ny = -ny;
    d = -d;
  }
  if (!(d > 1e-14 * scale)) return cone;
  const double phi0 = std::atan2(ny, nx);
  cone.degenerate = false;
  cone.d = d;
  cone.psi_begin = -phi0;
  cone.psi_end = alpha - phi0;
  return cone;
}

// Adaptive Simpson on [a, b] to absolute tolerance eps.
double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol) {
  if (!(b > a)) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = rel_tol * std::max(std::fabs(whole), 1e-300);
  return simpson_step(f, a, b, fa, fm, fb, whole, eps, 50);
}

constexpr double kQuadratureRelTol = 1e-10;

// Angular window, relative to the foot of the perpendicular, where the edge
// is inside B(p, r).
bool inside_window(const EdgeCone& c, double r, double& lo, double& hi) {
  if (!(c.d < r)) return false;
  const double beta = std::acos(c.d / r);
  lo = std::max(c.psi_begin, -beta);
  hi = std::min(c.psi_end, beta);
  return hi > lo;
}

}  // namespace

SphericalPolyline radial_project(const PolylineCurve& curve, const Vec& p) {
  require_projectable(curve, p);
  SphericalPolyline sp;
  sp.center = p;
  sp.closed = curve.closed();
  sp.points.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) sp.points.push_back((curve.vertex(i) - p).normalized());
  sp.arc_lengths.reserve(curve.edge_count());
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    sp.arc_lengths.push_back(
        angle_between(curve.vertex(i) - p, curve.vertex(curve.next(i)) - p));
  }
  return sp;
}

double spherical_length(const SphericalPolyline& sp) { return sp.length(); }

double projected_length(const PolylineCurve& curve, const Vec& p) {
  return radial_project(curve, p).length();
}

ConeDensityReport cone_density(const PolylineCurve& curve, const Vec& p) {
  if (!curve.closed()) throw Error(ErrorCode::unsupported, "cone_density needs a closed curve");
  ConeDensityReport r;
  r.spherical_length = projected_length(curve, p);
  r.density = r.spherical_length / kTwoPi;
  r.bound_tc = total_curvature(curve);
  r.slack = r.bound_tc - r.spherical_length;
  return r;
}

double cone_density(std::span<const PolylineCurve> curves, const Vec& p) {
  double len = 0.0;
  for (const auto& c : curves) len += projected_length(c, p);
  return len / kTwoPi;
}

BoundaryProjectionReport boundary_projection_bound(const PolylineCurve& curve,
                                                   std::size_t vertex_index) {
  if (!curve.closed()) {
    throw Error(ErrorCode::unsupported, "boundary projection bound needs a closed curve");
  }
  if (vertex_index >= curve.size()) throw Error(ErrorCode::invalid_argument, "vertex out of range");
  const Vec p = curve.vertex(vertex_index);
  const std::size_t before = curve.prev(vertex_index);
  const double tol = 1e-12 * diameter(curve);

  BoundaryProjectionReport r;
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    if (i == vertex_index || i == before) continue;
    const Vec a = curve.vertex(i);
    const Vec b = curve.vertex(curve.next(i));
    if (point_segment_distance(p, a, b) <= tol) {
      throw Error(ErrorCode::projection_undefined, "curve passes through the vertex twice");
    }
    r.length += angle_between(a - p, b - p);
  }
  r.tc = total_curvature(curve);
  r.theta = exterior_angle(curve, vertex_index);
  r.slack = r.tc - kPi - r.theta - r.length;
  return r;
}

OpenConeReport open_curve_cone_bound(const PolylineCurve& curve, const Vec& p) {
  if (curve.closed()) throw Error(ErrorCode::unsupported, "open_curve_cone_bound needs an open curve");
  OpenConeReport r;
  r.spherical_length = projected_length(curve, p);
  r.density = r.spherical_length / kTwoPi;
  r.tc = total_curvature(curve);
  r.bound = (r.tc + kPi) / kTwoPi;
  r.slack = r.bound - r.density;
  return r;
}

double exterior_cone_area_in_ball(const PolylineCurve& curve, const Vec& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  if (p.size() != curve.dim()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  double area = 0.0;
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    const EdgeCone c = edge_cone(curve.vertex(i), curve.vertex(curve.next(i)), p);
    double lo = 0.0;
    double hi = 0.0;
    if (c.degenerate || !inside_window(c, r, lo, hi)) continue;
    const double r2 = r * r;
    const double d2 = c.d * c.d;
    area += adaptive_simpson(
        [&](double psi) {
          const double rho = 1.0 / std::cos(psi);
          return std::max(0.0, 0.5 * (r2 - d2 * rho * rho));
        },
        lo, hi, kQuadratureRelTol);
  }
  return area;
}

double cone_area_in_ball(const PolylineCurve& curve, const Vec& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  if (p.size() != curve.dim()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  double area = 0.0;
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    const EdgeCone c = edge_cone(curve.vertex(i), curve.vertex(curve.next(i)), p);
    if (c.degenerate) continue;
    const double r2 = r * r;
    const double d2 = c.d * c.d;
    double lo = 0.0;
    double hi = 0.0;
    if (!inside_window(c, r, lo, hi)) {
      area += 0.5 * r2 * (c.psi_end - c.psi_begin);
      continue;
    }
    // Outside the window the cone is clipped by the sphere.
    area += 0.5 * r2 * ((lo - c.psi_begin) + (c.psi_end - hi));
    area += adaptive_simpson(
        [&](double psi) {
          const double rho = 1.0 / std::cos(psi);
          return 0.5 * d2 * rho * rho;
        },
        lo, hi, kQuadratureRelTol);
  }
  return area;
}

double clipped_projected_length(const PolylineCurve& curve, const Vec& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  double len = 0.0;
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    const EdgeCone c = edge_cone(curve.vertex(i), curve.vertex(curve.next(i)), p);
    double lo = 0.0;
    double hi = 0.0;
    if (c.degenerate || !inside_window(c, r, lo, hi)) continue;
    len += hi - lo;
  }
  return len;
}

double coplanarity_residual(const PolylineCurve& curve, const Vec& p) {
  Eigen::MatrixXd X = curve.coords();
  X.colwise() -= p;
  const double scale = X.colwise().norm().maxCoeff();
  if (!(scale > 0.0)) return 0.0;
  X /= scale;
  if (X.rows() <= 2) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
  const Eigen::MatrixXd U2 = svd.matrixU().leftCols(2);
  const Eigen::MatrixXd residual = X - U2 * (U2.transpose() * X);
  return residual.colwise().norm().maxCoeff();
}

bool locally_convex_about(const PolylineCurve& curve, const Vec& p, double tol) {
  Eigen::MatrixXd X = curve.coords();
  X.colwise() -= p;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU);
  const Eigen::MatrixXd U2 = svd.matrixU().leftCols(2);
  const Eigen::MatrixXd Y = U2.transpose() * X;  // plane coordinates, p at origin
  auto orient = [&](Eigen::Index i, Eigen::Index j, const Eigen::Vector2d& q) {
    const Eigen::Vector2d a = Y.col(i);
    const Eigen::Vector2d b = Y.col(j);
    return (b.x() - a.x()) * (q.y() - a.y()) - (b.y() - a.y()) * (q.x() - a.x());
  };
  const auto n = static_cast<Eigen::Index>(curve.size());
  const Eigen::Index first = curve.closed() ? 0 : 1;
  const Eigen::Index last = curve.closed() ? n : n - 1;
  for (Eigen::Index i = first; i < last; ++i) {
    const Eigen::Index a = (i + n - 1) % n;
    const Eigen::Index b = (i + 1) % n;
    const double side_vertex = orient(a, b, Y.col(i));
    const double side_center = orient(a, b, Eigen::Vector2d::Zero());
    const double scale = (Y.col(b) - Y.col(a)).squaredNorm();
    if (std::fabs(side_vertex) <= tol * scale) continue;
    if (side_vertex * side_center > 0.0) return false;
  }
  return true;
}

}  // namespace curvlab
