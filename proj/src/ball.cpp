#include "curvlab/plateau.hpp"
#include "curvlab/projcone.hpp"

#include <array>

namespace curvlab {

namespace {

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection).
Vec3 closest_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;
  const Vec3 bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;
  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;
  const Vec3 cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;
  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;
  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
  }
  const double denom = 1.0 / (va + vb + vc);
  return a + ab * (vb * denom) + ac * (vc * denom);
}

// Area of the part of triangle abc where the affine interpolant of f is
// negative.
double negative_part_area(const std::array<Vec3, 3>& x, const std::array<double, 3>& f) {
  std::array<Vec3, 4> poly;
  int n = 0;
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    if (f[std::size_t(i)] < 0.0) poly[std::size_t(n++)] = x[std::size_t(i)];
    if ((f[std::size_t(i)] < 0.0) != (f[std::size_t(j)] < 0.0)) {
      const double s = f[std::size_t(i)] / (f[std::size_t(i)] - f[std::size_t(j)]);
      poly[std::size_t(n++)] = x[std::size_t(i)] + s * (x[std::size_t(j)] - x[std::size_t(i)]);
    }
  }
  if (n < 3) return 0.0;
  Vec3 sum = Vec3::Zero();
  for (int i = 1; i + 1 < n; ++i) sum += (poly[std::size_t(i)] - poly[0]).cross(poly[std::size_t(i + 1)] - poly[0]);
  return 0.5 * sum.norm();
}

struct BallClipper {
  Vec3 p;
  double r;
  double r2;
  double leaf;

  void clip(const Vec3& a, const Vec3& b, const Vec3& c, BallArea& out) const {
    const double fa = (a - p).squaredNorm() - r2;
    const double fb = (b - p).squaredNorm() - r2;
    const double fc = (c - p).squaredNorm() - r2;
    if (fa <= 0.0 && fb <= 0.0 && fc <= 0.0) {
      out.area += triangle_area(a, b, c);
      return;
    }
    if ((closest_on_triangle(p, a, b, c) - p).squaredNorm() > r2) return;
    const double lab = (b - a).squaredNorm();
    const double lbc = (c - b).squaredNorm();
    const double lca = (a - c).squaredNorm();
    const double longest = std::max({lab, lbc, lca});
    if (longest < leaf * leaf) {
      const double piece = negative_part_area({a, b, c}, {fa, fb, fc});
      out.area += piece;
      out.error_bound += triangle_area(a, b, c);
      return;
    }
    if (longest == lab) {
      const Vec3 m = 0.5 * (a + b);
      clip(a, m, c, out);
      clip(m, b, c, out);
    } else if (longest == lbc) {
      const Vec3 m = 0.5 * (b + c);
      clip(a, b, m, out);
      clip(a, m, c, out);
    } else {
      const Vec3 m = 0.5 * (c + a);
      clip(a, b, m, out);
      clip(m, b, c, out);
    }
  }
};

}  // namespace

BallArea area_in_ball(const TriangleMesh& mesh, const Vec3& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
  const BallClipper clipper{p, r, r * r, 1e-3 * r};
  BallArea out;
  for (const auto& t : mesh.triangles) {
    clipper.clip(mesh.vertices[std::size_t(t[0])], mesh.vertices[std::size_t(t[1])],
                 mesh.vertices[std::size_t(t[2])], out);
  }
  return out;
}

double density_ratio(const TriangleMesh& mesh, const Vec3& p, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
  return area_in_ball(mesh, p, r).area / (kPi * r * r);
}

DensityProfile extended_density_profile(const TriangleMesh& mesh, std::span<const PolylineCurve> curves,
                                        const Vec3& p, const std::vector<double>& radii) {
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1]))) {
      throw Error(ErrorCode::invalid_argument, "radii must be positive and strictly increasing");
    }
  }
  DensityProfile prof;
  prof.p = p;
  prof.radii = radii;
  const Vec pp = p;
  for (double r : radii) {
    const double ball = kPi * r * r;
    double cone = 0.0;
    for (const auto& c : curves) cone += exterior_cone_area_in_ball(c, pp, r);
    const double surf = area_in_ball(mesh, p, r).area / ball;
    prof.theta_surface.push_back(surf);
    prof.theta_cone.push_back(cone / ball);
    prof.theta_total.push_back(surf + cone / ball);
  }
  return prof;
}

DensityProfile extended_density_profile(const TriangleMesh& mesh, const Vec3& p, const std::vector<double>& radii) {
  const auto curves = mesh.boundary_curves();
  return extended_density_profile(mesh, curves, p, radii);
}

}  // namespace curvlab
