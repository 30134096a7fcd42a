#include "curvlab/generators.hpp"

#include <cmath>
#include <random>
#include <string>

namespace curvlab::gen {

Plane Plane::xy(int dim) {
  Plane p{Vec::Zero(dim), Vec::Zero(dim)};
  p.u[0] = 1.0;
  p.w[1] = 1.0;
  return p;
}

PolylineCurve circle(std::size_t n, double radius, const Vec& center, const Plane& plane) {
  if (n < 3) throw Error(ErrorCode::invalid_argument, "circle needs n >= 3");
  if (!(radius > 0.0)) throw Error(ErrorCode::invalid_argument, "radius must be positive");
  if (center.size() != plane.u.size() || plane.u.size() != plane.w.size()) {
    throw Error(ErrorCode::invalid_argument, "circle center and plane dimensions differ");
  }
  std::vector<Vec> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * double(k) / double(n);
    pts.push_back(center + radius * (std::cos(t) * plane.u + std::sin(t) * plane.w));
  }
  return PolylineCurve::from_points(pts, true);
}

PolylineCurve convex_polygon(std::size_t vertex_count, const std::vector<double>& radii) {
  if (vertex_count < 3 || radii.empty()) {
    throw Error(ErrorCode::invalid_argument, "convex_polygon needs >= 3 vertices and radii");
  }
  std::vector<Vec> pts;
  for (std::size_t k = 0; k < vertex_count; ++k) {
    const double t = kTwoPi * double(k) / double(vertex_count);
    const double rad = radii[k % radii.size()];
    if (!(rad > 0.0)) throw Error(ErrorCode::invalid_argument, "radii must be positive");
    Vec p = Vec::Zero(3);
    p[0] = rad * std::cos(t);
    p[1] = rad * std::sin(t);
    pts.push_back(p);
  }
  const std::size_t n = pts.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec& a = pts[(k + n - 1) % n];
    const Vec& b = pts[k];
    const Vec& c = pts[(k + 1) % n];
    const double turn = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
    if (!(turn > 0.0)) throw Error(ErrorCode::invalid_argument, "radius profile is not convex");
  }
  return PolylineCurve::from_points(pts, true);
}

PolylineCurve doubled_circle(std::size_t n, double eps) {
  if (n < 3) throw Error(ErrorCode::invalid_argument, "doubled_circle needs n >= 3");
  std::vector<Vec> pts;
  pts.reserve(2 * n);
  for (std::size_t k = 0; k < 2 * n; ++k) {
    // Vertex k sits at the angle of the k-th regular n-gon vertex, so eps = 0
    // repeats the polygon exactly.
    const double t = kTwoPi * double(k % n) / double(n) + (k >= n ? kTwoPi : 0.0);
    const double rad = 1.0 + eps * 0.5 * (1.0 + std::cos(0.5 * t));
    Vec p(3);
    p << rad * std::cos(t), rad * std::sin(t), eps * 0.5 * std::sin(0.5 * t);
    pts.push_back(p);
  }
  return PolylineCurve::from_points(pts, true);
}

namespace {

double moebius_circumradius(std::size_t n, double tilt, double sep) {
  return (1.0 + sep) / (std::cos(kPi / double(n)) * std::cos(tilt));
}

}  // namespace

Vec moebius_shadow_center(std::size_t polygon_n, double tilt, double sep) {
  Vec c = Vec::Zero(3);
  c[1] = moebius_circumradius(polygon_n, tilt, sep) * std::cos(tilt);
  return c;
}

PolylineCurve moebius_boundary(std::size_t polygon_n, double tilt, double sep) {
  if (polygon_n < 3) throw Error(ErrorCode::invalid_argument, "moebius_boundary needs n >= 3");
  if (!(tilt > 0.0) || !(sep > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "moebius_boundary needs tilt > 0 and sep > 0");
  }
  const double R = moebius_circumradius(polygon_n, tilt, sep);
  std::vector<Vec> pts;
  pts.reserve(2 * polygon_n);
  for (int copy = 0; copy < 2; ++copy) {
    const double angle = copy == 0 ? tilt : -tilt;
    for (std::size_t k = 0; k < polygon_n; ++k) {
      const double t = kTwoPi * double(k) / double(polygon_n);
      const double x = R * std::sin(t);
      const double y = R * (1.0 - std::cos(t));
      Vec p(3);
      p << x, y * std::cos(angle), y * std::sin(angle);
      if (copy == 1 && k == 0) p << 0.0, sep, 0.0;
      pts.push_back(p);
    }
  }
  PolylineCurve curve = PolylineCurve::from_points(pts, true);
  const double tc = total_curvature(curve);
  if (!(tc < 2.0 * kTwoPi)) {
    throw Error(ErrorCode::invalid_argument,
                "moebius_boundary parameters give total curvature " + std::to_string(tc) +
                    " >= 4 pi");
  }
  if (!(min_nonadjacent_edge_distance(curve) > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "moebius_boundary parameters give a non-embedded curve");
  }
  return curve;
}

PolylineCurve torus_knot(int p, int q, std::size_t n, double R, double r) {
  if (n < 3 || p == 0 || q == 0 || !(R > r) || !(r > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "torus_knot needs n >= 3, p, q != 0, R > r > 0");
  }
  std::vector<Vec> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = kTwoPi * double(k) / double(n);
    const double rad = R + r * std::cos(q * t);
    Vec v(3);
    v << rad * std::cos(p * t), rad * std::sin(p * t), r * std::sin(q * t);
    pts.push_back(v);
  }
  return PolylineCurve::from_points(pts, true);
}

namespace {

struct TrigCoefficients {
  // cos_coef[k][d], sin_coef[k][d] for harmonic k + 1.
  std::vector<Vec> cos_coef;
  std::vector<Vec> sin_coef;
};

TrigCoefficients draw_trig(std::uint64_t seed, int harmonics, double amplitude, int dim) {
  if (harmonics < 0 || dim < 2) {
    throw Error(ErrorCode::invalid_argument, "random curve needs harmonics >= 0 and dim >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigCoefficients c;
  for (int k = 1; k <= harmonics; ++k) {
    Vec a(dim);
    Vec b(dim);
    for (int d = 0; d < dim; ++d) {
      a[d] = amplitude / k * unit(rng);
      b[d] = amplitude / k * unit(rng);
    }
    c.cos_coef.push_back(a);
    c.sin_coef.push_back(b);
  }
  return c;
}

Vec eval_trig(const TrigCoefficients& c, double t, int dim) {
  Vec x = Vec::Zero(dim);
  x[0] = std::cos(t);
  x[1] = std::sin(t);
  for (std::size_t k = 0; k < c.cos_coef.size(); ++k) {
    const double kt = double(k + 1) * t;
    x += std::cos(kt) * c.cos_coef[k] + std::sin(kt) * c.sin_coef[k];
  }
  return x;
}

}  // namespace

PolylineCurve random_trig_curve(std::uint64_t seed, int harmonics, double amplitude,
                                std::size_t n, int dim) {
  const auto c = draw_trig(seed, harmonics, amplitude, dim);
  std::vector<Vec> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) pts.push_back(eval_trig(c, kTwoPi * double(k) / double(n), dim));
  return PolylineCurve::from_points(pts, true);
}

PolylineCurve random_open_curve(std::uint64_t seed, int harmonics, double amplitude,
                                std::size_t n, int dim) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "open curve needs n >= 2");
  const auto c = draw_trig(seed, harmonics, amplitude, dim);
  std::vector<Vec> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts.push_back(eval_trig(c, 1.5 * kPi * double(k) / double(n - 1), dim));
  }
  return PolylineCurve::from_points(pts, false);
}

std::pair<PolylineCurve, PolylineCurve> circle_pair(double radius1, double radius2, double gap,
                                                    std::size_t n) {
  if (!(gap > 0.0)) throw Error(ErrorCode::invalid_argument, "circle_pair needs gap > 0");
  Vec c1 = Vec::Zero(3);
  Vec c2 = Vec::Zero(3);
  c1[2] = -0.5 * gap;
  c2[2] = 0.5 * gap;
  return {circle(n, radius1, c1), circle(n, radius2, c2)};
}

PolylineCurve round_corners(const PolylineCurve& curve, double radius, int segments) {
  if (!(radius > 0.0) || segments < 1) {
    throw Error(ErrorCode::invalid_argument, "round_corners needs radius > 0 and segments >= 1");
  }
  const std::size_t n = curve.size();
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    const bool endpoint = !curve.closed() && (i == 0 || i + 1 == n);
    const Vec a = curve.vertex(i);
    if (endpoint) {
      out.push_back(a);
      continue;
    }
    const Vec in = a - curve.vertex(curve.prev(i));
    const Vec outv = curve.vertex(curve.next(i)) - a;
    const double theta = angle_between(in, outv);
    if (theta < 1e-12) {
      out.push_back(a);
      continue;
    }
    if (theta > kPi - 1e-9) throw Error(ErrorCode::invalid_argument, "cannot round a cusp");
    const double tangent = radius * std::tan(0.5 * theta);
    if (!(tangent < 0.5 * in.norm()) || !(tangent < 0.5 * outv.norm())) {
      throw Error(ErrorCode::invalid_argument,
                  "fillet radius too large at vertex " + std::to_string(i));
    }
    const Vec e_in = in.normalized();
    const Vec e_out = outv.normalized();
    const Vec t1 = a - tangent * e_in;
    const Vec t2 = a + tangent * e_out;
    const Vec center = a + (radius / std::cos(0.5 * theta)) * (e_out - e_in).normalized();
    const Vec v1 = t1 - center;
    const Vec v2 = t2 - center;
    const double s = std::sin(theta);
    for (int k = 0; k <= segments; ++k) {
      const double f = double(k) / double(segments);
      out.push_back(center + (std::sin((1.0 - f) * theta) * v1 + std::sin(f * theta) * v2) / s);
    }
  }
  return PolylineCurve::from_points(out, curve.closed());
}

PolylineCurve unit_square() {
  std::vector<Vec> pts(4, Vec::Zero(3));
  pts[1] << 1.0, 0.0, 0.0;
  pts[2] << 1.0, 1.0, 0.0;
  pts[3] << 0.0, 1.0, 0.0;
  return PolylineCurve::from_points(pts, true);
}

}  // namespace curvlab::gen
