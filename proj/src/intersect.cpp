#include "curvlab/intersect.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <limits>

namespace curvlab {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kOrient3dBound = 7.7715611723761027e-16;  // (7 + 56 eps) eps
constexpr double kOrient2dBound = 3.3306690738754716e-16;  // (3 + 16 eps) eps

int sign_of(const Rational& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

int orient3d_exact(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  std::array<std::array<Rational, 3>, 3> m;
  for (int k = 0; k < 3; ++k) {
    const Rational ak(a[k]);
    m[0][std::size_t(k)] = Rational(b[k]) - ak;
    m[1][std::size_t(k)] = Rational(c[k]) - ak;
    m[2][std::size_t(k)] = Rational(d[k]) - ak;
  }
  const Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) +
                       m[0][1] * (m[1][2] * m[2][0] - m[1][0] * m[2][2]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return sign_of(det);
}

std::pair<int, int> plane_axes(int axis) { return {(axis + 1) % 3, (axis + 2) % 3}; }

}  // namespace

int orient3d(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  const Vec3 u = b - a, v = c - a, w = d - a;
  const double t0 = v.y() * w.z(), t1 = v.z() * w.y();
  const double t2 = v.z() * w.x(), t3 = v.x() * w.z();
  const double t4 = v.x() * w.y(), t5 = v.y() * w.x();
  const double det = u.x() * (t0 - t1) + u.y() * (t2 - t3) + u.z() * (t4 - t5);
  const double perm = std::abs(u.x()) * (std::abs(t0) + std::abs(t1)) +
                      std::abs(u.y()) * (std::abs(t2) + std::abs(t3)) +
                      std::abs(u.z()) * (std::abs(t4) + std::abs(t5));
  const double bound = kOrient3dBound * perm;
  if (det > bound) return 1;
  if (det < -bound) return -1;
  return orient3d_exact(a, b, c, d);
}

int orient2d(const Vec3& a, const Vec3& b, const Vec3& c, int axis) {
  const auto [i, j] = plane_axes(axis);
  const double l = (b[i] - a[i]) * (c[j] - a[j]);
  const double r = (b[j] - a[j]) * (c[i] - a[i]);
  const double det = l - r;
  const double bound = kOrient2dBound * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (det < -bound) return -1;
  const Rational ai(a[i]), aj(a[j]);
  const Rational ex = (Rational(b[i]) - ai) * (Rational(c[j]) - aj) - (Rational(b[j]) - aj) * (Rational(c[i]) - ai);
  return sign_of(ex);
}

namespace {

// q on the closed segment pr, given that p, q, r are collinear.
bool on_segment(const Vec3& p, const Vec3& q, const Vec3& r, int axis) {
  const auto [i, j] = plane_axes(axis);
  return std::min(p[i], r[i]) <= q[i] && q[i] <= std::max(p[i], r[i]) && std::min(p[j], r[j]) <= q[j] &&
         q[j] <= std::max(p[j], r[j]);
}

bool segments_intersect_2d(const Vec3& p, const Vec3& q, const Vec3& r, const Vec3& s, int axis) {
  const int o1 = orient2d(p, q, r, axis);
  const int o2 = orient2d(p, q, s, axis);
  const int o3 = orient2d(r, s, p, axis);
  const int o4 = orient2d(r, s, q, axis);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p, r, q, axis)) return true;
  if (o2 == 0 && on_segment(p, s, q, axis)) return true;
  if (o3 == 0 && on_segment(r, p, s, axis)) return true;
  if (o4 == 0 && on_segment(r, q, s, axis)) return true;
  return false;
}

bool point_in_triangle_2d(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c, int axis) {
  const int s1 = orient2d(a, b, p, axis);
  const int s2 = orient2d(b, c, p, axis);
  const int s3 = orient2d(c, a, p, axis);
  const bool neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(neg && pos);
}

int dominant_axis(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 n = (b - a).cross(c - a).cwiseAbs();
  int axis = 0;
  if (n[1] > n[axis]) axis = 1;
  if (n[2] > n[axis]) axis = 2;
  return axis;
}

bool coplanar_triangles_intersect(const std::array<Vec3, 3>& t, const std::array<Vec3, 3>& s) {
  const int axis = dominant_axis(t[0], t[1], t[2]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (segments_intersect_2d(t[std::size_t(i)], t[std::size_t((i + 1) % 3)], s[std::size_t(j)],
                                s[std::size_t((j + 1) % 3)], axis)) {
        return true;
      }
    }
  }
  return point_in_triangle_2d(s[0], t[0], t[1], t[2], axis) || point_in_triangle_2d(t[0], s[0], s[1], s[2], axis);
}

bool segment_hits_triangle(const Vec3& p, const Vec3& q, const std::array<Vec3, 3>& t) {
  const int sp = orient3d(t[0], t[1], t[2], p);
  const int sq = orient3d(t[0], t[1], t[2], q);
  if (sp * sq > 0) return false;
  if (sp == 0 && sq == 0) {
    const int axis = dominant_axis(t[0], t[1], t[2]);
    for (int j = 0; j < 3; ++j) {
      if (segments_intersect_2d(p, q, t[std::size_t(j)], t[std::size_t((j + 1) % 3)], axis)) return true;
    }
    return point_in_triangle_2d(p, t[0], t[1], t[2], axis);
  }
  const int s1 = orient3d(p, q, t[0], t[1]);
  const int s2 = orient3d(p, q, t[1], t[2]);
  const int s3 = orient3d(p, q, t[2], t[0]);
  const bool neg = s1 < 0 || s2 < 0 || s3 < 0;
  const bool pos = s1 > 0 || s2 > 0 || s3 > 0;
  return !(neg && pos);
}

}  // namespace

bool triangles_intersect(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                         const Vec3& f) {
  const std::array<Vec3, 3> t{a, b, c};
  const std::array<Vec3, 3> s{d, e, f};
  const int sd = orient3d(a, b, c, d), se = orient3d(a, b, c, e), sf = orient3d(a, b, c, f);
  if ((sd > 0 && se > 0 && sf > 0) || (sd < 0 && se < 0 && sf < 0)) return false;
  const int sa = orient3d(d, e, f, a), sb = orient3d(d, e, f, b), sc = orient3d(d, e, f, c);
  if ((sa > 0 && sb > 0 && sc > 0) || (sa < 0 && sb < 0 && sc < 0)) return false;
  if (sd == 0 && se == 0 && sf == 0) return coplanar_triangles_intersect(t, s);
  for (int i = 0; i < 3; ++i) {
    if (segment_hits_triangle(t[std::size_t(i)], t[std::size_t((i + 1) % 3)], s)) return true;
    if (segment_hits_triangle(s[std::size_t(i)], s[std::size_t((i + 1) % 3)], t)) return true;
  }
  return false;
}

namespace {

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

double segment_distance(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
  const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
  double s = 0.0, t = 0.0;
  if (a <= 0.0 && e <= 0.0) return r.norm();
  if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = d1.dot(r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = d1.dot(d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return ((p1 + s * d1) - (p2 + t * d2)).norm();
}

}  // namespace

double triangle_distance(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                         const Vec3& f) {
  if (triangles_intersect(a, b, c, d, e, f)) return 0.0;
  const std::array<Vec3, 3> t{a, b, c};
  const std::array<Vec3, 3> s{d, e, f};
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    best = std::min(best, (closest_on_triangle(t[std::size_t(i)], d, e, f) - t[std::size_t(i)]).norm());
    best = std::min(best, (closest_on_triangle(s[std::size_t(i)], a, b, c) - s[std::size_t(i)]).norm());
    for (int j = 0; j < 3; ++j) {
      best = std::min(best, segment_distance(t[std::size_t(i)], t[std::size_t((i + 1) % 3)], s[std::size_t(j)],
                                             s[std::size_t((j + 1) % 3)]));
    }
  }
  return best;
}

namespace {

struct Box {
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = Vec3::Constant(-std::numeric_limits<double>::infinity());

  void grow(const Vec3& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  void grow(const Box& b) {
    lo = lo.cwiseMin(b.lo);
    hi = hi.cwiseMax(b.hi);
  }
  double distance(const Box& o) const {
    const Vec3 gap = (o.lo - hi).cwiseMax(lo - o.hi).cwiseMax(0.0);
    return gap.norm();
  }
};

struct Node {
  Box box;
  int left = -1;
  int right = -1;
  int begin = 0;
  int end = 0;
  bool leaf() const { return left < 0; }
};

class Bvh {
 public:
  explicit Bvh(const TriangleMesh& mesh) : mesh_(mesh) {
    const std::size_t n = mesh.triangles.size();
    order_.resize(n);
    boxes_.resize(n);
    centroids_.resize(n);
    for (std::size_t t = 0; t < n; ++t) {
      order_[t] = int(t);
      for (int v : mesh.triangles[t]) boxes_[t].grow(mesh.vertices[std::size_t(v)]);
      centroids_[t] = (boxes_[t].lo + boxes_[t].hi) * 0.5;
    }
    build(0, int(n));
  }

  bool share_vertex(int s, int t) const {
    for (int a : mesh_.triangles[std::size_t(s)]) {
      for (int b : mesh_.triangles[std::size_t(t)]) {
        if (a == b) return true;
      }
    }
    return false;
  }

  std::array<Vec3, 3> corners(int t) const {
    const auto& tri = mesh_.triangles[std::size_t(t)];
    return {mesh_.vertices[std::size_t(tri[0])], mesh_.vertices[std::size_t(tri[1])],
            mesh_.vertices[std::size_t(tri[2])]};
  }

  template <typename F>
  void overlapping_pairs(double tol, F&& visit) const {
    pairs(0, 0, tol, visit);
  }

  double min_separation() const {
    double best = std::numeric_limits<double>::infinity();
    separation(0, 0, best);
    return best;
  }

 private:
  int build(int begin, int end) {
    Node node;
    node.begin = begin;
    node.end = end;
    Box cbox;
    for (int k = begin; k < end; ++k) {
      node.box.grow(boxes_[std::size_t(order_[std::size_t(k)])]);
      cbox.grow(centroids_[std::size_t(order_[std::size_t(k)])]);
    }
    const int id = int(nodes_.size());
    nodes_.push_back(node);
    if (end - begin <= 4) return id;
    int axis = 0;
    const Vec3 ext = cbox.hi - cbox.lo;
    if (ext[1] > ext[axis]) axis = 1;
    if (ext[2] > ext[axis]) axis = 2;
    const int mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end, [&](int x, int y) {
      return centroids_[std::size_t(x)][axis] < centroids_[std::size_t(y)][axis];
    });
    const int l = build(begin, mid);
    const int r = build(mid, end);
    nodes_[std::size_t(id)].left = l;
    nodes_[std::size_t(id)].right = r;
    return id;
  }

  template <typename F>
  void pairs(int a, int b, double tol, F& visit) const {
    const Node& A = nodes_[std::size_t(a)];
    const Node& B = nodes_[std::size_t(b)];
    if (A.box.distance(B.box) > tol) return;
    if (A.leaf() && B.leaf()) {
      for (int i = A.begin; i < A.end; ++i) {
        for (int j = (a == b ? i + 1 : B.begin); j < B.end; ++j) {
          const int s = order_[std::size_t(i)];
          const int t = order_[std::size_t(j)];
          if (boxes_[std::size_t(s)].distance(boxes_[std::size_t(t)]) > tol) continue;
          visit(std::min(s, t), std::max(s, t));
        }
      }
      return;
    }
    if (a == b) {
      pairs(A.left, A.left, tol, visit);
      pairs(A.right, A.right, tol, visit);
      pairs(A.left, A.right, tol, visit);
    } else if (B.leaf() || (!A.leaf() && A.end - A.begin >= B.end - B.begin)) {
      pairs(A.left, b, tol, visit);
      pairs(A.right, b, tol, visit);
    } else {
      pairs(a, B.left, tol, visit);
      pairs(a, B.right, tol, visit);
    }
  }

  void separation(int a, int b, double& best) const {
    const Node& A = nodes_[std::size_t(a)];
    const Node& B = nodes_[std::size_t(b)];
    if (A.box.distance(B.box) >= best) return;
    if (A.leaf() && B.leaf()) {
      for (int i = A.begin; i < A.end; ++i) {
        for (int j = (a == b ? i + 1 : B.begin); j < B.end; ++j) {
          const int s = order_[std::size_t(i)];
          const int t = order_[std::size_t(j)];
          if (share_vertex(s, t) || boxes_[std::size_t(s)].distance(boxes_[std::size_t(t)]) >= best) continue;
          const auto p = corners(s);
          const auto q = corners(t);
          best = std::min(best, triangle_distance(p[0], p[1], p[2], q[0], q[1], q[2]));
        }
      }
      return;
    }
    if (a == b) {
      separation(A.left, A.left, best);
      separation(A.right, A.right, best);
      separation(A.left, A.right, best);
      return;
    }
    std::array<std::pair<int, int>, 2> next;
    if (B.leaf() || (!A.leaf() && A.end - A.begin >= B.end - B.begin)) {
      next = {{{A.left, b}, {A.right, b}}};
    } else {
      next = {{{a, B.left}, {a, B.right}}};
    }
    const double d0 = nodes_[std::size_t(next[0].first)].box.distance(nodes_[std::size_t(next[0].second)].box);
    const double d1 = nodes_[std::size_t(next[1].first)].box.distance(nodes_[std::size_t(next[1].second)].box);
    if (d1 < d0) std::swap(next[0], next[1]);
    separation(next[0].first, next[0].second, best);
    separation(next[1].first, next[1].second, best);
  }

  const TriangleMesh& mesh_;
  std::vector<int> order_;
  std::vector<Box> boxes_;
  std::vector<Vec3> centroids_;
  std::vector<Node> nodes_;
};

}  // namespace

SelfIntersectionReport self_intersection_report(const TriangleMesh& mesh) {
  SelfIntersectionReport rep;
  if (mesh.triangles.size() < 2) {
    rep.min_separation = std::numeric_limits<double>::infinity();
    return rep;
  }
  const Bvh bvh(mesh);
  const double tol = 1e-12 * mesh.scale();
  bvh.overlapping_pairs(tol, [&](int s, int t) {
    if (bvh.share_vertex(s, t)) return;
    const auto p = bvh.corners(s);
    const auto q = bvh.corners(t);
    if (triangles_intersect(p[0], p[1], p[2], q[0], q[1], q[2]) ||
        triangle_distance(p[0], p[1], p[2], q[0], q[1], q[2]) < tol) {
      rep.intersecting_pairs.emplace_back(s, t);
    }
  });
  std::sort(rep.intersecting_pairs.begin(), rep.intersecting_pairs.end());
  rep.min_separation = bvh.min_separation();
  return rep;
}

}  // namespace curvlab
