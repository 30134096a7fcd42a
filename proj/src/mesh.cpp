#include "curvlab/mesh.hpp"

#include <Eigen/SVD>

#include <map>
#include <queue>
#include <set>

namespace curvlab {

const char* to_string(Topology t) {
  switch (t) {
    case Topology::disk: return "disk";
    case Topology::annulus: return "annulus";
    case Topology::moebius: return "moebius";
  }
  return "unknown";
}

Topology topology_from_string(const std::string& s) {
  if (s == "disk") return Topology::disk;
  if (s == "annulus") return Topology::annulus;
  if (s == "moebius") return Topology::moebius;
  throw Error(ErrorCode::invalid_argument, "unknown topology '" + s + "'");
}

std::size_t loop_count(Topology t) { return t == Topology::annulus ? 2 : 1; }

double TriangleMesh::scale() const {
  if (vertices.empty()) return 0.0;
  Vec3 lo = vertices.front();
  Vec3 hi = lo;
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  return (hi - lo).norm();
}

std::vector<bool> TriangleMesh::boundary_mask() const {
  std::vector<bool> mask(vertices.size(), false);
  for (const auto& loop : boundary_loops) {
    for (int v : loop) mask[std::size_t(v)] = true;
  }
  return mask;
}

PolylineCurve TriangleMesh::loop_curve(std::size_t k) const {
  const auto& loop = boundary_loops.at(k);
  PointMatrix m(3, Eigen::Index(loop.size()));
  for (std::size_t i = 0; i < loop.size(); ++i) m.col(Eigen::Index(i)) = vertices[std::size_t(loop[i])];
  return PolylineCurve(std::move(m), true);
}

std::vector<PolylineCurve> TriangleMesh::boundary_curves() const {
  std::vector<PolylineCurve> out;
  for (std::size_t k = 0; k < boundary_loops.size(); ++k) out.push_back(loop_curve(k));
  return out;
}

double triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

double triangle_area(const TriangleMesh& mesh, const Triangle& t) {
  return triangle_area(mesh.vertices[std::size_t(t[0])], mesh.vertices[std::size_t(t[1])],
                       mesh.vertices[std::size_t(t[2])]);
}

namespace {

Edge undirected(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// For each undirected edge, the triangles using it and the direction in which
// each traverses it (+1 when it goes from the smaller index to the larger).
struct EdgeUse {
  int tri;
  int dir;
};

std::map<Edge, std::vector<EdgeUse>> edge_uses(const TriangleMesh& mesh) {
  std::map<Edge, std::vector<EdgeUse>> uses;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      const int a = tri[std::size_t(k)];
      const int b = tri[std::size_t((k + 1) % 3)];
      uses[undirected(a, b)].push_back({int(t), a < b ? 1 : -1});
    }
  }
  return uses;
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::invalid_mesh, msg); }

}  // namespace

bool has_consistent_orientation(const TriangleMesh& mesh) {
  const auto uses = edge_uses(mesh);
  std::vector<std::vector<std::pair<int, bool>>> adj(mesh.triangles.size());
  for (const auto& [e, u] : uses) {
    if (u.size() != 2) continue;
    // same == true: the two triangles traverse the edge the same way, so one
    // of them must be flipped relative to the other.
    const bool same = u[0].dir == u[1].dir;
    adj[std::size_t(u[0].tri)].push_back({u[1].tri, same});
    adj[std::size_t(u[1].tri)].push_back({u[0].tri, same});
  }
  std::vector<int> flip(mesh.triangles.size(), -1);
  for (std::size_t s = 0; s < flip.size(); ++s) {
    if (flip[s] != -1) continue;
    flip[s] = 0;
    std::queue<int> q;
    q.push(int(s));
    while (!q.empty()) {
      const int t = q.front();
      q.pop();
      for (auto [o, same] : adj[std::size_t(t)]) {
        const int want = flip[std::size_t(t)] ^ int(same);
        if (flip[std::size_t(o)] == -1) {
          flip[std::size_t(o)] = want;
          q.push(o);
        } else if (flip[std::size_t(o)] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<Edge> orientation_cocycle(const TriangleMesh& mesh) {
  std::vector<Edge> out;
  for (const auto& [e, u] : edge_uses(mesh)) {
    if (u.size() == 2 && u[0].dir == u[1].dir) out.push_back(e);
  }
  return out;
}

void validate(const TriangleMesh& mesh) {
  const int nv = int(mesh.vertices.size());
  if (mesh.triangles.empty()) invalid("mesh has no triangles");
  for (const auto& v : mesh.vertices) {
    if (!v.allFinite()) invalid("non-finite vertex coordinate");
  }
  const double s = mesh.scale();
  const double area_floor = 1e-14 * s * s;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int i : tri) {
      if (i < 0 || i >= nv) invalid("triangle " + std::to_string(t) + " has an out-of-range index");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      invalid("triangle " + std::to_string(t) + " repeats a vertex");
    }
    if (!(triangle_area(mesh, tri) > area_floor)) {
      invalid("triangle " + std::to_string(t) + " is degenerate");
    }
  }
  if (mesh.boundary_loops.size() != loop_count(mesh.topology)) {
    invalid(std::string(to_string(mesh.topology)) + " mesh needs " +
            std::to_string(loop_count(mesh.topology)) + " boundary loop(s)");
  }
  std::set<Edge> loop_edges;
  std::set<int> loop_vertices;
  for (const auto& loop : mesh.boundary_loops) {
    if (loop.size() < 3) invalid("boundary loop shorter than 3");
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const int a = loop[i];
      const int b = loop[(i + 1) % loop.size()];
      if (a < 0 || a >= nv) invalid("boundary loop index out of range");
      if (!loop_vertices.insert(a).second) invalid("boundary vertex repeated");
      loop_edges.insert(undirected(a, b));
    }
  }
  std::set<Edge> single;
  for (const auto& [e, u] : edge_uses(mesh)) {
    if (u.size() > 2) invalid("non-manifold edge");
    if (u.size() == 2 && u[0].tri == u[1].tri) invalid("triangle uses an edge twice");
    if (u.size() == 1) single.insert(e);
  }
  if (single != loop_edges) invalid("boundary edges differ from the declared loops");
  const bool expect_orientable = mesh.topology != Topology::moebius;
  if (mesh.orientable != expect_orientable) invalid("orientable flag contradicts topology");
  if (has_consistent_orientation(mesh) != mesh.orientable) {
    invalid("orientable flag contradicts the triangle orientations");
  }
  if (!mesh.orientable) {
    auto cocycle = orientation_cocycle(mesh);
    auto witness = mesh.twist_edges;
    for (auto& e : witness) e = undirected(e[0], e[1]);
    std::sort(witness.begin(), witness.end());
    if (witness != cocycle) invalid("twist_edges witness does not match the orientation cocycle");
  }
}

double surface_area(const TriangleMesh& mesh) {
  double a = 0.0;
  for (const auto& t : mesh.triangles) a += triangle_area(mesh, t);
  return a;
}

namespace {

double angle_sum(const TriangleMesh& mesh, int vertex) {
  double sum = 0.0;
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      if (t[std::size_t(k)] != vertex) continue;
      const Vec3& p = mesh.vertices[std::size_t(vertex)];
      const Vec3& a = mesh.vertices[std::size_t(t[std::size_t((k + 1) % 3)])];
      const Vec3& b = mesh.vertices[std::size_t(t[std::size_t((k + 2) % 3)])];
      sum += angle_between(a - p, b - p);
    }
  }
  return sum;
}

}  // namespace

double vertex_density(const TriangleMesh& mesh, int vertex) {
  if (vertex < 0 || std::size_t(vertex) >= mesh.vertices.size()) {
    throw Error(ErrorCode::invalid_argument, "vertex index out of range");
  }
  return angle_sum(mesh, vertex) / kTwoPi;
}

double angle_defect(const TriangleMesh& mesh, int vertex) {
  if (vertex < 0 || std::size_t(vertex) >= mesh.vertices.size()) {
    throw Error(ErrorCode::invalid_argument, "vertex index out of range");
  }
  return kTwoPi - angle_sum(mesh, vertex);
}

double boundary_turning_angle(const TriangleMesh& mesh, int vertex) {
  for (const auto& loop : mesh.boundary_loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      if (loop[i] != vertex) continue;
      const Vec3& prev = mesh.vertices[std::size_t(loop[(i + loop.size() - 1) % loop.size()])];
      const Vec3& cur = mesh.vertices[std::size_t(vertex)];
      const Vec3& next = mesh.vertices[std::size_t(loop[(i + 1) % loop.size()])];
      return angle_between(cur - prev, next - cur);
    }
  }
  return -1.0;
}

double planarity_residual(const TriangleMesh& mesh) {
  if (mesh.vertices.size() < 3) return 0.0;
  Vec3 c = Vec3::Zero();
  for (const auto& v : mesh.vertices) c += v;
  c /= double(mesh.vertices.size());
  Eigen::MatrixXd m(Eigen::Index(mesh.vertices.size()), 3);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) m.row(Eigen::Index(i)) = (mesh.vertices[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  const Vec3 normal = svd.matrixV().col(2);
  double worst = 0.0;
  for (const auto& v : mesh.vertices) worst = std::max(worst, std::abs((v - c).dot(normal)));
  const double s = mesh.scale();
  return s > 0.0 ? worst / s : 0.0;
}

}  // namespace curvlab
