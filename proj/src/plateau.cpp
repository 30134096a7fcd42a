#include "curvlab/plateau.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace curvlab {

const char* to_string(StepRule r) { return r == StepRule::fixed ? "fixed" : "backtracking"; }

StepRule step_rule_from_string(const std::string& s) {
  if (s == "fixed") return StepRule::fixed;
  if (s == "backtracking") return StepRule::backtracking;
  throw Error(ErrorCode::invalid_argument, "unknown step rule '" + s + "'");
}

void SolverParams::check() const {
  if (max_iters < 1) throw Error(ErrorCode::invalid_argument, "max_iters must be >= 1");
  if (!(grad_tol > 0.0) || !(area_tol > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "solver tolerances must be positive");
  }
  if (remesh_every < 0) throw Error(ErrorCode::invalid_argument, "remesh_every must be >= 0");
}

namespace {

Vec3 normal_of(const std::vector<Vec3>& x, const Triangle& t) {
  return (x[std::size_t(t[1])] - x[std::size_t(t[0])]).cross(x[std::size_t(t[2])] - x[std::size_t(t[0])]);
}

double area_of(const std::vector<Vec3>& x, const std::vector<Triangle>& tris) {
  double a = 0.0;
  for (const auto& t : tris) a += 0.5 * normal_of(x, t).norm();
  return a;
}

double max_corner_angle(const Vec3& a, const Vec3& b, const Vec3& c) {
  return std::max({angle_between(b - a, c - a), angle_between(a - b, c - b), angle_between(a - c, b - c)});
}

}  // namespace

std::vector<Vec3> area_gradient(const TriangleMesh& mesh) {
  std::vector<Vec3> g(mesh.vertices.size(), Vec3::Zero());
  for (const auto& t : mesh.triangles) {
    const Vec3 n = normal_of(mesh.vertices, t);
    const double len = n.norm();
    if (len == 0.0) continue;
    const Vec3 u = n / len;
    for (int k = 0; k < 3; ++k) {
      const Vec3& x1 = mesh.vertices[std::size_t(t[std::size_t((k + 1) % 3)])];
      const Vec3& x2 = mesh.vertices[std::size_t(t[std::size_t((k + 2) % 3)])];
      g[std::size_t(t[std::size_t(k)])] += 0.5 * u.cross(x2 - x1);
    }
  }
  return g;
}

namespace {

class Solver {
 public:
  Solver(TriangleMesh& mesh, const SolverParams& params) : mesh_(mesh), params_(params) {
    const auto mask = mesh_.boundary_mask();
    slot_.assign(mesh_.vertices.size(), -1);
    for (std::size_t v = 0; v < mask.size(); ++v) {
      if (!mask[v]) {
        slot_[v] = int(interior_.size());
        interior_.push_back(int(v));
      }
    }
    const double s = mesh_.scale();
    area_floor_ = 1e-14 * s * s;
  }

  ConvergenceReport run() {
    ConvergenceReport rep;
    rep.initial_area = area_of(mesh_.vertices, mesh_.triangles);
    double area = rep.initial_area;
    rep.area_history.push_back(area);
    if (interior_.empty()) {
      rep.final_area = area;
      rep.converged = true;
      rep.reason = "grad_tol";
      return rep;
    }
    bool retried_after_remesh = false;
    for (int it = 1; it <= params_.max_iters; ++it) {
      if (params_.remesh_every > 0 && it % params_.remesh_every == 0) {
        rep.edge_flips += remesh(mesh_, params_.seed + std::uint64_t(rep.remesh_passes));
        ++rep.remesh_passes;
        const double a = area_of(mesh_.vertices, mesh_.triangles);
        if (a > area * (1.0 + 1e-12)) throw Error(ErrorCode::solver_degenerate, "remeshing increased the area");
        area = std::min(a, area);
      }
      const auto g = area_gradient(mesh_);
      rep.residual = residual(g, area);
      rep.iterations = it - 1;
      if (rep.residual < params_.grad_tol) {
        rep.converged = true;
        rep.reason = "grad_tol";
        break;
      }
      const std::size_t h = rep.area_history.size();
      if (h > 10 && (rep.area_history[h - 11] - area) <= params_.area_tol * area) {
        rep.converged = true;
        rep.reason = "area_tol";
        break;
      }
      double new_area = area;
      bool ok = try_preconditioned(g, area, new_area);
      if (ok) {
        ++rep.preconditioned_steps;
      } else {
        ok = try_gradient(g, area, new_area);
        if (ok) ++rep.gradient_steps;
      }
      if (!ok) {
        if (!retried_after_remesh) {
          retried_after_remesh = true;
          rep.edge_flips += remesh(mesh_, params_.seed + std::uint64_t(rep.remesh_passes));
          ++rep.remesh_passes;
          area = area_of(mesh_.vertices, mesh_.triangles);
          continue;
        }
        if (min_triangle_area() <= area_floor_ * 1e4) {
          throw Error(ErrorCode::solver_degenerate, "triangles collapsed and remeshing did not recover");
        }
        rep.reason = "stalled";
        rep.iterations = it - 1;
        break;
      }
      retried_after_remesh = false;
      if (new_area > area) throw Error(ErrorCode::solver_degenerate, "accepted step increased the area");
      area = new_area;
      rep.area_history.push_back(area);
      rep.iterations = it;
      if (it == params_.max_iters) rep.reason = "max_iters";
    }
    rep.residual = residual(area_gradient(mesh_), area);
    rep.final_area = area;
    if (rep.reason.empty()) rep.reason = "max_iters";
    return rep;
  }

 private:
  double residual(const std::vector<Vec3>& g, double area) const {
    double s = 0.0;
    for (int v : interior_) s += g[std::size_t(v)].squaredNorm();
    return std::sqrt(s) / std::sqrt(area);
  }

  double min_triangle_area() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& t : mesh_.triangles) m = std::min(m, 0.5 * normal_of(mesh_.vertices, t).norm());
    return m;
  }

  // Candidate positions x + alpha d; accepted when no triangle degenerates or
  // turns over and the area decreases enough.
  bool accept(const std::vector<Vec3>& d, double alpha, double area, double slope, double& new_area) {
    std::vector<Vec3> x = mesh_.vertices;
    for (int v : interior_) x[std::size_t(v)] += alpha * d[std::size_t(v)];
    for (const auto& t : mesh_.triangles) {
      const Vec3 n0 = normal_of(mesh_.vertices, t);
      const Vec3 n1 = normal_of(x, t);
      if (!(0.5 * n1.norm() > area_floor_) || n0.dot(n1) <= 0.0) return false;
    }
    const double a = area_of(x, mesh_.triangles);
    const double armijo = params_.step_rule == StepRule::backtracking ? 1e-4 * alpha * slope : 0.0;
    if (!(a < area && a <= area + armijo)) return false;
    for (int v : interior_) mesh_.vertices[std::size_t(v)] = x[std::size_t(v)];
    new_area = a;
    return true;
  }

  bool line_search(const std::vector<Vec3>& g, const std::vector<Vec3>& d, double alpha, double area,
                   double& new_area) {
    double slope = 0.0;
    for (int v : interior_) slope += g[std::size_t(v)].dot(d[std::size_t(v)]);
    if (!(slope < 0.0)) return false;
    for (int k = 0; k < 40; ++k, alpha *= 0.5) {
      if (accept(d, alpha, area, slope, new_area)) return true;
    }
    return false;
  }

  // Newton-like step with the cotangent Laplacian of the current mesh: the
  // full step moves the interior to the harmonic map with respect to the
  // current metric. Negative cotangent weights are clamped so the system stays
  // positive definite and the direction stays a descent direction.
  bool try_preconditioned(const std::vector<Vec3>& g, double area, double& new_area) {
    const int m = int(interior_.size());
    std::map<std::pair<int, int>, double> w;
    const auto& x = mesh_.vertices;
    for (const auto& t : mesh_.triangles) {
      for (int k = 0; k < 3; ++k) {
        const int c = t[std::size_t(k)];
        const int a = t[std::size_t((k + 1) % 3)];
        const int b = t[std::size_t((k + 2) % 3)];
        const Vec3 ea = x[std::size_t(a)] - x[std::size_t(c)];
        const Vec3 eb = x[std::size_t(b)] - x[std::size_t(c)];
        const double cr = ea.cross(eb).norm();
        if (cr == 0.0) return false;
        w[{std::min(a, b), std::max(a, b)}] += 0.5 * ea.dot(eb) / cr;
      }
    }
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<double> diag(std::size_t(m), 0.0);
    for (auto [e, wij] : w) {
      wij = std::max(wij, 1e-3);
      const int si = slot_[std::size_t(e.first)];
      const int sj = slot_[std::size_t(e.second)];
      if (si >= 0) diag[std::size_t(si)] += wij;
      if (sj >= 0) diag[std::size_t(sj)] += wij;
      if (si >= 0 && sj >= 0) {
        trip.emplace_back(si, sj, -wij);
        trip.emplace_back(sj, si, -wij);
      }
    }
    for (int i = 0; i < m; ++i) trip.emplace_back(i, i, diag[std::size_t(i)]);
    Eigen::SparseMatrix<double> L(m, m);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(L);
    if (ldlt.info() != Eigen::Success) return false;
    Eigen::MatrixXd rhs(m, 3);
    for (int i = 0; i < m; ++i) rhs.row(i) = -g[std::size_t(interior_[std::size_t(i)])].transpose();
    const Eigen::MatrixXd sol = ldlt.solve(rhs);
    if (!sol.allFinite()) return false;
    std::vector<Vec3> d(mesh_.vertices.size(), Vec3::Zero());
    for (int i = 0; i < m; ++i) d[std::size_t(interior_[std::size_t(i)])] = sol.row(i).transpose();
    return line_search(g, d, 1.0, area, new_area);
  }

  bool try_gradient(const std::vector<Vec3>& g, double area, double& new_area) {
    double gmax = 0.0;
    for (int v : interior_) gmax = std::max(gmax, g[std::size_t(v)].norm());
    if (gmax == 0.0) return false;
    double edge = 0.0;
    for (const auto& t : mesh_.triangles) {
      edge += (mesh_.vertices[std::size_t(t[0])] - mesh_.vertices[std::size_t(t[1])]).norm();
    }
    edge /= double(mesh_.triangles.size());
    std::vector<Vec3> d(mesh_.vertices.size(), Vec3::Zero());
    for (int v : interior_) d[std::size_t(v)] = -g[std::size_t(v)];
    return line_search(g, d, 0.25 * edge / gmax, area, new_area);
  }

  TriangleMesh& mesh_;
  const SolverParams& params_;
  std::vector<int> slot_;
  std::vector<int> interior_;
  double area_floor_ = 0.0;
};

struct HalfEdgeSide {
  int tri = -1;
  int opposite = -1;
};

int flip_pass(TriangleMesh& mesh, double area_floor) {
  // Directed edge (a, b) -> triangle containing it and the third vertex.
  std::map<std::pair<int, int>, HalfEdgeSide> side;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& tri = mesh.triangles[t];
    for (int k = 0; k < 3; ++k) {
      side[{tri[std::size_t(k)], tri[std::size_t((k + 1) % 3)]}] = {int(t), tri[std::size_t((k + 2) % 3)]};
    }
  }
  std::vector<bool> touched(mesh.triangles.size(), false);
  std::vector<std::pair<int, int>> edges;
  for (const auto& [e, s] : side) edges.push_back(e);
  int flips = 0;
  auto& x = mesh.vertices;
  for (const auto& [a, b] : edges) {
    const auto it1 = side.find({a, b});
    const auto it2 = side.find({b, a});
    // Only consistently oriented interior edges; edges traversed the same way
    // by both triangles carry the twist of a non-orientable band.
    if (it1 == side.end() || it2 == side.end() || a > b) continue;
    const HalfEdgeSide s1 = it1->second;
    const HalfEdgeSide s2 = it2->second;
    if (touched[std::size_t(s1.tri)] || touched[std::size_t(s2.tri)]) continue;
    const int c = s1.opposite;
    const int d = s2.opposite;
    if (c == d || side.count({c, d}) || side.count({d, c})) continue;
    const Vec3 &A = x[std::size_t(a)], &B = x[std::size_t(b)], &C = x[std::size_t(c)], &D = x[std::size_t(d)];
    const double old_max = std::max(max_corner_angle(A, B, C), max_corner_angle(B, A, D));
    const double new_max = std::max(max_corner_angle(A, D, C), max_corner_angle(D, B, C));
    if (!(new_max < old_max - 1e-9)) continue;
    const double old_area = triangle_area(A, B, C) + triangle_area(B, A, D);
    const double n1 = triangle_area(A, D, C);
    const double n2 = triangle_area(D, B, C);
    if (!(n1 > area_floor) || !(n2 > area_floor) || n1 + n2 > old_area) continue;
    const Vec3 old_n = (B - A).cross(C - A) + (A - B).cross(D - B);
    if ((D - A).cross(C - A).dot(old_n) <= 0.0 || (B - D).cross(C - D).dot(old_n) <= 0.0) continue;
    mesh.triangles[std::size_t(s1.tri)] = {a, d, c};
    mesh.triangles[std::size_t(s2.tri)] = {d, b, c};
    touched[std::size_t(s1.tri)] = touched[std::size_t(s2.tri)] = true;
    side.erase({a, b});
    side.erase({b, a});
    side[{a, d}] = {s1.tri, c};
    side[{d, c}] = {s1.tri, a};
    side[{c, a}] = {s1.tri, d};
    side[{d, b}] = {s2.tri, c};
    side[{b, c}] = {s2.tri, d};
    side[{c, d}] = {s2.tri, b};
    ++flips;
  }
  return flips;
}

void smoothing_pass(TriangleMesh& mesh, std::uint64_t seed, double area_floor) {
  const auto mask = mesh.boundary_mask();
  std::vector<std::vector<int>> ring(mesh.vertices.size());
  std::vector<std::vector<int>> nbr(mesh.vertices.size());
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int v = mesh.triangles[t][std::size_t(k)];
      ring[std::size_t(v)].push_back(int(t));
      nbr[std::size_t(v)].push_back(mesh.triangles[t][std::size_t((k + 1) % 3)]);
      nbr[std::size_t(v)].push_back(mesh.triangles[t][std::size_t((k + 2) % 3)]);
    }
  }
  std::vector<int> order;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) order.push_back(int(v));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  auto& x = mesh.vertices;
  for (int v : order) {
    auto& nb = nbr[std::size_t(v)];
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    Vec3 centroid = Vec3::Zero();
    for (int w : nb) centroid += x[std::size_t(w)];
    centroid /= double(nb.size());
    Vec3 normal = Vec3::Zero();
    for (int t : ring[std::size_t(v)]) normal += normal_of(x, mesh.triangles[std::size_t(t)]);
    if (normal.norm() == 0.0) continue;
    normal.normalize();
    Vec3 delta = 0.5 * (centroid - x[std::size_t(v)]);
    delta -= delta.dot(normal) * normal;
    const Vec3 old = x[std::size_t(v)];
    std::vector<Vec3> old_normals;
    double old_area = 0.0;
    for (int t : ring[std::size_t(v)]) {
      old_normals.push_back(normal_of(x, mesh.triangles[std::size_t(t)]));
      old_area += 0.5 * old_normals.back().norm();
    }
    x[std::size_t(v)] = old + delta;
    double new_area = 0.0;
    bool ok = true;
    for (std::size_t k = 0; k < ring[std::size_t(v)].size(); ++k) {
      const Vec3 n = normal_of(x, mesh.triangles[std::size_t(ring[std::size_t(v)][k])]);
      if (!(0.5 * n.norm() > area_floor) || n.dot(old_normals[k]) <= 0.0) ok = false;
      new_area += 0.5 * n.norm();
    }
    if (!ok || new_area > old_area) x[std::size_t(v)] = old;
  }
}

}  // namespace

int remesh(TriangleMesh& mesh, std::uint64_t seed) {
  const double s = mesh.scale();
  const double floor = 1e-14 * s * s;
  int flips = 0;
  for (int sweep = 0; sweep < 4; ++sweep) {
    const int f = flip_pass(mesh, floor);
    flips += f;
    if (f == 0) break;
  }
  smoothing_pass(mesh, seed, floor);
  if (!mesh.orientable) mesh.twist_edges = orientation_cocycle(mesh);
  return flips;
}

SolveResult minimize_area(TriangleMesh mesh, const SolverParams& params) {
  params.check();
  validate(mesh);
  Solver solver(mesh, params);
  ConvergenceReport rep = solver.run();
  validate(mesh);
  return {std::move(mesh), std::move(rep)};
}

std::vector<double> geometric_radii(double rmin, double rmax, int count) {
  if (!(rmin > 0.0) || !(rmax > rmin) || count < 2) {
    throw Error(ErrorCode::invalid_argument, "geometric radii need 0 < rmin < rmax and count >= 2");
  }
  std::vector<double> r(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) r[std::size_t(k)] = rmin * std::pow(rmax / rmin, double(k) / double(count - 1));
  r.back() = rmax;
  return r;
}

}  // namespace curvlab
