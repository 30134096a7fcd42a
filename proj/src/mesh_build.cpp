#include "curvlab/mesh.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include <cmath>
#include <set>

namespace curvlab {

namespace {

// A closed loop subdivided so that every original edge is split into `pieces`
// equal segments. Original vertices are kept bit-for-bit.
struct Resampled {
  std::vector<Vec3> points;
  std::vector<double> param;  ///< arclength fraction in [0, 1)
};

Vec3 to3(const PolylineCurve& c, std::size_t i) {
  Vec3 p = Vec3::Zero();
  for (int d = 0; d < c.dim(); ++d) p[d] = c.coords()(d, Eigen::Index(i));
  return p;
}

Resampled resample(const PolylineCurve& c, int pieces) {
  Resampled r;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 a = to3(c, i);
    const Vec3 b = to3(c, c.next(i));
    r.points.push_back(a);
    for (int k = 1; k < pieces; ++k) {
      const double f = double(k) / double(pieces);
      r.points.push_back(a + f * (b - a));
    }
  }
  double total = 0.0;
  std::vector<double> cum(r.points.size(), 0.0);
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    cum[i] = total;
    total += (r.points[(i + 1) % r.points.size()] - r.points[i]).norm();
  }
  r.param.resize(cum.size());
  for (std::size_t i = 0; i < cum.size(); ++i) r.param[i] = cum[i] / total;
  return r;
}

int pieces_for(const PolylineCurve& c, int resolution) {
  const int e = int(c.edge_count());
  return std::max(1, (resolution + e - 1) / e);
}

// Point at arclength fraction t on a resampled loop.
Vec3 at_param(const Resampled& r, double t) {
  t -= std::floor(t);
  const std::size_t n = r.points.size();
  std::size_t i = std::size_t(std::upper_bound(r.param.begin(), r.param.end(), t) - r.param.begin()) - 1;
  const double t0 = r.param[i];
  const double t1 = i + 1 < n ? r.param[i + 1] : 1.0;
  const double f = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
  return r.points[i] + f * (r.points[(i + 1) % n] - r.points[i]);
}

// Triangulates the strip between two cycles whose vertices carry increasing
// angular parameters in [0, 1). Triangles are counterclockwise when `inner`
// sits at the smaller radius of a planar annulus.
void zip(const std::vector<int>& inner, const std::vector<double>& ti, const std::vector<int>& outer,
         const std::vector<double>& to, std::vector<Triangle>& tris) {
  const std::size_t a = inner.size();
  const std::size_t b = outer.size();
  // Start the outer cycle at the vertex closest in angle to inner[0].
  std::size_t k0 = 0;
  double best = 2.0;
  for (std::size_t k = 0; k < b; ++k) {
    double d = std::abs(to[k] - ti[0]);
    d = std::min(d, 1.0 - d);
    if (d < best) {
      best = d;
      k0 = k;
    }
  }
  auto frac = [](double u) { return u - std::floor(u); };
  std::vector<double> ui(a + 1);
  for (std::size_t i = 0; i < a; ++i) ui[i] = frac(ti[i] - ti[0]);
  ui[a] = 1.0;
  double o0 = frac(to[k0] - ti[0]);
  if (o0 >= 0.5) o0 -= 1.0;
  std::vector<double> uo(b + 1);
  for (std::size_t k = 0; k < b; ++k) uo[k] = o0 + frac(to[(k0 + k) % b] - to[k0]);
  uo[b] = o0 + 1.0;
  auto inner_angle = [&](std::size_t i) { return ui[i]; };
  auto outer_angle = [&](std::size_t k) { return uo[k]; };
  std::size_t i = 0;
  std::size_t k = 0;
  while (i < a || k < b) {
    const bool advance_outer = k < b && (i == a || outer_angle(k + 1) <= inner_angle(i + 1));
    const int vi = inner[i % a];
    const int vk = outer[(k0 + k) % b];
    if (advance_outer) {
      tris.push_back({vi, vk, outer[(k0 + k + 1) % b]});
      ++k;
    } else {
      tris.push_back({vi, vk, inner[(i + 1) % a]});
      ++i;
    }
  }
}

// Uniform-weight harmonic extension of the pinned boundary positions.
void tutte_positions(TriangleMesh& mesh) {
  const auto mask = mesh.boundary_mask();
  const int n = int(mesh.vertices.size());
  std::vector<int> slot(std::size_t(n), -1);
  int m = 0;
  for (int v = 0; v < n; ++v) {
    if (!mask[std::size_t(v)]) slot[std::size_t(v)] = m++;
  }
  if (m == 0) return;
  std::vector<std::set<int>> nbr(mesh.vertices.size());
  for (const auto& t : mesh.triangles) {
    for (int k = 0; k < 3; ++k) {
      nbr[std::size_t(t[std::size_t(k)])].insert(t[std::size_t((k + 1) % 3)]);
      nbr[std::size_t(t[std::size_t((k + 1) % 3)])].insert(t[std::size_t(k)]);
    }
  }
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(m, 3);
  for (int v = 0; v < n; ++v) {
    const int r = slot[std::size_t(v)];
    if (r < 0) continue;
    trip.emplace_back(r, r, double(nbr[std::size_t(v)].size()));
    for (int w : nbr[std::size_t(v)]) {
      const int c = slot[std::size_t(w)];
      if (c >= 0) {
        trip.emplace_back(r, c, -1.0);
      } else {
        rhs.row(r) += mesh.vertices[std::size_t(w)].transpose();
      }
    }
  }
  Eigen::SparseMatrix<double> L(m, m);
  L.setFromTriplets(trip.begin(), trip.end());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::invalid_mesh, "harmonic extension failed");
  const Eigen::MatrixXd x = solver.solve(rhs);
  for (int v = 0; v < n; ++v) {
    const int r = slot[std::size_t(v)];
    if (r >= 0) mesh.vertices[std::size_t(v)] = x.row(r).transpose();
  }
}

TriangleMesh build_disk(const PolylineCurve& curve, int resolution) {
  const Resampled b = resample(curve, pieces_for(curve, resolution));
  const int m = int(b.points.size());
  const int rings = std::max(1, int(std::lround(double(m) / kTwoPi)));
  TriangleMesh mesh;
  mesh.topology = Topology::disk;
  mesh.vertices.push_back(Vec3::Zero());  // center
  std::vector<int> prev{0};
  std::vector<double> prev_t{0.0};
  for (int j = 1; j <= rings; ++j) {
    std::vector<int> ids;
    std::vector<double> ts;
    if (j == rings) {
      for (int k = 0; k < m; ++k) {
        ids.push_back(int(mesh.vertices.size()));
        ts.push_back(b.param[std::size_t(k)]);
        mesh.vertices.push_back(b.points[std::size_t(k)]);
      }
    } else {
      const int count = std::max(6, int(std::lround(double(m) * j / rings)));
      for (int k = 0; k < count; ++k) {
        ids.push_back(int(mesh.vertices.size()));
        ts.push_back((k + 0.5 * (j % 2)) / double(count));
        mesh.vertices.push_back(Vec3::Zero());
      }
    }
    if (j == 1) {
      for (std::size_t k = 0; k < ids.size(); ++k) mesh.triangles.push_back({0, ids[k], ids[(k + 1) % ids.size()]});
    } else {
      zip(prev, prev_t, ids, ts, mesh.triangles);
    }
    prev = std::move(ids);
    prev_t = std::move(ts);
  }
  mesh.boundary_loops.push_back(prev);
  tutte_positions(mesh);
  return mesh;
}

TriangleMesh build_annulus(const PolylineCurve& c1, const PolylineCurve& c2, int resolution) {
  const Resampled b1 = resample(c1, pieces_for(c1, resolution));
  const Resampled b2 = resample(c2, pieces_for(c2, resolution));
  const std::size_t m1 = b1.points.size();
  const std::size_t m2 = b2.points.size();
  double spacing = 0.0;
  for (std::size_t i = 0; i < m1; ++i) spacing += (b1.points[(i + 1) % m1] - b1.points[i]).norm();
  for (std::size_t i = 0; i < m2; ++i) spacing += (b2.points[(i + 1) % m2] - b2.points[i]).norm();
  spacing /= double(m1 + m2);
  double gap = 0.0;
  for (int k = 0; k < 16; ++k) gap = std::max(gap, (at_param(b1, k / 16.0) - at_param(b2, k / 16.0)).norm());
  const int rows = std::max(1, int(std::ceil(gap / spacing)));

  TriangleMesh mesh;
  mesh.topology = Topology::annulus;
  std::vector<int> prev;
  std::vector<double> prev_t;
  for (int j = 0; j <= rows; ++j) {
    std::vector<int> ids;
    std::vector<double> ts;
    if (j == 0 || j == rows) {
      const Resampled& b = j == 0 ? b1 : b2;
      for (std::size_t k = 0; k < b.points.size(); ++k) {
        ids.push_back(int(mesh.vertices.size()));
        ts.push_back(b.param[k]);
        mesh.vertices.push_back(b.points[k]);
      }
      mesh.boundary_loops.push_back(ids);
    } else {
      const double f = double(j) / rows;
      const int count = int(std::lround(double(m1) + f * (double(m2) - double(m1))));
      for (int k = 0; k < count; ++k) {
        const double t = (k + 0.5 * (j % 2)) / double(count);
        ids.push_back(int(mesh.vertices.size()));
        ts.push_back(t);
        mesh.vertices.push_back((1.0 - f) * at_param(b1, t) + f * at_param(b2, t));
      }
    }
    if (j > 0) zip(prev, prev_t, ids, ts, mesh.triangles);
    prev = std::move(ids);
    prev_t = std::move(ts);
  }
  return mesh;
}

TriangleMesh build_moebius(const PolylineCurve& curve, int resolution) {
  int pieces = pieces_for(curve, resolution);
  if ((int(curve.edge_count()) * pieces) % 2 != 0) ++pieces;
  const Resampled b = resample(curve, pieces);
  const int h = int(b.points.size()) / 2;
  double spacing = 0.0;
  for (int i = 0; i < 2 * h; ++i) spacing += (b.points[std::size_t((i + 1) % (2 * h))] - b.points[std::size_t(i)]).norm();
  spacing /= double(2 * h);
  double width = 0.0;
  for (int c = 0; c < h; ++c) width = std::max(width, (b.points[std::size_t(h + c)] - b.points[std::size_t(c)]).norm());
  const int J = std::max(2, int(std::ceil(width / spacing)));

  // Grid (c, j), 0 <= c <= h, 0 <= j <= J, joins bottom vertex c to top vertex
  // h + c. Column h coincides with column 0 read backwards, which closes the
  // strip into a band with a half twist.
  TriangleMesh mesh;
  mesh.topology = Topology::moebius;
  mesh.orientable = false;
  std::vector<int> grid(std::size_t(h * (J + 1)));
  for (int c = 0; c < h; ++c) {
    const Vec3& lo = b.points[std::size_t(c)];
    const Vec3& hi = b.points[std::size_t(h + c)];
    for (int j = 0; j <= J; ++j) {
      grid[std::size_t(c * (J + 1) + j)] = int(mesh.vertices.size());
      const double f = double(j) / J;
      mesh.vertices.push_back(j == 0 ? lo : j == J ? hi : Vec3(lo + f * (hi - lo)));
    }
  }
  auto id = [&](int c, int j) { return c == h ? grid[std::size_t(J - j)] : grid[std::size_t(c * (J + 1) + j)]; };
  for (int c = 0; c < h; ++c) {
    for (int j = 0; j < J; ++j) {
      const int a = id(c, j), bb = id(c + 1, j), cc = id(c + 1, j + 1), d = id(c, j + 1);
      // Alternate the diagonal to avoid a directional bias.
      if ((c + j) % 2 == 0) {
        mesh.triangles.push_back({a, bb, cc});
        mesh.triangles.push_back({a, cc, d});
      } else {
        mesh.triangles.push_back({a, bb, d});
        mesh.triangles.push_back({bb, cc, d});
      }
    }
  }
  std::vector<int> loop;
  for (int c = 0; c < h; ++c) loop.push_back(id(c, 0));
  for (int c = 0; c < h; ++c) loop.push_back(id(c, J));
  mesh.boundary_loops.push_back(loop);
  mesh.twist_edges = orientation_cocycle(mesh);
  return mesh;
}

}  // namespace

TriangleMesh build_initial_mesh(std::span<const PolylineCurve> curves, Topology topology, int resolution) {
  if (curves.size() != loop_count(topology)) {
    throw Error(ErrorCode::incompatible_topology,
                std::string(to_string(topology)) + " needs " + std::to_string(loop_count(topology)) +
                    " boundary curve(s), got " + std::to_string(curves.size()));
  }
  if (resolution < 3) throw Error(ErrorCode::invalid_argument, "resolution must be >= 3");
  for (const auto& c : curves) {
    if (!c.closed()) throw Error(ErrorCode::incompatible_topology, "boundary curves must be closed");
    if (c.dim() > 3) throw Error(ErrorCode::unsupported, "meshes live in R^3");
  }
  TriangleMesh mesh;
  switch (topology) {
    case Topology::disk: mesh = build_disk(curves[0], resolution); break;
    case Topology::annulus: mesh = build_annulus(curves[0], curves[1], resolution); break;
    case Topology::moebius: mesh = build_moebius(curves[0], resolution); break;
  }
  validate(mesh);
  return mesh;
}

}  // namespace curvlab
