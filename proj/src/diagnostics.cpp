#include "curvlab/diagnostics.hpp"

#include "curvlab/intersect.hpp"
#include "curvlab/projcone.hpp"

#include <limits>

namespace curvlab {

using nlohmann::json;

TheoremVerdict TheoremVerdict::make(std::string id, double slack, double tolerance) {
  TheoremVerdict v;
  v.theorem_id = std::move(id);
  v.slack = slack;
  v.tolerance = tolerance;
  v.holds = slack >= -tolerance;
  return v;
}

TheoremVerdict verify_projection_bound(const PolylineCurve& curve, const Vec& p, double tol) {
  const ConeDensityReport r = cone_density(curve, p);
  TheoremVerdict v = TheoremVerdict::make("projection_bound", r.slack, tol);
  v.context["total_curvature"] = r.bound_tc;
  v.context["spherical_length"] = r.spherical_length;
  v.context["coplanarity_residual"] = coplanarity_residual(curve, p);
  return v;
}

TheoremVerdict verify_boundary_projection_bound(const PolylineCurve& curve, std::size_t vertex, double tol) {
  const BoundaryProjectionReport r = boundary_projection_bound(curve, vertex);
  TheoremVerdict v = TheoremVerdict::make("boundary_projection_bound", r.slack, tol);
  v.context["vertex"] = vertex;
  v.context["length"] = r.length;
  v.context["total_curvature"] = r.tc;
  v.context["exterior_angle"] = r.theta;
  return v;
}

namespace {

// Largest distance from p to the planes of the triangles, relative to scale:
// zero iff every triangle lies in a plane through p, i.e. the mesh is a cone
// with vertex p.
double cone_deviation(const TriangleMesh& mesh, const Vec3& p) {
  double worst = 0.0;
  for (const auto& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[std::size_t(t[0])];
    const Vec3 n = (mesh.vertices[std::size_t(t[1])] - a).cross(mesh.vertices[std::size_t(t[2])] - a);
    worst = std::max(worst, std::abs((p - a).dot(n.normalized())));
  }
  const double s = mesh.scale();
  return s > 0.0 ? worst / s : 0.0;
}

}  // namespace

TheoremVerdict verify_density_cone_bound(const TriangleMesh& mesh, std::span<const PolylineCurve> curves,
                                         int vertex, double tol) {
  const Vec3& p3 = mesh.vertices.at(std::size_t(vertex));
  const double theta = vertex_density(mesh, vertex);
  const double cone = cone_density(curves, Vec(p3));
  TheoremVerdict v = TheoremVerdict::make("density_cone_bound", cone - theta, tol);
  const double dev = cone_deviation(mesh, p3);
  v.context["vertex"] = vertex;
  v.context["vertex_density"] = theta;
  v.context["cone_density"] = cone;
  v.context["cone_deviation"] = dev;
  v.context["is_cone"] = dev < 1e-9;
  return v;
}

TheoremVerdict verify_density_cone_bound_all(const TriangleMesh& mesh, double tol) {
  const auto curves = mesh.boundary_curves();
  const auto mask = mesh.boundary_mask();
  double worst = std::numeric_limits<double>::infinity();
  int worst_vertex = -1;
  int cones = 0;
  int checked = 0;
  int on_curve = 0;
  const double near = 1e-9 * mesh.scale();
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) continue;
    // The cone density is undefined at points of the boundary curve; an
    // interior vertex driven onto it is skipped and counted.
    const Vec p = mesh.vertices[v];
    bool touching = false;
    for (const auto& c : curves) {
      for (std::size_t i = 0; i < c.edge_count() && !touching; ++i) {
        touching = point_segment_distance(p, c.vertex(i), c.vertex(c.next(i))) <= near;
      }
    }
    if (touching) {
      ++on_curve;
      continue;
    }
    const TheoremVerdict one = verify_density_cone_bound(mesh, curves, int(v), tol);
    ++checked;
    if (one.context.at("is_cone").get<bool>()) ++cones;
    if (one.slack < worst) {
      worst = one.slack;
      worst_vertex = int(v);
    }
  }
  if (checked == 0) worst = 0.0;
  TheoremVerdict v = TheoremVerdict::make("density_cone_bound", worst, tol);
  v.context["interior_vertices"] = checked;
  v.context["worst_vertex"] = worst_vertex;
  v.context["cone_vertices"] = cones;
  v.context["on_curve_vertices"] = on_curve;
  v.context["planarity_residual"] = planarity_residual(mesh);
  return v;
}

TheoremVerdict verify_monotonicity(const DensityProfile& profile, double tol) {
  double worst = 0.0;
  std::size_t at = 0;
  for (std::size_t k = 1; k < profile.theta_total.size(); ++k) {
    const double d = profile.theta_total[k] - profile.theta_total[k - 1];
    if (d < worst) {
      worst = d;
      at = k;
    }
  }
  TheoremVerdict v = TheoremVerdict::make("monotonicity", worst, tol);
  v.context["point"] = {profile.p.x(), profile.p.y(), profile.p.z()};
  v.context["radii"] = profile.radii.size();
  if (worst < 0.0) v.context["worst_radius"] = profile.radii[at];
  if (!profile.theta_total.empty()) {
    v.context["theta_first"] = profile.theta_total.front();
    v.context["theta_last"] = profile.theta_total.back();
  }
  return v;
}

TheoremVerdict verify_corner_density(const TriangleMesh& mesh, int vertex, double tol) {
  const double theta = boundary_turning_angle(mesh, vertex);
  if (theta < 0.0) throw Error(ErrorCode::invalid_argument, "vertex is not on the boundary");
  const double density = vertex_density(mesh, vertex);
  double dist = 0.0;
  double nearest = 0.0;
  if (theta >= kPi - 1e-9) {
    nearest = 0.0;
    dist = std::abs(density);
  } else {
    const double lo = 0.5 - theta / kTwoPi;
    const double hi = 0.5 + theta / kTwoPi;
    nearest = std::abs(density - lo) <= std::abs(density - hi) ? lo : hi;
    dist = std::abs(density - nearest);
  }
  TheoremVerdict v = TheoremVerdict::make("corner_density", -dist, tol);
  v.context["vertex"] = vertex;
  v.context["exterior_angle"] = theta;
  v.context["vertex_density"] = density;
  v.context["expected"] = nearest;
  return v;
}

TheoremVerdict verify_embedded(const TriangleMesh& mesh) {
  const SelfIntersectionReport r = self_intersection_report(mesh);
  TheoremVerdict v = TheoremVerdict::make("embedded", -double(r.intersecting_pairs.size()), 0.0);
  v.context["intersecting_pairs"] = r.intersecting_pairs.size();
  v.context["min_separation"] = r.min_separation;
  return v;
}

UnknotCertificate unknotted_certificate(const PolylineCurve& curve) {
  UnknotCertificate c;
  c.tc = total_curvature(curve);
  c.certified = curve.closed() && c.tc <= 2.0 * kTwoPi + 1e-9;
  return c;
}

TheoremVerdict fenchel_screen(std::span<const PolylineCurve> curves, double tol) {
  double worst = std::numeric_limits<double>::infinity();
  double total = 0.0;
  json per = json::array();
  for (const auto& c : curves) {
    if (!c.closed()) throw Error(ErrorCode::unsupported, "fenchel_screen needs closed curves");
    const double tc = total_curvature(c);
    total += tc;
    per.push_back(tc);
    worst = std::min(worst, tc - kTwoPi);
  }
  if (curves.empty()) throw Error(ErrorCode::invalid_argument, "fenchel_screen needs a curve");
  TheoremVerdict v = TheoremVerdict::make("fenchel", worst, tol);
  v.context["total_curvature"] = per;
  if (curves.size() == 2) v.context["two_component_total_within_4pi"] = total <= 2.0 * kTwoPi + tol;
  return v;
}

TheoremVerdict fenchel_screen(const PolylineCurve& curve, double tol) {
  return fenchel_screen(std::span<const PolylineCurve>(&curve, 1), tol);
}

json to_json(const TheoremVerdict& v) {
  json ctx = json::object();
  for (const auto& [k, val] : v.context) ctx[k] = val;
  return json{{"theorem_id", v.theorem_id},
              {"holds", v.holds},
              {"slack", v.slack},
              {"tolerance", v.tolerance},
              {"context", std::move(ctx)}};
}

json aggregate(const std::vector<TheoremVerdict>& verdicts) {
  json groups = json::object();
  bool all = true;
  for (const auto& v : verdicts) {
    json& g = groups[v.theorem_id];
    if (g.is_null()) g = json{{"passed", 0}, {"failed", 0}, {"min_slack", v.slack}, {"verdicts", json::array()}};
    g[v.holds ? "passed" : "failed"] = g[v.holds ? "passed" : "failed"].get<int>() + 1;
    g["min_slack"] = std::min(g["min_slack"].get<double>(), v.slack);
    g["verdicts"].push_back(to_json(v));
    all = all && v.holds;
  }
  return json{{"all_hold", all}, {"count", verdicts.size()}, {"theorems", std::move(groups)}};
}

std::vector<int> extremal_density_vertices(const TriangleMesh& mesh) {
  const auto mask = mesh.boundary_mask();
  int lo = -1, hi = -1;
  double dlo = std::numeric_limits<double>::infinity();
  double dhi = -dlo;
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) continue;
    const double d = vertex_density(mesh, int(v));
    if (d < dlo) {
      dlo = d;
      lo = int(v);
    }
    if (d > dhi) {
      dhi = d;
      hi = int(v);
    }
  }
  std::vector<int> out;
  if (lo >= 0) out.push_back(lo);
  if (hi >= 0 && hi != lo) out.push_back(hi);
  return out;
}

}  // namespace curvlab
