#include "curvlab/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace curvlab::io {

namespace fs = std::filesystem;

json curve_to_json(const PolylineCurve& curve) {
  json verts = json::array();
  for (std::size_t i = 0; i < curve.size(); ++i) {
    json row = json::array();
    for (int d = 0; d < curve.dim(); ++d) row.push_back(curve.coords()(d, Eigen::Index(i)));
    verts.push_back(std::move(row));
  }
  return json{{"dim", curve.dim()}, {"closed", curve.closed()}, {"vertices", std::move(verts)}};
}

PolylineCurve curve_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("closed") || !j.contains("vertices")) {
    throw Error(ErrorCode::io_error, "curve JSON needs dim, closed and vertices");
  }
  const int dim = j.at("dim").get<int>();
  const bool closed = j.at("closed").get<bool>();
  const auto& verts = j.at("vertices");
  if (!verts.is_array() || dim < 1) throw Error(ErrorCode::io_error, "malformed curve JSON");
  PointMatrix m(dim, Eigen::Index(verts.size()));
  for (std::size_t i = 0; i < verts.size(); ++i) {
    const auto& row = verts[i];
    if (!row.is_array() || row.size() != std::size_t(dim)) {
      throw Error(ErrorCode::io_error, "vertex " + std::to_string(i) + " does not have dim entries");
    }
    for (int d = 0; d < dim; ++d) {
      // NaN and Inf are not representable in JSON; a null here means one was written.
      if (!row[d].is_number()) {
        throw Error(ErrorCode::invalid_curve, "non-finite coordinate at vertex " + std::to_string(i));
      }
      m(d, Eigen::Index(i)) = row[d].get<double>();
    }
  }
  return PolylineCurve(std::move(m), closed);
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io_error, path.string() + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::io_error, "write failed for " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void write_curve(const fs::path& path, const PolylineCurve& curve) {
  write_json(path, curve_to_json(curve));
}

PolylineCurve read_curve(const fs::path& path) { return curve_from_json(read_json(path)); }

void write_curves(const fs::path& path, const std::vector<PolylineCurve>& curves) {
  if (curves.size() == 1) return write_curve(path, curves.front());
  json comps = json::array();
  for (const auto& c : curves) comps.push_back(curve_to_json(c));
  write_json(path, json{{"components", std::move(comps)}});
}

std::vector<PolylineCurve> read_curves(const fs::path& path) {
  const json j = read_json(path);
  std::vector<PolylineCurve> out;
  if (j.contains("components")) {
    for (const auto& c : j.at("components")) out.push_back(curve_from_json(c));
  } else {
    out.push_back(curve_from_json(j));
  }
  return out;
}

json to_json(const EstimateReport& r) {
  return json{{"mean", r.mean},
              {"std_error", r.std_error},
              {"count", r.count},
              {"seed", r.seed},
              {"rejected", r.rejected}};
}

json to_json(const SphericalPolyline& sp) {
  json pts = json::array();
  for (const auto& p : sp.points) pts.push_back(std::vector<double>(p.data(), p.data() + p.size()));
  return json{{"center", std::vector<double>(sp.center.data(), sp.center.data() + sp.center.size())},
              {"closed", sp.closed},
              {"points", std::move(pts)},
              {"arc_lengths", sp.arc_lengths},
              {"length", sp.length()}};
}

json to_json(const ConeDensityReport& r) {
  return json{{"spherical_length", r.spherical_length},
              {"density", r.density},
              {"bound_tc", r.bound_tc},
              {"slack", r.slack}};
}

json to_json(const ConvergenceReport& r) {
  return json{{"initial_area", r.initial_area},   {"final_area", r.final_area},
              {"iterations", r.iterations},       {"residual", r.residual},
              {"converged", r.converged},         {"reason", r.reason},
              {"remesh_passes", r.remesh_passes}, {"edge_flips", r.edge_flips},
              {"preconditioned_steps", r.preconditioned_steps},
              {"gradient_steps", r.gradient_steps},
              {"area_history", r.area_history}};
}

json to_json(const DensityProfile& p) {
  return json{{"p", {p.p.x(), p.p.y(), p.p.z()}},
              {"radii", p.radii},
              {"theta_surface", p.theta_surface},
              {"theta_cone", p.theta_cone},
              {"theta_total", p.theta_total}};
}

std::string profile_csv(const DensityProfile& p) {
  std::ostringstream os;
  os.precision(17);
  os << "r,theta_surface,theta_cone,theta_total\n";
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    os << p.radii[k] << ',' << p.theta_surface[k] << ',' << p.theta_cone[k] << ',' << p.theta_total[k] << '\n';
  }
  return os.str();
}

std::string arc_lengths_csv(const SphericalPolyline& sp) {
  std::ostringstream os;
  os.precision(17);
  os << "index,arc_length\n";
  for (std::size_t i = 0; i < sp.arc_lengths.size(); ++i) os << i << ',' << sp.arc_lengths[i] << '\n';
  return os.str();
}

fs::path sidecar_path(const fs::path& obj_path) {
  fs::path p = obj_path;
  p.replace_extension(".mesh.json");
  return p;
}

json mesh_sidecar(const TriangleMesh& mesh) {
  json twist = json::array();
  for (const auto& e : mesh.twist_edges) twist.push_back({e[0], e[1]});
  return json{{"topology", to_string(mesh.topology)},
              {"boundary_loops", mesh.boundary_loops},
              {"orientable", mesh.orientable},
              {"twist_edges", std::move(twist)}};
}

void write_mesh(const fs::path& obj_path, const TriangleMesh& mesh) {
  std::string text;
  text.reserve(mesh.vertex_count() * 64 + mesh.triangle_count() * 24);
  char buf[160];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    text += buf;
  }
  for (const auto& t : mesh.triangles) {
    std::snprintf(buf, sizeof buf, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
    text += buf;
  }
  write_text(obj_path, text);
  write_json(sidecar_path(obj_path), mesh_sidecar(mesh));
}

namespace {

double parse_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* b = tok.data();
  const char* e = b + tok.size();
  auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v)) {
    throw Error(ErrorCode::io_error, "bad coordinate on OBJ line " + std::to_string(line));
  }
  return v;
}

int parse_index(const std::string& tok, std::size_t line, std::size_t nverts) {
  // Accept "i", "i/t", "i/t/n".
  const std::string head = tok.substr(0, tok.find('/'));
  long v = 0;
  auto res = std::from_chars(head.data(), head.data() + head.size(), v);
  if (res.ec != std::errc() || res.ptr != head.data() + head.size()) {
    throw Error(ErrorCode::io_error, "bad face index on OBJ line " + std::to_string(line));
  }
  if (v < 0) v = long(nverts) + v + 1;
  if (v < 1 || std::size_t(v) > nverts) {
    throw Error(ErrorCode::io_error, "face index out of range on OBJ line " + std::to_string(line));
  }
  return int(v - 1);
}

}  // namespace

TriangleMesh read_mesh(const fs::path& obj_path) {
  std::ifstream in(obj_path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + obj_path.string());
  TriangleMesh mesh;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "v") {
      std::string a, b, c;
      if (!(ls >> a >> b >> c)) throw Error(ErrorCode::io_error, "short vertex line " + std::to_string(lineno));
      mesh.vertices.emplace_back(parse_double(a, lineno), parse_double(b, lineno), parse_double(c, lineno));
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) idx.push_back(parse_index(tok, lineno, mesh.vertices.size()));
      if (idx.size() != 3) throw Error(ErrorCode::io_error, "non-triangle face on line " + std::to_string(lineno));
      mesh.triangles.push_back({idx[0], idx[1], idx[2]});
    }
  }
  const fs::path side = sidecar_path(obj_path);
  if (!fs::exists(side)) throw Error(ErrorCode::io_error, "missing sidecar " + side.string());
  const json j = read_json(side);
  try {
    mesh.topology = topology_from_string(j.at("topology").get<std::string>());
    mesh.boundary_loops = j.at("boundary_loops").get<std::vector<std::vector<int>>>();
    mesh.orientable = j.at("orientable").get<bool>();
    if (j.contains("twist_edges")) {
      for (const auto& e : j.at("twist_edges")) mesh.twist_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::io_error, side.string() + ": " + e.what());
  }
  validate(mesh);
  return mesh;
}

}  // namespace curvlab::io
