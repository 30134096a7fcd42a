// curvlab: generate curves, analyze them, solve for least-area meshes and
// check the resulting densities from the command line.

#include "curvlab/diagnostics.hpp"
#include "curvlab/generators.hpp"
#include "curvlab/intgeom.hpp"
#include "curvlab/io.hpp"
#include "curvlab/plateau.hpp"
#include "curvlab/projcone.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace curvlab;

namespace {

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    double v = 0.0;
    const auto res = std::from_chars(s.data() + pos, s.data() + end, v);
    if (res.ec != std::errc() || res.ptr != s.data() + end) {
      throw Error(ErrorCode::invalid_argument, "cannot parse " + what + " '" + s + "'");
    }
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

Vec parse_point(const std::string& s, int dim) {
  const auto v = parse_list(s, "point");
  if (int(v.size()) != dim) {
    throw Error(ErrorCode::invalid_argument, "point needs " + std::to_string(dim) + " coordinates");
  }
  return Eigen::Map<const Vec>(v.data(), Eigen::Index(v.size()));
}

// "geometric:rmin:rmax:count" or an explicit comma-separated list.
std::vector<double> parse_radii(const std::string& s) {
  const std::string prefix = "geometric:";
  if (s.rfind(prefix, 0) != 0) return parse_list(s, "radii");
  std::string rest = s.substr(prefix.size());
  for (char& c : rest) c = c == ':' ? ',' : c;
  const auto v = parse_list(rest, "radii");
  if (v.size() != 3 || v[2] != std::floor(v[2])) {
    throw Error(ErrorCode::invalid_argument, "radii must be geometric:rmin:rmax:count");
  }
  return geometric_radii(v[0], v[1], int(v[2]));
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json(out, j);
  }
}

void emit_text(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    io::write_text(out, text);
  }
}

json verdict_json(const TheoremVerdict& v) { return to_json(v); }

// Seeded viewpoints around a curve at the scale of its diameter.
std::vector<Vec> viewpoints(const PolylineCurve& c, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const Vec ctr = c.coords().rowwise().mean();
  const double d = diameter(c);
  std::vector<Vec> out;
  while (int(out.size()) < count) {
    Vec p(c.dim());
    for (int k = 0; k < c.dim(); ++k) p[k] = ctr[k] + 0.6 * d * g(rng);
    try {
      require_off_curve(c, p);
      out.push_back(p);
    } catch (const Error&) {
    }
  }
  return out;
}

// The verdict of minimal slack among several, with the sample count.
TheoremVerdict worst_of(std::vector<TheoremVerdict> vs, const std::string& what) {
  if (vs.empty()) throw Error(ErrorCode::invalid_argument, "no samples for " + what);
  std::size_t w = 0;
  for (std::size_t i = 1; i < vs.size(); ++i) {
    if (vs[i].slack < vs[w].slack) w = i;
  }
  TheoremVerdict v = vs[w];
  v.context["samples"] = vs.size();
  v.context["sampled_over"] = what;
  return v;
}

json analyze_curve(const PolylineCurve& c, double tol) {
  json j{{"dim", c.dim()},
         {"closed", c.closed()},
         {"vertices", c.size()},
         {"total_curvature", total_curvature(c)},
         {"length", arclength(c)},
         {"diameter", diameter(c)},
         {"min_nonadjacent_edge_distance", min_nonadjacent_edge_distance(c)}};
  if (c.closed()) {
    j["rectifiability_ratio"] = rectifiability_ratio(c);
    j["fenchel"] = verdict_json(fenchel_screen(c, tol));
    const auto cert = unknotted_certificate(c);
    j["unknotted_certificate"] = {{"certified", cert.certified}, {"tc", cert.tc}};
  }
  return j;
}

struct Options {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double tol = kCurveTol;
  double mesh_tol = kMeshTol;
  std::size_t dirs = 100000;
  int max_iters = SolverParams{}.max_iters;
  double grad_tol = SolverParams{}.grad_tol;
  double area_tol = SolverParams{}.area_tol;
  std::string step_rule = "backtracking";
  int remesh_every = SolverParams{}.remesh_every;

  SolverParams solver() const {
    SolverParams p;
    p.max_iters = max_iters;
    p.grad_tol = grad_tol;
    p.area_tol = area_tol;
    p.step_rule = step_rule_from_string(step_rule);
    p.remesh_every = remesh_every;
    p.seed = seed;
    p.check();
    return p;
  }
};

// Verdicts for one curve file of the fixture corpus.
std::vector<TheoremVerdict> curve_verdicts(const std::vector<PolylineCurve>& comps, const Options& o, json& certs,
                                           const std::string& name) {
  std::vector<TheoremVerdict> out;
  bool all_closed = true;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const auto& c = comps[k];
    std::vector<TheoremVerdict> proj;
    for (const Vec& p : viewpoints(c, 1000, o.seed + k)) {
      if (c.closed()) {
        proj.push_back(verify_projection_bound(c, p, o.tol));
      } else {
        const auto r = open_curve_cone_bound(c, p);
        TheoremVerdict v = TheoremVerdict::make("open_curve_bound", r.slack, o.tol);
        v.context["density"] = r.density;
        v.context["bound"] = r.bound;
        proj.push_back(std::move(v));
      }
    }
    TheoremVerdict pv = worst_of(std::move(proj), "viewpoints");
    pv.context["fixture"] = name;
    out.push_back(std::move(pv));
    if (!c.closed()) {
      all_closed = false;
      continue;
    }
    std::vector<TheoremVerdict> bpb;
    for (std::size_t v = 0; v < c.size(); ++v) bpb.push_back(verify_boundary_projection_bound(c, v, o.tol));
    TheoremVerdict bv = worst_of(std::move(bpb), "vertices");
    bv.context["fixture"] = name;
    out.push_back(std::move(bv));
    const auto cert = unknotted_certificate(c);
    certs[name + (comps.size() > 1 ? "#" + std::to_string(k) : "")] = {{"certified", cert.certified},
                                                                       {"tc", cert.tc}};
  }
  if (all_closed) {
    TheoremVerdict f = fenchel_screen(comps, o.tol);
    f.context["fixture"] = name;
    out.push_back(std::move(f));
  }
  return out;
}

// Verdicts for one solved mesh of the fixture corpus.
std::vector<TheoremVerdict> mesh_verdicts(const TriangleMesh& mesh, const Options& o, const std::string& name) {
  std::vector<TheoremVerdict> out;
  auto tag = [&](TheoremVerdict v) {
    v.context["fixture"] = name;
    out.push_back(std::move(v));
  };
  const auto curves = mesh.boundary_curves();
  tag(verify_density_cone_bound_all(mesh, o.mesh_tol));

  std::vector<Vec3> points;
  for (int v : extremal_density_vertices(mesh)) points.push_back(mesh.vertices[std::size_t(v)]);
  Vec3 ctr = Vec3::Zero();
  for (const auto& x : mesh.vertices) ctr += x;
  points.push_back(ctr / double(mesh.vertices.size()));
  const double s = mesh.scale();
  const auto radii = geometric_radii(0.05 * s, 20.0 * s, 50);
  for (const auto& p : points) {
    const auto prof = extended_density_profile(mesh, curves, p, radii);
    TheoremVerdict v = verify_monotonicity(prof, o.mesh_tol);
    try {
      v.context["cone_density"] = cone_density(curves, Vec(p));
    } catch (const Error&) {
    }
    tag(std::move(v));
  }

  if (planarity_residual(mesh) < 1e-6) {
    const auto mask = mesh.boundary_mask();
    std::vector<TheoremVerdict> corner;
    for (std::size_t v = 0; v < mask.size(); ++v) {
      if (mask[v]) corner.push_back(verify_corner_density(mesh, int(v), o.mesh_tol));
    }
    tag(worst_of(std::move(corner), "boundary vertices"));
  }

  double tc = 0.0;
  for (const auto& c : curves) tc += total_curvature(c);
  if (tc < 2.0 * kTwoPi + 1e-9) {
    TheoremVerdict e = verify_embedded(mesh);
    e.context["boundary_total_curvature"] = tc;
    tag(std::move(e));
  }
  return out;
}

int run_report(const std::string& dir, const std::string& out, const Options& o) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::io_error, "not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<TheoremVerdict> all;
  json certs = json::object();
  json fixtures = json::array();
  for (const auto& f : files) {
    const std::string name = fs::relative(f, dir).string();
    const std::string fn = f.filename().string();
    if (f.extension() == ".obj") {
      const auto mesh = io::read_mesh(f);
      auto vs = mesh_verdicts(mesh, o, name);
      all.insert(all.end(), vs.begin(), vs.end());
      fixtures.push_back({{"file", name}, {"kind", "mesh"}, {"verdicts", vs.size()}});
    } else if (f.extension() == ".json" && !fn.ends_with(".mesh.json")) {
      const json j = io::read_json(f);
      const bool curve_file = (j.contains("vertices") && j["vertices"].is_array()) || j.contains("components");
      if (!curve_file) continue;
      const auto comps = io::read_curves(f);
      auto vs = curve_verdicts(comps, o, certs, name);
      all.insert(all.end(), vs.begin(), vs.end());
      fixtures.push_back({{"file", name}, {"kind", "curve"}, {"verdicts", vs.size()}});
    }
  }
  json rep = aggregate(all);
  rep["fixtures"] = std::move(fixtures);
  rep["unknotted_certificates"] = std::move(certs);
  rep["seed"] = o.seed;
  emit(rep, out);
  if (!out.empty()) {
    std::cout << json{{"all_hold", rep["all_hold"]}, {"count", rep["count"]}, {"out", out}}.dump() << '\n';
  }
  return rep["all_hold"].get<bool>() ? 0 : 1;
}

void add_gen(CLI::App& app, std::string& out, std::function<void()>& action) {
  auto* gen = app.add_subcommand("gen", "Write a generated curve as JSON");
  static std::string name;
  static std::size_t n = 0;
  static double radius = 1.0, radius2 = 1.0, eps = 0.05, tilt = 0.1, sep = 0.01, gap = 0.5, amplitude = 0.3;
  static int p = 2, q = 3, harmonics = 3, dim = 3;
  static std::uint64_t seed = 0;
  static std::string radii = "1";
  gen->add_option("name", name, "circle|polygon|square|doubled_circle|moebius|torus_knot|trig|open_trig|circle_pair")
      ->required();
  gen->add_option("--n", n, "Vertex count (per turn or per polygon)");
  gen->add_option("--radius", radius, "Circle radius");
  gen->add_option("--radius2", radius2, "Second radius of circle_pair");
  gen->add_option("--radii", radii, "Radius profile of polygon, comma separated");
  gen->add_option("--eps", eps, "Push-off of doubled_circle");
  gen->add_option("--tilt", tilt, "Tilt angle of moebius");
  gen->add_option("--sep", sep, "Vertex separation of moebius");
  gen->add_option("--gap", gap, "Distance between the circles of circle_pair");
  gen->add_option("--p", p, "Torus knot p");
  gen->add_option("--q", q, "Torus knot q");
  gen->add_option("--harmonics", harmonics, "Harmonics of trig curves");
  gen->add_option("--amplitude", amplitude, "Amplitude of trig curves");
  gen->add_option("--dim", dim, "Ambient dimension of trig curves");
  gen->add_option("--seed", seed, "Seed of trig curves");
  gen->add_option("--out", out, "Output file (stdout if omitted)");
  gen->callback([&] {
    action = [&] {
      auto pick = [](std::size_t v, std::size_t d) { return v == 0 ? d : v; };
      std::vector<PolylineCurve> c;
      if (name == "circle") {
        c.push_back(gen::circle(pick(n, 256), radius));
      } else if (name == "polygon") {
        c.push_back(gen::convex_polygon(pick(n, 12), parse_list(radii, "radii")));
      } else if (name == "square") {
        c.push_back(gen::unit_square());
      } else if (name == "doubled_circle") {
        c.push_back(gen::doubled_circle(pick(n, 64), eps));
      } else if (name == "moebius") {
        c.push_back(gen::moebius_boundary(pick(n, 12), tilt, sep));
      } else if (name == "torus_knot") {
        c.push_back(gen::torus_knot(p, q, pick(n, 256)));
      } else if (name == "trig") {
        c.push_back(gen::random_trig_curve(seed, harmonics, amplitude, pick(n, 128), dim));
      } else if (name == "open_trig") {
        c.push_back(gen::random_open_curve(seed, harmonics, amplitude, pick(n, 64), dim));
      } else if (name == "circle_pair") {
        auto [a, b] = gen::circle_pair(radius, radius2, gap, pick(n, 64));
        c.push_back(std::move(a));
        c.push_back(std::move(b));
      } else {
        throw Error(ErrorCode::invalid_argument, "unknown generator '" + name + "'");
      }
      json j;
      if (c.size() == 1) {
        j = io::curve_to_json(c.front());
      } else {
        j = json::object();
        j["components"] = json::array();
        for (const auto& x : c) j["components"].push_back(io::curve_to_json(x));
      }
      emit(j, out);
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Total curvature, cone densities and least-area meshes for polygonal curves"};
  app.require_subcommand(1);
  Options o;
  std::string out;
  std::string input;
  std::string point;
  std::string csv;
  std::function<void()> action;
  int status = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed (default 0)");
    sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "Tolerance of exact curve inequalities");
    sub->add_option("--out", out, "Output file (stdout if omitted)");
  };
  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("--max-iters", o.max_iters, "Solver iteration cap");
    sub->add_option("--grad-tol", o.grad_tol, "Relative gradient tolerance");
    sub->add_option("--area-tol", o.area_tol, "Relative area change over 10 steps");
    sub->add_option("--step-rule", o.step_rule, "fixed|backtracking");
    sub->add_option("--remesh-every", o.remesh_every, "Iterations between remeshing passes (0 disables)");
  };

  add_gen(app, out, action);

  auto* analyze = app.add_subcommand("analyze", "Total curvature, length and screens of a curve file");
  analyze->add_option("curve", input, "Curve JSON")->required();
  common(analyze);
  analyze->callback([&] {
    action = [&] {
      const auto comps = io::read_curves(input);
      if (comps.size() == 1) {
        emit(analyze_curve(comps.front(), o.tol), out);
        return;
      }
      json j{{"components", json::array()}};
      for (const auto& c : comps) j["components"].push_back(analyze_curve(c, o.tol));
      j["fenchel"] = verdict_json(fenchel_screen(comps, o.tol));
      emit(j, out);
    };
  });

  auto* project = app.add_subcommand("project", "Radial projection from a point and the cone density");
  project->add_option("curve", input, "Curve JSON")->required();
  project->add_option("--point", point, "Centre x,y,z")->required();
  project->add_option("--csv", csv, "Also write per-edge arc lengths as CSV");
  common(project);
  project->callback([&] {
    action = [&] {
      const auto c = io::read_curve(input);
      const Vec p = parse_point(point, c.dim());
      const auto sp = radial_project(c, p);
      json j{{"spherical_polyline", io::to_json(sp)}};
      if (c.closed()) {
        j["cone_density"] = io::to_json(cone_density(c, p));
        j["verdict"] = verdict_json(verify_projection_bound(c, p, o.tol));
      } else {
        const auto r = open_curve_cone_bound(c, p);
        j["open_curve_bound"] = {{"spherical_length", r.spherical_length},
                                 {"density", r.density},
                                 {"tc", r.tc},
                                 {"bound", r.bound},
                                 {"slack", r.slack}};
      }
      if (!csv.empty()) io::write_text(csv, io::arc_lengths_csv(sp));
      emit(j, out);
    };
  });

  std::string method = "milnor";
  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo total curvature or projected length");
  estimate->add_option("curve", input, "Curve JSON")->required();
  estimate->add_option("--method", method, "milnor|crofton");
  estimate->add_option("--point", point, "Centre for crofton");
  estimate->add_option("--dirs", o.dirs, "Number of directions")->check(CLI::PositiveNumber);
  common(estimate);
  estimate->callback([&] {
    action = [&] {
      const auto c = io::read_curve(input);
      EstimateOptions eo;
      eo.threads = o.threads;
      EstimateReport r;
      if (method == "milnor") {
        r = milnor_total_curvature(c, o.dirs, o.seed, eo);
      } else if (method == "crofton") {
        if (point.empty()) throw Error(ErrorCode::invalid_argument, "crofton needs --point");
        r = crofton_projected_length(c, parse_point(point, c.dim()), o.dirs, o.seed, eo);
      } else {
        throw Error(ErrorCode::invalid_argument, "unknown method '" + method + "'");
      }
      emit(io::to_json(r), out);
    };
  });

  std::string topology = "disk";
  int resolution = 64;
  std::string report_out;
  auto* plateau = app.add_subcommand("plateau", "Solve for a least-area mesh spanning the curve(s)");
  plateau->add_option("curves", input, "Curve JSON (one loop, or two components for an annulus)")->required();
  plateau->add_option("--topology", topology, "disk|annulus|moebius");
  plateau->add_option("--resolution", resolution, "Boundary samples per loop");
  plateau->add_option("--report", report_out, "Write the convergence report here instead of stdout");
  common(plateau);
  solver_flags(plateau);
  plateau->callback([&] {
    action = [&] {
      if (out.empty()) throw Error(ErrorCode::invalid_argument, "plateau needs --out mesh.obj");
      const auto comps = io::read_curves(input);
      const auto res = minimize_area(build_initial_mesh(comps, topology_from_string(topology), resolution), o.solver());
      io::write_mesh(out, res.mesh);
      json rep = io::to_json(res.report);
      rep["mesh"] = out;
      rep["vertices"] = res.mesh.vertex_count();
      rep["triangles"] = res.mesh.triangle_count();
      emit(rep, report_out);
    };
  });

  std::string radii = "geometric:0.05:20:50";
  std::string json_out;
  bool check = false;
  auto* mono = app.add_subcommand("monotonicity", "Extended density profile of a mesh about a point");
  mono->add_option("mesh", input, "Mesh OBJ (with its .mesh.json sidecar)")->required();
  mono->add_option("--point", point, "Centre x,y,z")->required();
  mono->add_option("--radii", radii, "geometric:rmin:rmax:count or r1,r2,...");
  mono->add_option("--mesh-tol", o.mesh_tol, "Tolerance on decreasing steps");
  mono->add_option("--json", json_out, "Also write the profile and verdict as JSON");
  mono->add_flag("--check", check, "Exit 1 if the profile decreases beyond tolerance");
  common(mono);
  mono->callback([&] {
    action = [&] {
      const auto mesh = io::read_mesh(input);
      const Vec p = parse_point(point, 3);
      const auto prof = extended_density_profile(mesh, Vec3(p[0], p[1], p[2]), parse_radii(radii));
      const auto v = verify_monotonicity(prof, o.mesh_tol);
      emit_text(io::profile_csv(prof), out);
      if (!json_out.empty()) io::write_json(json_out, json{{"profile", io::to_json(prof)}, {"verdict", to_json(v)}});
      if (check && !v.holds) status = 1;
    };
  });

  std::string all_dir;
  auto* report = app.add_subcommand("report", "Aggregate verdicts over a fixture directory");
  report->add_option("--all", all_dir, "Fixture directory")->required();
  report->add_option("--mesh-tol", o.mesh_tol, "Tolerance of mesh discretization claims");
  common(report);
  report->callback([&] { action = [&] { status = run_report(all_dir, out, o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << json{{"error", "usage"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  try {
    if (o.threads == 0) o.threads = 1;
    action();
  } catch (const Error& e) {
    std::cerr << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return status;
}
