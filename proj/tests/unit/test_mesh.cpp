#include "curvlab/generators.hpp"
#include "curvlab/mesh.hpp"

#include <gtest/gtest.h>

#include <set>

namespace curvlab {
namespace {

int euler_characteristic(const TriangleMesh& m) {
  std::set<Edge> edges;
  for (const auto& t : m.triangles) {
    for (int k = 0; k < 3; ++k) {
      int a = t[std::size_t(k)], b = t[std::size_t((k + 1) % 3)];
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return int(m.vertices.size()) - int(edges.size()) + int(m.triangles.size());
}

TriangleMesh disk(const PolylineCurve& c, int res) {
  return build_initial_mesh(std::span<const PolylineCurve>(&c, 1), Topology::disk, res);
}

TEST(BuildMesh, DiskKeepsBoundaryBitExact) {
  const auto c = gen::random_trig_curve(2, 3, 0.3, 40);
  const auto m = disk(c, 64);
  EXPECT_NO_THROW(validate(m));
  EXPECT_EQ(euler_characteristic(m), 1);
  EXPECT_TRUE(m.orientable);
  EXPECT_TRUE(has_consistent_orientation(m));
  ASSERT_EQ(m.boundary_loops.size(), 1u);
  // Every input vertex appears on the loop unchanged.
  std::size_t found = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (int v : m.boundary_loops[0]) {
      const Vec3& x = m.vertices[std::size_t(v)];
      if (x.x() == c.vertex(i)[0] && x.y() == c.vertex(i)[1] && x.z() == c.vertex(i)[2]) {
        ++found;
        break;
      }
    }
  }
  EXPECT_EQ(found, c.size());
}

TEST(BuildMesh, AnnulusAndMoebius) {
  const auto [a, b] = gen::circle_pair(1.0, 1.0, 0.5, 32);
  const std::vector<PolylineCurve> pair{a, b};
  const auto ann = build_initial_mesh(pair, Topology::annulus, 32);
  EXPECT_EQ(ann.boundary_loops.size(), 2u);
  EXPECT_EQ(euler_characteristic(ann), 0);
  EXPECT_TRUE(ann.orientable);

  const auto mc = gen::moebius_boundary(12, 0.1, 0.01);
  const auto mob = build_initial_mesh(std::span<const PolylineCurve>(&mc, 1), Topology::moebius, 48);
  EXPECT_EQ(mob.boundary_loops.size(), 1u);
  EXPECT_EQ(euler_characteristic(mob), 0);
  EXPECT_FALSE(mob.orientable);
  EXPECT_FALSE(has_consistent_orientation(mob));
  EXPECT_FALSE(mob.twist_edges.empty());
  EXPECT_EQ(orientation_cocycle(mob).size(), mob.twist_edges.size());
}

TEST(BuildMesh, TopologyMismatchesAreRejected) {
  const auto c = gen::circle(32);
  const std::vector<PolylineCurve> one{c};
  EXPECT_THROW(build_initial_mesh(one, Topology::annulus, 32), Error);
  const std::vector<PolylineCurve> two{c, gen::circle(32, 0.5)};
  EXPECT_THROW(build_initial_mesh(two, Topology::disk, 32), Error);
  const auto open = gen::random_open_curve(0, 2, 0.2, 16);
  EXPECT_THROW(build_initial_mesh(std::span<const PolylineCurve>(&open, 1), Topology::disk, 32), Error);
  EXPECT_THROW(disk(c, 2), Error);
  try {
    build_initial_mesh(one, Topology::moebius, 32);
  } catch (const Error& e) {
    ADD_FAILURE() << "single loop is a valid Moebius input: " << e.what();
  }
  try {
    build_initial_mesh(two, Topology::disk, 32);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::incompatible_topology);
  }
}

TEST(Validate, RejectsBrokenMeshes) {
  auto m = disk(gen::circle(16), 16);
  {
    auto bad = m;
    bad.triangles[0][1] = bad.triangles[0][0];
    EXPECT_THROW(validate(bad), Error);
  }
  {
    auto bad = m;
    bad.triangles.push_back(bad.triangles[0]);
    EXPECT_THROW(validate(bad), Error);
  }
  {
    // Orientability is intrinsic: one reversed triangle is still a disk.
    auto flipped = m;
    std::swap(flipped.triangles[0][0], flipped.triangles[0][1]);
    EXPECT_NO_THROW(validate(flipped));
  }
  {
    auto bad = m;
    bad.triangles[0][2] = int(bad.vertices.size());
    EXPECT_THROW(validate(bad), Error);
  }
  {
    auto bad = m;
    bad.boundary_loops[0].pop_back();
    EXPECT_THROW(validate(bad), Error);
  }
  {
    auto bad = m;
    bad.vertices[0].x() = std::nan("");
    EXPECT_THROW(validate(bad), Error);
  }
  {
    auto bad = m;
    bad.orientable = false;
    EXPECT_THROW(validate(bad), Error);
  }
}

TEST(Validate, MoebiusWitnessMustMatch) {
  const auto mc = gen::moebius_boundary(12, 0.1, 0.01);
  auto mob = build_initial_mesh(std::span<const PolylineCurve>(&mc, 1), Topology::moebius, 24);
  EXPECT_NO_THROW(validate(mob));
  mob.twist_edges.pop_back();
  EXPECT_THROW(validate(mob), Error);
}

TEST(Density, FlatSquareLaws) {
  const auto m = disk(gen::unit_square(), 32);
  EXPECT_NEAR(surface_area(m), 1.0, 1e-12);
  EXPECT_LT(planarity_residual(m), 1e-15);
  const auto mask = m.boundary_mask();
  int corners = 0;
  for (std::size_t v = 0; v < m.vertices.size(); ++v) {
    const double d = vertex_density(m, int(v));
    if (!mask[v]) {
      EXPECT_NEAR(d, 1.0, 1e-6);
      EXPECT_NEAR(angle_defect(m, int(v)), 0.0, 1e-6);
      EXPECT_EQ(boundary_turning_angle(m, int(v)), -1.0);
      continue;
    }
    const Vec3& x = m.vertices[v];
    const bool corner = (x.x() == 0.0 || x.x() == 1.0) && (x.y() == 0.0 || x.y() == 1.0);
    if (corner) {
      ++corners;
      EXPECT_NEAR(d, 0.25, 1e-6);
      EXPECT_NEAR(boundary_turning_angle(m, int(v)), kPi / 2, 1e-12);
    } else {
      EXPECT_NEAR(d, 0.5, 1e-6);
      EXPECT_NEAR(boundary_turning_angle(m, int(v)), 0.0, 1e-12);
    }
  }
  EXPECT_EQ(corners, 4);
}

TEST(Topology, StringsRoundTrip) {
  for (auto t : {Topology::disk, Topology::annulus, Topology::moebius}) {
    EXPECT_EQ(topology_from_string(to_string(t)), t);
  }
  EXPECT_EQ(loop_count(Topology::annulus), 2u);
  EXPECT_THROW(topology_from_string("torus"), Error);
}

TEST(Mesh, LoopCurvesFollowTheBoundary) {
  const auto c = gen::circle(24);
  const auto m = disk(c, 24);
  const auto loop = m.loop_curve(0);
  EXPECT_TRUE(loop.closed());
  EXPECT_NEAR(arclength(loop), arclength(c), 1e-12);
  EXPECT_NEAR(total_curvature(loop), kTwoPi, 1e-9);
  EXPECT_NEAR(m.scale(), 2.0 * std::sqrt(2.0), 1e-12);
}

}  // namespace
}  // namespace curvlab
