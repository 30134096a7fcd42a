#include "curvlab/diagnostics.hpp"
#include "curvlab/generators.hpp"

#include <gtest/gtest.h>

namespace curvlab {
namespace {

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

TriangleMesh disk(const PolylineCurve& c, int res) {
  return build_initial_mesh(std::span<const PolylineCurve>(&c, 1), Topology::disk, res);
}

TEST(Verdicts, CircleHoldsEverywhere) {
  const auto c = gen::circle(64);
  const auto centre = verify_projection_bound(c, Vec::Zero(3));
  EXPECT_TRUE(centre.holds);
  EXPECT_NEAR(centre.slack, 0.0, 1e-12);
  EXPECT_LT(centre.context.at("coplanarity_residual").get<double>(), 1e-15);
  const auto off = verify_projection_bound(c, v3(0.2, 0.1, 0.4));
  EXPECT_TRUE(off.holds);
  EXPECT_GT(off.slack, 0.0);
  EXPECT_TRUE(fenchel_screen(c).holds);
  EXPECT_TRUE(unknotted_certificate(c).certified);
  for (std::size_t v = 0; v < c.size(); v += 8) EXPECT_TRUE(verify_boundary_projection_bound(c, v).holds);
}

TEST(Verdicts, HoldsIsSlackAgainstTolerance) {
  EXPECT_TRUE(TheoremVerdict::make("x", -1e-10, 1e-9).holds);
  EXPECT_FALSE(TheoremVerdict::make("x", -2e-9, 1e-9).holds);
  EXPECT_TRUE(TheoremVerdict::make("x", 0.0, 0.0).holds);
}

TEST(Certificates, TrefoilAndMoebius) {
  const auto t = unknotted_certificate(gen::torus_knot(2, 3, 256));
  EXPECT_FALSE(t.certified);
  EXPECT_GT(t.tc, 2.0 * kTwoPi);
  const auto m = gen::moebius_boundary(12, 0.1, 0.01);
  EXPECT_TRUE(unknotted_certificate(m).certified);
  EXPECT_TRUE(fenchel_screen(m).holds);
  EXPECT_FALSE(unknotted_certificate(gen::random_open_curve(0, 2, 0.2, 16)).certified);
}

TEST(Fenchel, TwoComponents) {
  const auto [a, b] = gen::circle_pair(1.0, 1.0, 0.5);
  const std::vector<PolylineCurve> pair{a, b};
  const auto v = fenchel_screen(pair);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.context.at("two_component_total_within_4pi").get<bool>());
  EXPECT_EQ(v.context.at("total_curvature").size(), 2u);
}

TEST(MeshVerdicts, FlatSquare) {
  const auto m = disk(gen::unit_square(), 24);
  const auto mask = m.boundary_mask();
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (mask[v]) {
      const auto c = verify_corner_density(m, int(v));
      EXPECT_TRUE(c.holds) << v;
    }
  }
  int interior = -1;
  for (std::size_t v = 0; v < mask.size() && interior < 0; ++v) if (!mask[v]) interior = int(v);
  EXPECT_THROW(verify_corner_density(m, interior), Error);
  const auto all = verify_density_cone_bound_all(m);
  EXPECT_TRUE(all.holds);
  EXPECT_NEAR(all.slack, 0.0, 1e-6);
  EXPECT_EQ(all.context.at("cone_vertices").get<int>(), all.context.at("interior_vertices").get<int>());
  EXPECT_TRUE(verify_embedded(m).holds);
  EXPECT_EQ(extremal_density_vertices(m).size(), 2u);
}

TEST(MeshVerdicts, MonotonicityOfSyntheticProfiles) {
  DensityProfile p;
  p.radii = {1, 2, 3, 4};
  p.theta_total = {0.5, 0.6, 0.6, 0.7};
  EXPECT_TRUE(verify_monotonicity(p).holds);
  EXPECT_EQ(verify_monotonicity(p).slack, 0.0);
  p.theta_total = {0.5, 0.6, 0.59, 0.7};
  const auto v = verify_monotonicity(p);
  EXPECT_FALSE(v.holds);
  EXPECT_NEAR(v.slack, -0.01, 1e-15);
  EXPECT_EQ(v.context.at("worst_radius").get<double>(), 3.0);
  p.theta_total = {0.5, 0.6, 0.598, 0.7};
  EXPECT_TRUE(verify_monotonicity(p).holds);
}

TEST(Report, AggregateGroupsById) {
  std::vector<TheoremVerdict> vs{TheoremVerdict::make("a", 0.1, 0.0), TheoremVerdict::make("a", -0.2, 0.0),
                                 TheoremVerdict::make("b", 0.0, 0.0)};
  const auto j = aggregate(vs);
  EXPECT_FALSE(j["all_hold"].get<bool>());
  EXPECT_EQ(j["count"].get<int>(), 3);
  EXPECT_EQ(j["theorems"]["a"]["passed"].get<int>(), 1);
  EXPECT_EQ(j["theorems"]["a"]["failed"].get<int>(), 1);
  EXPECT_DOUBLE_EQ(j["theorems"]["a"]["min_slack"].get<double>(), -0.2);
  EXPECT_EQ(j["theorems"]["b"]["verdicts"].size(), 1u);
  EXPECT_TRUE(aggregate({vs[0], vs[2]})["all_hold"].get<bool>());
  const auto one = to_json(vs[1]);
  EXPECT_EQ(one["theorem_id"], "a");
  EXPECT_FALSE(one["holds"].get<bool>());
}

}  // namespace
}  // namespace curvlab
