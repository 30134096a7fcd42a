#include "curvlab/generators.hpp"
#include "curvlab/projcone.hpp"

#include <gtest/gtest.h>

namespace curvlab {
namespace {

TEST(Generators, DoubledCircle) {
  EXPECT_NEAR(total_curvature(gen::doubled_circle(64, 0.0)), 2.0 * kTwoPi, 1e-9);
  const auto c = gen::doubled_circle(64, 0.05);
  EXPECT_EQ(c.size(), 128u);
  EXPECT_GT(min_nonadjacent_edge_distance(c), 0.0);
  // Pushing the copies apart only perturbs the total curvature.
  EXPECT_NEAR(total_curvature(c), 2.0 * kTwoPi, 1e-2);
}

TEST(Generators, MoebiusBoundary) {
  const auto c = gen::moebius_boundary(12, 0.1, 0.01);
  EXPECT_TRUE(c.closed());
  EXPECT_LT(total_curvature(c), 2.0 * kTwoPi);
  EXPECT_GT(min_nonadjacent_edge_distance(c), 0.0);
  // The xy shadow winds twice around its disk center.
  const Vec ctr = gen::moebius_shadow_center(12, 0.1, 0.01);
  double winding = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec a = c.vertex(i) - ctr;
    const Vec b = c.vertex(c.next(i)) - ctr;
    winding += std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
  }
  EXPECT_NEAR(std::abs(winding), 2.0 * kTwoPi, 1e-9);
  EXPECT_THROW(gen::moebius_boundary(12, 0.1, 0.0), Error);
}

TEST(Generators, MoebiusParameterBox) {
  // Up to n = 20 the whole box is admissible; for larger n a shift of 0.05 is
  // a sizeable fraction of an edge and the construction refuses TC >= 4 pi.
  int built = 0;
  for (std::size_t n : {4, 8, 12, 16, 20, 24}) {
    for (double tilt : {0.01, 0.1, 0.3}) {
      for (double sep : {0.001, 0.01, 0.03, 0.05}) {
        try {
          const auto c = gen::moebius_boundary(n, tilt, sep);
          ++built;
          EXPECT_LT(total_curvature(c), 2.0 * kTwoPi);
          EXPECT_GT(min_nonadjacent_edge_distance(c), 0.0);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::invalid_argument);
          EXPECT_GT(n, 20u);
          EXPECT_GT(sep, 0.03);
        }
      }
    }
  }
  EXPECT_GE(built, 69);
  // Shrinking tilt and separation approaches the doubled polygon.
  EXPECT_NEAR(total_curvature(gen::moebius_boundary(12, 1e-5, 1e-6)), 2.0 * kTwoPi, 1e-3);
}

TEST(Generators, RandomCurvesAreSeeded) {
  const auto a = gen::random_trig_curve(5, 3, 0.3, 64);
  const auto b = gen::random_trig_curve(5, 3, 0.3, 64);
  const auto c = gen::random_trig_curve(6, 3, 0.3, 64);
  EXPECT_EQ(a.coords(), b.coords());
  EXPECT_NE(a.coords(), c.coords());
  const auto o = gen::random_open_curve(5, 3, 0.3, 40);
  EXPECT_FALSE(o.closed());
  EXPECT_EQ(o.size(), 40u);
  EXPECT_EQ(gen::random_trig_curve(1, 2, 0.2, 32, 4).dim(), 4);
}

TEST(Generators, CirclePairAndRounding) {
  const auto [a, b] = gen::circle_pair(1.0, 0.8, 0.5, 32);
  EXPECT_NEAR(a.vertex(0)[2], -0.25, 1e-15);
  EXPECT_NEAR(b.vertex(0)[2], 0.25, 1e-15);
  const auto r = gen::round_corners(gen::unit_square(), 0.2, 8);
  EXPECT_NEAR(total_curvature(r), kTwoPi, 1e-12);
  EXPECT_GT(r.size(), 4u);
  EXPECT_THROW(gen::round_corners(gen::unit_square(), 0.8, 8), Error);
}

TEST(Generators, TorusKnots) {
  EXPECT_GT(total_curvature(gen::torus_knot(2, 3, 256)), 2.0 * kTwoPi);
  EXPECT_GT(total_curvature(gen::torus_knot(2, 5, 256)), 2.0 * kTwoPi);
  EXPECT_GT(min_nonadjacent_edge_distance(gen::torus_knot(2, 3, 256)), 0.0);
}

}  // namespace
}  // namespace curvlab
