#include "curvlab/curve.hpp"
#include "curvlab/generators.hpp"

#include <gtest/gtest.h>

#include <array>
#include <random>

namespace curvlab {
namespace {

Vec v3(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

PolylineCurve polyline(std::initializer_list<Vec> pts, bool closed) {
  return PolylineCurve::from_points(std::vector<Vec>(pts), closed);
}

Vec rotate(const Vec& x) {
  // Fixed rotation about a tilted axis (Rodrigues).
  Eigen::Vector3d axis(1.0, 2.0, -0.5);
  axis.normalize();
  const Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, axis).toRotationMatrix();
  return R * Eigen::Vector3d(x[0], x[1], x[2]);
}

TEST(PolylineCurve, RejectsInvalidInput) {
  EXPECT_THROW(polyline({v3(0, 0, 0), v3(1, 0, 0)}, true), Error);
  EXPECT_THROW(polyline({v3(0, 0, 0)}, false), Error);
  EXPECT_THROW(polyline({v3(0, 0, 0), v3(0, 0, 0), v3(1, 0, 0)}, false), Error);
  EXPECT_THROW(polyline({v3(0, 0, 0), v3(1, 0, 0), v3(std::nan(""), 0, 0)}, true), Error);
  // A closed curve must not repeat its first vertex.
  EXPECT_THROW(polyline({v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(0, 0, 0)}, true), Error);
}

TEST(PolylineCurve, MergeNearDuplicatesIsOptIn) {
  std::vector<Vec> pts{v3(0, 0, 0), v3(1, 0, 0), v3(1, 1e-15, 0), v3(0, 1, 0)};
  EXPECT_THROW(PolylineCurve::from_points(pts, true), Error);
  const auto merged = merge_near_duplicates(pts, true, 1e-12);
  EXPECT_EQ(merged.size(), 3u);
  EXPECT_NO_THROW(PolylineCurve::from_points(merged, true));
}

TEST(TotalCurvature, ConvexPolygonIsTwoPi) {
  EXPECT_NEAR(total_curvature(gen::unit_square()), kTwoPi, 1e-12);
  EXPECT_NEAR(total_curvature(gen::convex_polygon(7, {1.0, 1.3, 0.9})), kTwoPi, 1e-9);
  for (std::size_t n : {3, 5, 17, 64, 1000}) EXPECT_NEAR(total_curvature(gen::circle(n)), kTwoPi, 1e-9);
}

TEST(TotalCurvature, TrefoilExceedsFourPi) {
  EXPECT_GT(total_curvature(gen::torus_knot(2, 3, 512)), 2.0 * kTwoPi);
}

TEST(TotalCurvature, OpenCurveCountsInteriorVerticesOnly) {
  const auto c = polyline({v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(2, 1, 0)}, false);
  EXPECT_NEAR(total_curvature(c), kPi, 1e-15);
}

TEST(ExteriorAngle, Examples) {
  EXPECT_NEAR(exterior_angle(gen::unit_square(), 2), kPi / 2, 1e-15);
  const auto straight = polyline({v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0)}, false);
  EXPECT_EQ(exterior_angle(straight, 1), 0.0);
  EXPECT_THROW(exterior_angle(straight, 0), Error);
  EXPECT_THROW(exterior_angle(straight, 2), Error);
  double prev = 0.0;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-9}) {
    const auto cusp = polyline({v3(0, 0, 0), v3(1, 0, 0), v3(0, eps, 0)}, false);
    const double a = exterior_angle(cusp, 1);
    EXPECT_GT(a, prev);
    EXPECT_NEAR(a, kPi, 2.0 * eps);
    prev = a;
  }
}

TEST(ExteriorAngle, InvariantUnderRigidMotionAndScaling) {
  const auto c = gen::random_trig_curve(11, 3, 0.4, 64);
  std::vector<Vec> moved;
  for (const auto& p : c.points()) moved.push_back(3.7 * rotate(p) + v3(1, -2, 5));
  const auto m = PolylineCurve::from_points(moved, true);
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(exterior_angle(c, i), exterior_angle(m, i), 1e-12);
}

TEST(OneSidedTangents, SquareCornerAndStraightVertex) {
  const auto c = polyline({v3(-1, 0, 0), v3(0, 0, 0), v3(0, 1, 0)}, false);
  const auto t = one_sided_tangents(c, 1);
  EXPECT_TRUE(t.t_minus.isApprox(v3(1, 0, 0)));
  EXPECT_TRUE(t.t_plus.isApprox(v3(0, 1, 0)));
  const auto s = polyline({v3(0, 0, 0), v3(1, 1, 1), v3(2, 2, 2)}, false);
  const auto u = one_sided_tangents(s, 1);
  EXPECT_NEAR((u.t_plus - u.t_minus).norm(), 0.0, 1e-15);
  EXPECT_NEAR(u.t_plus.norm(), 1.0, 1e-12);
}

TEST(OneSidedTangents, ConvergeToAnalyticTangentUnderRefinement) {
  // Helix; t_plus at parameter 0 against the analytic unit tangent.
  auto helix = [](double t) { return v3(std::cos(kTwoPi * t), std::sin(kTwoPi * t), 0.5 * t); };
  const Vec exact = v3(0, kTwoPi, 0.5).normalized();
  double prev_err = 1.0;
  for (int n : {32, 64, 128, 256}) {
    std::vector<Vec> pts;
    for (int k = 0; k <= n; ++k) pts.push_back(helix(double(k) / n));
    const auto c = PolylineCurve::from_points(pts, false);
    const double err = (one_sided_tangents(c, 1).t_minus - exact).norm();
    const double h = 1.0 / n;
    EXPECT_LT(err, 10.0 * h);
    EXPECT_LT(err, prev_err);
    prev_err = err;
  }
}

TEST(ChordDirection, ExamplesAndErrors) {
  const auto seg = polyline({v3(0, 0, 0), v3(1, 0, 0)}, false);
  EXPECT_TRUE(chord_direction(seg, 0, 1).isApprox(v3(1, 0, 0)));
  const auto c = gen::circle(8);
  EXPECT_NEAR((chord_direction(c, 0, 4) - v3(-1, 0, 0)).norm(), 0.0, 1e-15);
  EXPECT_THROW(chord_direction(c, 4, 0), Error);
  const auto loop = polyline({v3(0, 0, 0), v3(1, 0, 0), v3(1, 1, 0), v3(0, 0, 0)}, false);
  EXPECT_THROW(chord_direction(loop, 0, 3), Error);
}

TEST(ChordAngle, ConvexPolygonExhaustiveTriples) {
  const auto c = gen::convex_polygon(12, {1.0, 1.05, 0.98, 1.02});
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      for (std::size_t k = j + 1; k < c.size(); ++k) {
        const double ang = angle_between(chord_direction(c, i, j), chord_direction(c, j, k));
        EXPECT_LE(ang, arc_total_curvature(c, i, k) + 1e-9);
      }
    }
  }
}

TEST(ChordAngle, StraightPolylineHasZeroSlack) {
  const auto c = polyline({v3(0, 0, 0), v3(1, 0, 0), v3(2, 0, 0), v3(3, 0, 0), v3(4, 0, 0)}, false);
  const auto r = chord_angle_bound_check(c, 0, 1, 3, 4);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.angle, 0.0);
  EXPECT_EQ(r.slack, 0.0);
  EXPECT_THROW(chord_angle_bound_check(c, 1, 1, 3, 4), Error);
  EXPECT_THROW(chord_angle_bound_check(c, 0, 3, 2, 4), Error);
}

TEST(ChordAngle, QuarterCircleAllQuadruples) {
  std::vector<Vec> pts;
  for (int k = 0; k < 64; ++k) {
    const double t = 0.5 * kPi * k / 63.0;
    pts.push_back(v3(std::cos(t), std::sin(t), 0));
  }
  const auto c = PolylineCurve::from_points(pts, false);
  for (std::size_t a = 0; a < 64; a += 3) {
    for (std::size_t x = a + 1; x < 64; x += 4) {
      for (std::size_t y = x; y < 63; y += 5) {
        for (std::size_t b = y + 1; b < 64; b += 3) {
          EXPECT_GE(chord_angle_bound_check(c, a, x, y, b).slack, 0.0 - 1e-12);
        }
      }
    }
  }
}

TEST(ChordAngle, RandomCurveRandomQuadruples) {
  const auto c = gen::random_trig_curve(3, 4, 0.5, 96);
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<std::size_t> pick(0, c.size() - 1);
  for (int trial = 0; trial < 10000; ++trial) {
    std::array<std::size_t, 4> q{pick(rng), pick(rng), pick(rng), pick(rng)};
    std::sort(q.begin(), q.end());
    if (!(q[0] < q[1] && q[1] <= q[2] && q[2] < q[3])) continue;
    EXPECT_GE(chord_angle_bound_check(c, q[0], q[1], q[2], q[3]).slack, -1e-9);
  }
}

TEST(ChordLength, Examples) {
  const auto seg = polyline({v3(0, 0, 0), v3(0.5, 0, 0), v3(1, 0, 0)}, false);
  const auto r = chord_length_bound_check(seg, 0, 2);
  EXPECT_EQ(r.status, BoundStatus::holds);
  EXPECT_NEAR(r.ratio, 1.0, 1e-15);
  EXPECT_NEAR(r.bound, 1.0, 1e-15);

  // Shallow circular arc of total turning 0.3: closed-form length/chord.
  std::vector<Vec> pts;
  const int n = 200;
  const double span = 0.3 * double(n) / double(n - 1);  // interior turning sums to 0.3
  for (int k = 0; k <= n; ++k) {
    const double t = span * k / n;
    pts.push_back(v3(std::sin(t), 1 - std::cos(t), 0));
  }
  const auto arc = PolylineCurve::from_points(pts, false);
  const auto s = chord_length_bound_check(arc, 0, std::size_t(n));
  EXPECT_EQ(s.status, BoundStatus::holds);
  EXPECT_NEAR(s.kappa, 0.3, 1e-3);
  EXPECT_LE(s.ratio, 1.0 / std::cos(0.6));
  EXPECT_NEAR(s.ratio, (span / 2) / std::sin(span / 2), 1e-4);

  std::vector<Vec> big;
  for (int k = 0; k <= 60; ++k) {
    const double t = (kPi / 3) * 61.0 / 59.0 * k / 60.0;
    big.push_back(v3(std::cos(t), std::sin(t), 0));
  }
  const auto b = PolylineCurve::from_points(big, false);
  EXPECT_EQ(chord_length_bound_check(b, 0, 60).status, BoundStatus::not_applicable);
}

TEST(Rectifiability, CircleAndDoubledCircle) {
  EXPECT_NEAR(rectifiability_ratio(gen::circle(4096)), 2.0, 1e-5);
  EXPECT_NEAR(rectifiability_ratio(gen::doubled_circle(512, 1e-6)), 2.0, 1e-3);
}

TEST(Rectifiability, RandomCurvesStayAboveOracleConstant) {
  // Oracle constant for R^3: the mean of |u.t| over uniform unit u is 1/2.
  std::mt19937_64 rng(0);
  std::normal_distribution<double> g;
  double mean = 0.0;
  const int m = 200000;
  for (int k = 0; k < m; ++k) {
    Vec u = v3(g(rng), g(rng), g(rng));
    mean += std::abs(u.normalized()[2]);
  }
  mean /= m;
  ASSERT_NEAR(mean, 0.5, 5e-3);
  double worst = 1e9;
  for (std::uint64_t s = 0; s < 10000; ++s) {
    const auto c = gen::random_trig_curve(s, 5, 1.0, 24);
    worst = std::min(worst, rectifiability_ratio(c));
  }
  EXPECT_GE(worst, 0.5);
}

TEST(Lengths, Examples) {
  const auto sq = gen::unit_square();
  EXPECT_DOUBLE_EQ(arclength(sq), 4.0);
  EXPECT_NEAR(diameter(sq), std::sqrt(2.0), 1e-15);
  const auto seg = polyline({v3(0, 0, 0), v3(3, 4, 0)}, false);
  EXPECT_DOUBLE_EQ(arclength(seg), 5.0);
  EXPECT_DOUBLE_EQ(diameter(seg), 5.0);
  const std::size_t n = 4096;
  EXPECT_NEAR(arclength(gen::circle(n)), 2.0 * n * std::sin(kPi / n), 1e-12);
  EXPECT_NEAR(arclength(gen::circle(n)), kTwoPi, 1e-5);
  EXPECT_NEAR(arc_length(sq, 1, 3), 2.0, 1e-15);
}

TEST(MonotoneRefinement, InsertingVerticesNeverLowersTotalCurvature) {
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto c = gen::random_trig_curve(5, 3, 0.4, 32);
  double tc = total_curvature(c);
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = c.points();
    std::size_t i = std::size_t(u(rng) * double(pts.size())) % pts.size();
    const Vec a = pts[i];
    const Vec b = pts[(i + 1) % pts.size()];
    // A vertex off the chord, on the far side of the curve from the
    // centroid, as an inscribed refinement of some finer curve.
    Vec mid = a + (0.2 + 0.6 * u(rng)) * (b - a);
    mid[2] += 0.01 * (u(rng) - 0.5);
    pts.insert(pts.begin() + std::ptrdiff_t(i + 1), mid);
    c = PolylineCurve::from_points(pts, true);
    const double next = total_curvature(c);
    EXPECT_GE(next, tc - 1e-12);
    tc = next;
  }
}

TEST(Refinement, CircleEllipseTrefoil) {
  auto circle = [](double t) { return v3(std::cos(kTwoPi * t), std::sin(kTwoPi * t), 0); };
  EXPECT_NEAR(total_curvature(refine_to_tolerance(circle, true, 1e-6)), kTwoPi, 1e-6);
  auto ellipse = [](double t) { return v3(2 * std::cos(kTwoPi * t), std::sin(kTwoPi * t), 0); };
  EXPECT_NEAR(total_curvature(refine_to_tolerance(ellipse, true, 1e-6)), kTwoPi, 1e-6);
  auto trefoil = [](double t) {
    const double s = kTwoPi * t;
    const double rad = 2 + std::cos(3 * s);
    return v3(rad * std::cos(2 * s), rad * std::sin(2 * s), std::sin(3 * s));
  };
  const auto tr = refine_to_tolerance(trefoil, true, 1e-4);
  EXPECT_GT(total_curvature(tr), 2.0 * kTwoPi);
  RefinementOptions tight;
  tight.max_doublings = 2;
  EXPECT_THROW(refine_to_tolerance(trefoil, true, 1e-12, tight), Error);
}

TEST(Fenchel, GeneratedClosedCurvesAtLeastTwoPi) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    EXPECT_GE(total_curvature(gen::random_trig_curve(s, 4, 0.6, 48)), kTwoPi - 1e-9);
  }
}

TEST(ChordAngle, GeneratorOutputsHaveNonnegativeSlack) {
  const std::vector<PolylineCurve> curves{gen::circle(40), gen::doubled_circle(20, 0.05),
                                          gen::moebius_boundary(12, 0.1, 0.01), gen::torus_knot(2, 3, 60),
                                          gen::random_trig_curve(1, 3, 0.5, 40)};
  for (const auto& c : curves) {
    const std::size_t n = c.size();
    for (std::size_t a = 0; a < n; a += 3) {
      for (std::size_t b = a + 2; b < n; b += 5) {
        EXPECT_GE(chord_angle_bound_check(c, a, a + 1, b - 1, b).slack, -1e-9);
      }
    }
  }
}

TEST(EdgeDistance, NonadjacentSeparation) {
  EXPECT_NEAR(min_nonadjacent_edge_distance(gen::unit_square()), 1.0, 1e-15);
  // Figure eight crossing itself in the plane.
  const auto eight = polyline({v3(0, 0, 0), v3(1, 1, 0), v3(1, 0, 0), v3(0, 1, 0)}, true);
  EXPECT_EQ(min_nonadjacent_edge_distance(eight), 0.0);
}

}  // namespace
}  // namespace curvlab
