#include "curvlab/generators.hpp"
#include "curvlab/io.hpp"

#include <gtest/gtest.h>

#include <cstring>
#include <fstream>

namespace curvlab {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("curvlab_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

bool same_bits(const PointMatrix& a, const PointMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * std::size_t(a.size())) == 0;
}

TEST_F(IoTest, CurveRoundTripIsBitwise) {
  const auto c = gen::random_trig_curve(3, 4, 0.7, 77);
  io::write_curve(dir_ / "c.json", c);
  const auto d = io::read_curve(dir_ / "c.json");
  EXPECT_EQ(d.closed(), c.closed());
  EXPECT_TRUE(same_bits(c.coords(), d.coords()));
  const auto o = gen::random_open_curve(1, 2, 0.3, 20, 2);
  EXPECT_TRUE(same_bits(io::curve_from_json(io::curve_to_json(o)).coords(), o.coords()));
}

TEST_F(IoTest, MultiComponentFiles) {
  const auto [a, b] = gen::circle_pair(1.0, 0.7, 0.4, 16);
  io::write_curves(dir_ / "pair.json", {a, b});
  const auto back = io::read_curves(dir_ / "pair.json");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_TRUE(same_bits(back[1].coords(), b.coords()));
  io::write_curve(dir_ / "one.json", a);
  EXPECT_EQ(io::read_curves(dir_ / "one.json").size(), 1u);
}

TEST_F(IoTest, NonFiniteAndMalformedCurvesAreRejected) {
  // nlohmann writes NaN as null.
  auto j = io::curve_to_json(gen::unit_square());
  j["vertices"][2][0] = std::nan("");
  io::write_json(dir_ / "nan.json", j);
  try {
    io::read_curve(dir_ / "nan.json");
    ADD_FAILURE() << "NaN accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_curve);
  }
  io::write_text(dir_ / "bad.json", "{\"dim\": 3, \"closed\": true, \"vertices\": [[0,0]]}");
  EXPECT_THROW(io::read_curve(dir_ / "bad.json"), Error);
  io::write_text(dir_ / "junk.json", "not json");
  EXPECT_THROW(io::read_curve(dir_ / "junk.json"), Error);
  EXPECT_THROW(io::read_curve(dir_ / "missing.json"), Error);
}

TEST_F(IoTest, MeshRoundTripWithSidecar) {
  const auto mc = gen::moebius_boundary(12, 0.1, 0.01);
  const auto m = build_initial_mesh(std::span<const PolylineCurve>(&mc, 1), Topology::moebius, 24);
  const fs::path obj = dir_ / "m.obj";
  io::write_mesh(obj, m);
  EXPECT_EQ(io::sidecar_path(obj), dir_ / "m.mesh.json");
  ASSERT_TRUE(fs::exists(dir_ / "m.mesh.json"));
  const auto r = io::read_mesh(obj);
  ASSERT_EQ(r.vertices.size(), m.vertices.size());
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    EXPECT_EQ(std::memcmp(r.vertices[i].data(), m.vertices[i].data(), 3 * sizeof(double)), 0);
  }
  EXPECT_EQ(r.triangles, m.triangles);
  EXPECT_EQ(r.boundary_loops, m.boundary_loops);
  EXPECT_EQ(r.topology, Topology::moebius);
  EXPECT_FALSE(r.orientable);
  EXPECT_EQ(r.twist_edges.size(), m.twist_edges.size());
}

TEST_F(IoTest, MeshReaderErrors) {
  const auto c = gen::circle(12);
  const auto m = build_initial_mesh(std::span<const PolylineCurve>(&c, 1), Topology::disk, 12);
  const fs::path obj = dir_ / "d.obj";
  io::write_mesh(obj, m);
  fs::remove(io::sidecar_path(obj));
  EXPECT_THROW(io::read_mesh(obj), Error);
  io::write_mesh(obj, m);
  {
    std::ofstream out(obj, std::ios::app);
    out << "f 1 2 99999\n";
  }
  EXPECT_THROW(io::read_mesh(obj), Error);
  io::write_mesh(obj, m);
  auto side = io::mesh_sidecar(m);
  side["topology"] = "annulus";
  io::write_json(io::sidecar_path(obj), side);
  try {
    io::read_mesh(obj);
    ADD_FAILURE() << "inconsistent sidecar accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_mesh);
  }
}

TEST(IoCsv, HeadersAndRows) {
  DensityProfile p;
  p.radii = {0.5, 1.0};
  p.theta_surface = {1.0, 0.9};
  p.theta_cone = {0.0, 0.1};
  p.theta_total = {1.0, 1.0};
  const auto csv = io::profile_csv(p);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,theta_surface,theta_cone,theta_total");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  const auto sp = radial_project(gen::circle(8), Vec::Zero(3));
  const auto arcs = io::arc_lengths_csv(sp);
  EXPECT_EQ(arcs.substr(0, arcs.find('\n')), "index,arc_length");
  EXPECT_EQ(io::to_json(sp)["points"].size(), 8u);
}

}  // namespace
}  // namespace curvlab
