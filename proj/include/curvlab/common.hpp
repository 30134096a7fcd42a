#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace curvlab {

using Vec = Eigen::VectorXd;
using Vec3 = Eigen::Vector3d;

/// Vertex coordinates stored one coordinate per row (dim x n, row-major), so
/// each row is a contiguous array over vertices.
using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  invalid_curve,
  no_exterior_angle,
  degenerate_chord,
  index_order,
  refinement_failure,
  pathological_curve,
  base_point_on_curve,
  projection_undefined,
  unsupported,
  invalid_mesh,
  incompatible_topology,
  solver_degenerate,
  invalid_argument,
  io_error,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Angle in [0, pi] between two nonzero vectors. Uses the half-angle form
/// 2*atan2(|a^ - b^|, |a^ + b^|), which stays accurate near 0 and near pi in
/// any dimension.
template <typename A, typename B>
double angle_between(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  const auto ua = a / na;
  const auto ub = b / nb;
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

/// Distance from point q to the closed segment [a, b].
template <typename Q, typename A, typename B>
double point_segment_distance(const Eigen::MatrixBase<Q>& q, const Eigen::MatrixBase<A>& a,
                              const Eigen::MatrixBase<B>& b) {
  const Eigen::VectorXd ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0.0 ? (q - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - q).norm();
}

}  // namespace curvlab
