#pragma once

// Monte-Carlo integral geometry over uniformly distributed directions: the
// extrema-count formula for total curvature and the zero-count formula for
// the length of a radial projection.

#include "curvlab/curve.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace curvlab {

struct DirectionSample {
  int dim = 0;
  std::uint64_t seed = 0;
  std::vector<Vec> directions;

  std::size_t count() const noexcept { return directions.size(); }
};

struct EstimateReport {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::size_t rejected = 0;

  friend bool operator==(const EstimateReport&, const EstimateReport&) = default;
};

/// Endless stream of uniform unit vectors (normalized Gaussians), fixed by
/// the seed.
class DirectionStream {
 public:
  DirectionStream(int dim, std::uint64_t seed);
  Vec next();

 private:
  int dim_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

DirectionSample sample_directions(int dim, std::size_t n, std::uint64_t seed);

/// Strict local extrema of x -> v.x along the vertex sequence (cyclic for
/// closed curves; both endpoints count on open curves). nullopt when v is
/// degenerate: adjacent vertices tie within 1e-12 * max |v.x|.
std::optional<int> count_local_extrema(const PolylineCurve& curve, const Vec& v);

/// Sign changes of x -> v.(x - p) along the vertex sequence. nullopt when a
/// vertex lies within 1e-12 * max |v.(x - p)| of the hyperplane.
std::optional<int> count_zeros(const PolylineCurve& curve, const Vec& v, const Vec& p);

/// zeros <= extrema for a direction generic for both counts.
std::optional<bool> injection_check(const PolylineCurve& curve, const Vec& v, const Vec& p);

struct EstimateOptions {
  unsigned threads = 1;
  double max_reject_fraction = 0.01;
};

/// pi times the mean extrema count over n uniform directions. Degenerate
/// directions are replaced by further draws from the same stream.
EstimateReport milnor_total_curvature(const PolylineCurve& curve, std::size_t n,
                                      std::uint64_t seed, const EstimateOptions& options = {});

/// pi times the mean zero count of v.(x - p), estimating the length of the
/// radial projection of the curve from p.
EstimateReport crofton_projected_length(const PolylineCurve& curve, const Vec& p, std::size_t n,
                                        std::uint64_t seed, const EstimateOptions& options = {});

/// Throws base_point_on_curve if p lies on the curve (within 1e-12 * diam).
void require_off_curve(const PolylineCurve& curve, const Vec& p);

}  // namespace curvlab
