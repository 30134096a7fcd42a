#include "curvlab/intgeom.hpp"

#include "curvlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace curvlab {

DirectionStream::DirectionStream(int dim, std::uint64_t seed) : dim_(dim), rng_(seed) {
  if (dim < 2) throw Error(ErrorCode::invalid_argument, "direction dimension must be >= 2");
}

Vec DirectionStream::next() {
  Vec v(dim_);
  for (;;) {
    for (int d = 0; d < dim_; ++d) v[d] = normal_(rng_);
    const double norm = v.norm();
    if (norm > 1e-8) return v / norm;
  }
}

DirectionSample sample_directions(int dim, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "need at least one direction");
  DirectionStream stream(dim, seed);
  DirectionSample out{dim, seed, {}};
  out.directions.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.directions.push_back(stream.next());
  return out;
}

namespace {

// Evaluates v.(x - origin) on every vertex and hands the values to a counter.
class Projector {
 public:
  Projector(const PolylineCurve& curve, const Vec& origin)
      : curve_(curve), origin_(origin), values_(curve.size()) {}

  const std::vector<double>& project(const Vec& v) {
    const auto& k = kernels::active_kernels();
    const auto& c = curve_.coords();
    k.project(c.data(), static_cast<std::size_t>(c.cols()), static_cast<std::size_t>(c.rows()),
              curve_.size(), v.data(), origin_.data(), values_.data());
    return values_;
  }

 private:
  const PolylineCurve& curve_;
  Vec origin_;
  std::vector<double> values_;
};

std::optional<int> extrema_of(const PolylineCurve& curve, const std::vector<double>& f) {
  const auto& k = kernels::active_kernels();
  const double tol = 1e-12 * k.max_abs(f.data(), f.size());
  const int c = k.count_extrema(f.data(), f.size(), curve.closed(), tol);
  if (c == kernels::kDegenerate) return std::nullopt;
  return c;
}

std::optional<int> zeros_of(const PolylineCurve& curve, const std::vector<double>& f) {
  const auto& k = kernels::active_kernels();
  const double tol = 1e-12 * k.max_abs(f.data(), f.size());
  const int c = k.count_sign_changes(f.data(), f.size(), curve.closed(), tol);
  if (c == kernels::kDegenerate) return std::nullopt;
  return c;
}

// Extrema counts do not depend on the origin; the centroid keeps the tie
// tolerance translation invariant.
Vec centroid(const PolylineCurve& curve) { return curve.coords().rowwise().mean(); }

template <typename CountFn>
EstimateReport estimate(const PolylineCurve& curve, const Vec& origin, std::size_t n,
                        std::uint64_t seed, const EstimateOptions& options, CountFn count) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "need at least one direction");
  DirectionStream stream(curve.dim(), seed);
  std::vector<Vec> dirs;
  dirs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) dirs.push_back(stream.next());

  // Counts of -1 mark degenerate directions; filled independently per chunk.
  std::vector<int> counts(n, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    Projector proj(curve, origin);
    for (std::size_t i = begin; i < end; ++i) counts[i] = count(proj.project(dirs[i])).value_or(-1);
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, 64u));
  if (threads == 1 || n < 1024) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = std::min(n, t * chunk);
      const std::size_t e = std::min(n, b + chunk);
      pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  // Replacements come from the continuation of the stream, in index order.
  const auto max_rejects =
      static_cast<std::size_t>(std::floor(options.max_reject_fraction * double(n)));
  std::size_t rejected = 0;
  Projector proj(curve, origin);
  for (std::size_t i = 0; i < n; ++i) {
    while (counts[i] < 0) {
      ++rejected;
      if (rejected > max_rejects) {
        throw Error(ErrorCode::pathological_curve,
                    "more than " + std::to_string(options.max_reject_fraction * 100.0) +
                        "% of directions are degenerate");
      }
      counts[i] = count(proj.project(stream.next())).value_or(-1);
    }
  }

  // Integer sums are exact, so the reduction is order independent.
  long long sum = 0;
  long long sum_sq = 0;
  for (int c : counts) {
    sum += c;
    sum_sq += static_cast<long long>(c) * c;
  }
  const double nd = double(n);
  const double mean_count = double(sum) / nd;
  double var = 0.0;
  if (n > 1) var = std::max(0.0, (double(sum_sq) - nd * mean_count * mean_count) / (nd - 1.0));
  EstimateReport r;
  r.mean = kPi * mean_count;
  r.std_error = kPi * std::sqrt(var / nd);
  r.count = n;
  r.seed = seed;
  r.rejected = rejected;
  return r;
}

}  // namespace

void require_off_curve(const PolylineCurve& curve, const Vec& p) {
  if (p.size() != curve.dim()) throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  const double tol = 1e-12 * diameter(curve);
  for (std::size_t i = 0; i < curve.edge_count(); ++i) {
    if (point_segment_distance(p, curve.vertex(i), curve.vertex(curve.next(i))) <= tol) {
      throw Error(ErrorCode::base_point_on_curve, "base point lies on the curve");
    }
  }
}

std::optional<int> count_local_extrema(const PolylineCurve& curve, const Vec& v) {
  if (v.size() != curve.dim()) throw Error(ErrorCode::invalid_argument, "direction dimension mismatch");
  Projector proj(curve, centroid(curve));
  return extrema_of(curve, proj.project(v));
}

std::optional<int> count_zeros(const PolylineCurve& curve, const Vec& v, const Vec& p) {
  if (v.size() != curve.dim() || p.size() != curve.dim()) {
    throw Error(ErrorCode::invalid_argument, "dimension mismatch");
  }
  Projector proj(curve, p);
  return zeros_of(curve, proj.project(v));
}

std::optional<bool> injection_check(const PolylineCurve& curve, const Vec& v, const Vec& p) {
  const auto zeros = count_zeros(curve, v, p);
  const auto extrema = count_local_extrema(curve, v);
  if (!zeros || !extrema) return std::nullopt;
  return *zeros <= *extrema;
}

EstimateReport milnor_total_curvature(const PolylineCurve& curve, std::size_t n,
                                      std::uint64_t seed, const EstimateOptions& options) {
  if (!curve.closed()) throw Error(ErrorCode::unsupported, "Milnor estimator needs a closed curve");
  return estimate(curve, centroid(curve), n, seed, options,
                  [&](const std::vector<double>& f) { return extrema_of(curve, f); });
}

EstimateReport crofton_projected_length(const PolylineCurve& curve, const Vec& p, std::size_t n,
                                        std::uint64_t seed, const EstimateOptions& options) {
  require_off_curve(curve, p);
  return estimate(curve, p, n, seed, options,
                  [&](const std::vector<double>& f) { return zeros_of(curve, f); });
}

}  // namespace curvlab
