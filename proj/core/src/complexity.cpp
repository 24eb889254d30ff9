#include "mfgl/complexity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "mfgl/rng.hpp"

namespace mfgl {

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<double>& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (double k : key) {
      h ^= std::bit_cast<std::uint64_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Coordinates rounded to the tolerance grid; adding 0.0 folds -0 into +0.
std::vector<double> quantize(std::span<const double> p) {
  std::vector<double> key(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) key[i] = std::nearbyint(p[i] / kCloudTolerance) + 0.0;
  return key;
}

void require_samples(std::int64_t samples) {
  if (samples < 2) throw InvalidArgument("gaussian width: samples must be >= 2");
}

}  // namespace

GradientCloud make_cloud(int n, std::span<const double> row_major_points) {
  if (n < 1) throw InvalidArgument("make_cloud: n must be positive");
  if (row_major_points.size() % static_cast<std::size_t>(n) != 0) {
    throw InvalidArgument("make_cloud: point data is not a multiple of n");
  }
  GradientCloud cloud;
  cloud.n_ = n;
  std::unordered_set<std::vector<double>, KeyHash> seen;
  const auto un = static_cast<std::size_t>(n);
  auto add = [&](std::span<const double> p) {
    for (double x : p) {
      if (!std::isfinite(x)) throw NumericError("make_cloud: non-finite point");
    }
    if (seen.insert(quantize(p)).second) cloud.points_.insert(cloud.points_.end(), p.begin(), p.end());
  };
  for (std::size_t k = 0; k < row_major_points.size() / un; ++k) add(row_major_points.subspan(k * un, un));
  const std::vector<double> origin(un, 0.0);
  add(origin);
  return cloud;
}

GradientCloud gradient_cloud(const FourierExpansion& f, int max_n) {
  const int n = f.dim();
  const std::vector<double> table = f.truth_table(max_n);
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> points(table.size() * un);
  for (Vertex v = 0; v < table.size(); ++v) {
    for (std::size_t i = 0; i < un; ++i) {
      const Vertex bit = Vertex{1} << i;
      points[v * un + i] = (table[v | bit] - table[v & ~bit]) / 2.0;
    }
  }
  return make_cloud(n, points);
}

WidthEstimate summarize_draws(std::span<const double> suprema) {
  WidthEstimate w;
  w.samples = static_cast<std::int64_t>(suprema.size());
  if (suprema.empty()) return w;
  double sum = 0.0;
  for (double s : suprema) sum += s;
  const double m = sum / static_cast<double>(suprema.size());
  double ss = 0.0;
  for (double s : suprema) ss += (s - m) * (s - m);
  w.estimate = m;
  if (suprema.size() > 1) {
    const double var = ss / static_cast<double>(suprema.size() - 1);
    w.std_error = std::sqrt(var / static_cast<double>(suprema.size()));
  }
  return w;
}

std::vector<double> gaussian_suprema(const GradientCloud& cloud, std::int64_t samples,
                                     std::uint64_t seed) {
  require_samples(samples);
  if (cloud.size() == 0) throw InvalidArgument("gaussian_width_mc: empty cloud");
  const auto un = static_cast<std::size_t>(cloud.dim());
  Rng rng(seed);
  std::vector<double> g(un);
  std::vector<double> out(static_cast<std::size_t>(samples));
  const auto data = cloud.data();
  for (auto& value : out) {
    for (double& x : g) x = rng.normal();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cloud.size(); ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < un; ++i) dot += data[k * un + i] * g[i];
      best = std::max(best, dot);
    }
    value = best;
  }
  return out;
}

WidthEstimate gaussian_width_mc(const GradientCloud& cloud, std::int64_t samples,
                                std::uint64_t seed) {
  return summarize_draws(gaussian_suprema(cloud, samples, seed));
}

std::vector<double> gaussian_suprema_streamed(const FourierExpansion& f, std::int64_t samples,
                                              std::uint64_t seed, int max_n) {
  require_samples(samples);
  const int n = f.dim();
  require_dense(n, max_n, "gaussian_width_streamed");
  const auto un = static_cast<std::size_t>(n);
  const std::size_t size = vertex_count(n);
  Rng rng(seed);
  std::vector<double> g(un);
  std::vector<double> coeffs(size);
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (auto& value : out) {
    for (double& x : g) x = rng.normal();
    std::fill(coeffs.begin(), coeffs.end(), 0.0);
    for (const Term& t : f.terms()) {
      for (SubsetMask s = t.subset; s; s &= s - 1) {
        const int i = std::countr_zero(s);
        coeffs[t.subset & ~(SubsetMask{1} << i)] += t.coeff * g[static_cast<std::size_t>(i)];
      }
    }
    walsh_hadamard(coeffs);
    double best = 0.0;
    for (double c : coeffs) best = std::max(best, c);
    value = best;
  }
  return out;
}

WidthEstimate gaussian_width_streamed(const FourierExpansion& f, std::int64_t samples,
                                      std::uint64_t seed, int max_n) {
  return summarize_draws(gaussian_suprema_streamed(f, samples, seed, max_n));
}

ComplexityParams complexity_params(const FourierExpansion& f, const ComplexityOptions& opts) {
  const int n = f.dim();
  require_dense(n, opts.max_n, "complexity_params");
  const std::vector<double> table = f.truth_table(opts.max_n);
  const double lip = lipschitz_l1_from_table(n, table);
  const double ratio = lipschitz_l2_from_table(n, table);
  const WidthEstimate w = n <= opts.cloud_max_n
                              ? gaussian_width_mc(gradient_cloud(f, opts.max_n), opts.samples, opts.seed)
                              : gaussian_width_streamed(f, opts.samples, opts.seed, opts.max_n);
  return ComplexityParams::with_floors(w.estimate, lip, ratio, Provenance::monte_carlo,
                                       Provenance::exact, w.std_error);
}

}  // namespace mfgl
