#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mfgl/boolfn.hpp"
#include "mfgl/hamiltonians.hpp"

namespace mfgl {

inline constexpr double kCloudTolerance = 1e-12;

/// Finite point set in R^n that always contains the origin. Points are
/// stored row-major and are distinct up to kCloudTolerance per coordinate.
class GradientCloud {
 public:
  int dim() const { return n_; }
  std::size_t size() const { return n_ == 0 ? 0 : points_.size() / static_cast<std::size_t>(n_); }
  std::span<const double> point(std::size_t k) const {
    return std::span<const double>(points_).subspan(k * static_cast<std::size_t>(n_),
                                                    static_cast<std::size_t>(n_));
  }
  std::span<const double> data() const { return points_; }

  friend GradientCloud make_cloud(int n, std::span<const double> row_major_points);

 private:
  int n_ = 0;
  std::vector<double> points_;
};

/// Deduplicates in input order and appends the origin when absent.
GradientCloud make_cloud(int n, std::span<const double> row_major_points);

/// {grad f(v) : v in {-1,1}^n} u {0}, in vertex order.
GradientCloud gradient_cloud(const FourierExpansion& f, int max_n = kDefaultDenseCap);

struct WidthEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

/// Per-draw values sup_{x in cloud} <x, G> for G ~ N(0, I_n). Draw k uses
/// normals k*n .. k*n+n-1 of the Rng stream seeded with seed.
std::vector<double> gaussian_suprema(const GradientCloud& cloud, std::int64_t samples,
                                     std::uint64_t seed);

WidthEstimate gaussian_width_mc(const GradientCloud& cloud, std::int64_t samples,
                                std::uint64_t seed);

/// Same draws as gaussian_suprema on gradient_cloud(f), without storing the
/// cloud: each draw builds <grad f(.), G> as a Fourier expansion and takes
/// its maximum over vertices through one Walsh-Hadamard transform.
std::vector<double> gaussian_suprema_streamed(const FourierExpansion& f, std::int64_t samples,
                                              std::uint64_t seed, int max_n = kDefaultDenseCap);

WidthEstimate gaussian_width_streamed(const FourierExpansion& f, std::int64_t samples,
                                      std::uint64_t seed, int max_n = kDefaultDenseCap);

WidthEstimate summarize_draws(std::span<const double> suprema);

struct ComplexityOptions {
  std::int64_t samples = 100000;
  std::uint64_t seed = 0;
  int max_n = kDefaultDenseCap;
  /// Largest n for which the gradient cloud is materialised.
  int cloud_max_n = 16;
};

ComplexityParams complexity_params(const FourierExpansion& f, const ComplexityOptions& opts = {});

}  // namespace mfgl
