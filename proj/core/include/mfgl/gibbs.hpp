#pragma once

#include <span>
#include <vector>

#include "mfgl/boolfn.hpp"
#include "mfgl/matrix.hpp"

namespace mfgl {

/// Explicit probability vector over the 2^n vertices.
class DenseMeasure {
 public:
  DenseMeasure() = default;

  /// Normalises exp(log_weights) with a max shift. Entries may be -inf
  /// (zero mass) but at least one must be finite.
  static DenseMeasure from_log_weights(int n, std::vector<double> log_weights);
  /// Validates non-negativity and unit mass within 1e-12.
  static DenseMeasure from_probabilities(int n, std::vector<double> probs);

  int dim() const { return n_; }
  std::span<const double> probs() const { return probs_; }
  std::span<const double> log_probs() const { return log_probs_; }
  double prob(Vertex v) const { return probs_[v]; }
  /// log of the normaliser used at construction (0 for from_probabilities).
  double log_norm() const { return log_norm_; }
  std::size_t size() const { return probs_.size(); }

 private:
  int n_ = 0;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  double log_norm_ = 0.0;
};

/// The law on {-1,1}^n with independent coordinates and the given mean.
class ProductMeasure {
 public:
  ProductMeasure() = default;
  explicit ProductMeasure(std::vector<double> mean);

  int dim() const { return static_cast<int>(mean_.size()); }
  std::span<const double> mean() const { return mean_; }
  double prob(Vertex v) const;
  DenseMeasure densify(int max_n = kDefaultDenseCap) const;

 private:
  std::vector<double> mean_;
};

class TiltVector {
 public:
  TiltVector() = default;
  explicit TiltVector(std::vector<double> theta);

  int dim() const { return static_cast<int>(theta_.size()); }
  std::span<const double> values() const { return theta_; }
  double norm_inf() const;
  double norm_1() const;
  double norm_2() const;
  /// theta in [-1/4, 1/4]^n and ||theta||_2 <= eps sqrt(n).
  bool in_mixture_support(double eps) const;

 private:
  std::vector<double> theta_;
};

DenseMeasure gibbs_measure(const FourierExpansion& f, int max_n = kDefaultDenseCap);

DenseMeasure tilt(const DenseMeasure& nu, const TiltVector& theta);

std::vector<double> mean(const DenseMeasure& nu);
std::vector<double> mean(const ProductMeasure& xi);

/// Expectation of a vertex table under nu.
double expectation(const DenseMeasure& nu, std::span<const double> table);

struct HMatrix {
  Matrix H;
  double trace = 0.0;
};

/// Covariance of tanh(grad f(V) + shift) under V ~ nu. The shift is the
/// tilt vector when nu is a tilt of the Gibbs measure of f.
HMatrix h_matrix(const DenseMeasure& nu, const FourierExpansion& f,
                 std::span<const double> shift = {});

/// Product law with mean E_nu tanh(grad f(V) + shift).
ProductMeasure product_approx(const DenseMeasure& nu, const FourierExpansion& f,
                              std::span<const double> shift = {});

double tv(const DenseMeasure& a, const DenseMeasure& b);

}  // namespace mfgl
