#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mfgl/boolfn.hpp"
#include "mfgl/hamiltonians.hpp"

namespace mfgl {

struct MeanFieldOptions {
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 10000;
};

struct FixedPointSolution {
  CubePoint point;
  double lambda = 1.0;
  /// ||X - tanh(lambda grad f(X))||_1
  double residual_l1 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string start_id;
};

struct StartPoint {
  std::string id;
  CubePoint point;
};

double mf_residual(const GradientMap& grad, std::span<const double> x, double lambda);
double mf_residual(const FourierExpansion& f, std::span<const double> x, double lambda);

/// Damped iteration X <- (1-g) X + g tanh(lambda grad f(X)). The residual is
/// checked before every step, so a start that is already a fixed point
/// returns after zero iterations.
FixedPointSolution mf_iterate(const GradientMap& grad, const CubePoint& x0, double lambda,
                              const MeanFieldOptions& opts = {}, std::string start_id = "x0");
FixedPointSolution mf_iterate(const FourierExpansion& f, const CubePoint& x0, double lambda,
                              const MeanFieldOptions& opts = {}, std::string start_id = "x0");

/// zeros, all +0.9, all -0.9, then random_count uniform points on [-1,1]^n.
std::vector<StartPoint> default_starts(int n, std::uint64_t seed, int random_count = 14);

inline constexpr double kSolutionDedupTol = 1e-6;

/// Converged solutions from every start, in start order, with later
/// solutions within l1 distance dedup_tol of an earlier one dropped.
std::vector<FixedPointSolution> solve_multistart(const GradientMap& grad,
                                                 std::span<const StartPoint> starts, double lambda,
                                                 const MeanFieldOptions& opts = {},
                                                 double dedup_tol = kSolutionDedupTol);

struct XfTestResult {
  double threshold = 0.0;
  double residual = 0.0;
  double residual_per_n = 0.0;
  bool member = false;
};

/// 5000 L1 L2^{3/4} D^{1/4} n^{3/4}.
double xf_threshold(const ComplexityParams& params, int n);
XfTestResult xf_test(const FourierExpansion& f, const CubePoint& x, const ComplexityParams& params);

/// f(X) + sum_i H_b((1+X_i)/2) with natural-log binary entropy H_b.
double mean_field_functional(const FourierExpansion& f, const CubePoint& x);
/// grad f(X) - atanh(X).
std::vector<double> mean_field_gradient(const FourierExpansion& f, const CubePoint& x);

/// Sorted roots of x = tanh(beta x) in [-1,1].
std::vector<double> curie_weiss_roots(double beta, double tol = 1e-12);

/// 5001 (1+beta)^2 / (1-beta) n^{7/8}; defined for 0 < beta < 1.
double curie_weiss_disorder_radius(double beta, int n);

/// 64 geometric points on [1e-2, 1e2], their negatives and 0, ascending.
std::vector<double> default_lambda_grid();

struct LambdaScanOptions {
  MeanFieldOptions iteration;
  double window_slack = 1e-9;
};

struct LambdaScanResult {
  std::vector<FixedPointSolution> solutions;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::int64_t runs = 0;
};

/// Solves X = tanh(lambda grad f(X)) over the grid, warm-starting each lambda
/// from the previous lambda's converged points, and keeps solutions with
/// residual <= tol and f(X) in [(t - 6 delta) n, t n].
LambdaScanResult lambda_scan(const FourierExpansion& f, double t, double delta,
                             std::span<const double> lambda_grid,
                             std::span<const StartPoint> starts,
                             const LambdaScanOptions& opts = {});

}  // namespace mfgl
