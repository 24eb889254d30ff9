#include "mfgl/meanfield.hpp"

#include <algorithm>
#include <cmath>

#include "mfgl/rng.hpp"

namespace mfgl {

namespace {

void check_dim(const char* where, int expected, std::size_t actual) {
  if (static_cast<std::size_t>(expected) != actual) {
    throw DimensionMismatch(where, expected, static_cast<int>(actual));
  }
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

bool near_any(const std::vector<FixedPointSolution>& kept, std::span<const double> x, double tol) {
  return std::any_of(kept.begin(), kept.end(), [&](const FixedPointSolution& s) {
    return l1_distance(s.point.coords(), x) <= tol;
  });
}

}  // namespace

double mf_residual(const GradientMap& grad, std::span<const double> x, double lambda) {
  std::vector<double> g(x.size());
  grad(x, g);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r += std::abs(x[i] - std::tanh(lambda * g[i]));
  return r;
}

double mf_residual(const FourierExpansion& f, std::span<const double> x, double lambda) {
  check_dim("mf_residual", f.dim(), x.size());
  return mf_residual(gradient_map(f), x, lambda);
}

FixedPointSolution mf_iterate(const GradientMap& grad, const CubePoint& x0, double lambda,
                              const MeanFieldOptions& opts, std::string start_id) {
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw InvalidArgument("mf_iterate: damping must be in (0,1]");
  if (!(opts.tol > 0.0)) throw InvalidArgument("mf_iterate: tol must be > 0");
  if (!std::isfinite(lambda)) throw InvalidArgument("mf_iterate: non-finite lambda");
  const std::size_t n = x0.coords().size();
  std::vector<double> x(x0.coords().begin(), x0.coords().end());
  std::vector<double> g(n);
  std::vector<double> target(n);
  const double gamma = opts.damping;
  FixedPointSolution sol;
  sol.lambda = lambda;
  sol.start_id = std::move(start_id);
  int it = 0;
  double residual = 0.0;
  while (true) {
    grad(x, g);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(g[i])) throw NumericError("mf_iterate: non-finite gradient");
      target[i] = std::tanh(lambda * g[i]);
      residual += std::abs(x[i] - target[i]);
    }
    if (residual <= opts.tol || it >= opts.max_iter) break;
    for (std::size_t i = 0; i < n; ++i) x[i] = (1.0 - gamma) * x[i] + gamma * target[i];
    ++it;
  }
  sol.point = CubePoint(std::move(x));
  sol.residual_l1 = residual;
  sol.iterations = it;
  sol.converged = residual <= opts.tol;
  return sol;
}

FixedPointSolution mf_iterate(const FourierExpansion& f, const CubePoint& x0, double lambda,
                              const MeanFieldOptions& opts, std::string start_id) {
  check_dim("mf_iterate", f.dim(), x0.coords().size());
  return mf_iterate(gradient_map(f), x0, lambda, opts, std::move(start_id));
}

std::vector<StartPoint> default_starts(int n, std::uint64_t seed, int random_count) {
  if (n < 1) throw InvalidArgument("default_starts: n must be positive");
  std::vector<StartPoint> starts;
  starts.push_back({"zeros", CubePoint::constant(n, 0.0)});
  starts.push_back({"plus0.9", CubePoint::constant(n, 0.9)});
  starts.push_back({"minus0.9", CubePoint::constant(n, -0.9)});
  Rng rng(seed);
  for (int k = 0; k < random_count; ++k) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& c : x) c = rng.uniform(-1.0, 1.0);
    starts.push_back({"uniform" + std::to_string(k), CubePoint(std::move(x))});
  }
  return starts;
}

std::vector<FixedPointSolution> solve_multistart(const GradientMap& grad,
                                                 std::span<const StartPoint> starts, double lambda,
                                                 const MeanFieldOptions& opts, double dedup_tol) {
  std::vector<FixedPointSolution> kept;
  for (const StartPoint& s : starts) {
    FixedPointSolution sol = mf_iterate(grad, s.point, lambda, opts, s.id);
    if (!sol.converged) continue;
    if (near_any(kept, sol.point.coords(), dedup_tol)) continue;
    kept.push_back(std::move(sol));
  }
  return kept;
}

double xf_threshold(const ComplexityParams& params, int n) {
  return 5000.0 * params.L1 * std::pow(params.L2, 0.75) * std::pow(params.D, 0.25) *
         std::pow(static_cast<double>(n), 0.75);
}

XfTestResult xf_test(const FourierExpansion& f, const CubePoint& x, const ComplexityParams& params) {
  check_dim("xf_test", f.dim(), x.coords().size());
  XfTestResult r;
  r.threshold = xf_threshold(params, f.dim());
  r.residual = mf_residual(f, x.coords(), 1.0);
  r.residual_per_n = r.residual / f.dim();
  r.member = r.residual <= r.threshold;
  return r;
}

double mean_field_functional(const FourierExpansion& f, const CubePoint& x) {
  check_dim("mean_field_functional", f.dim(), x.coords().size());
  double h = 0.0;
  for (double c : x.coords()) {
    if (!(std::abs(c) < 1.0)) throw InvalidArgument("mean_field_functional: boundary point");
    h += binary_entropy((1.0 + c) / 2.0);
  }
  return f(x.coords()) + h;
}

std::vector<double> mean_field_gradient(const FourierExpansion& f, const CubePoint& x) {
  check_dim("mean_field_gradient", f.dim(), x.coords().size());
  std::vector<double> g = gradient_extension(f, x);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double c = x.coords()[i];
    if (!(std::abs(c) < 1.0)) throw InvalidArgument("mean_field_gradient: boundary point");
    g[i] -= std::atanh(c);
  }
  return g;
}

std::vector<double> curie_weiss_roots(double beta, double tol) {
  if (!(beta > 0.0)) throw InvalidArgument("curie_weiss_roots: beta must be > 0");
  if (!(tol > 0.0 && tol < 1.0)) throw InvalidArgument("curie_weiss_roots: tol must be in (0,1)");
  const auto g = [beta](double x) { return std::tanh(beta * x) - x; };
  double lo = tol;
  double hi = 1.0;
  if (beta <= 1.0 || !(g(lo) > 0.0)) return {0.0};
  // g(1) = tanh(beta) - 1 < 0 for every finite beta.
  for (int k = 0; k < 200 && hi - lo > 0.0; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double root = 0.5 * (lo + hi);
  return {-root, 0.0, root};
}

double curie_weiss_disorder_radius(double beta, int n) {
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidArgument("curie_weiss_disorder_radius: need 0 < beta < 1");
  return 5001.0 * (1.0 + beta) * (1.0 + beta) / (1.0 - beta) * std::pow(static_cast<double>(n), 0.875);
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  constexpr int kPoints = 64;
  for (int k = 0; k < kPoints; ++k) {
    const double v = std::pow(10.0, -2.0 + 4.0 * k / (kPoints - 1));
    grid.push_back(v);
    grid.push_back(-v);
  }
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

LambdaScanResult lambda_scan(const FourierExpansion& f, double t, double delta,
                             std::span<const double> lambda_grid,
                             std::span<const StartPoint> starts, const LambdaScanOptions& opts) {
  if (lambda_grid.empty()) throw InvalidArgument("lambda_scan: empty lambda grid");
  if (!(delta > 0.0)) throw InvalidArgument("lambda_scan: delta must be > 0");
  const int n = f.dim();
  for (const StartPoint& s : starts) check_dim("lambda_scan: start", n, s.point.coords().size());
  LambdaScanResult result;
  result.window_lo = (t - 6.0 * delta) * n;
  result.window_hi = t * n;
  const GradientMap grad = gradient_map(f);
  std::vector<FixedPointSolution> previous;
  for (double lambda : lambda_grid) {
    std::vector<StartPoint> run_starts(starts.begin(), starts.end());
    for (const FixedPointSolution& p : previous) run_starts.push_back({p.start_id.starts_with("warm:") ? p.start_id : "warm:" + p.start_id, p.point});
    std::vector<FixedPointSolution> current;
    for (const StartPoint& s : run_starts) {
      ++result.runs;
      FixedPointSolution sol = mf_iterate(grad, s.point, lambda, opts.iteration, s.id);
      if (!sol.converged || near_any(current, sol.point.coords(), kSolutionDedupTol)) continue;
      current.push_back(std::move(sol));
    }
    for (const FixedPointSolution& sol : current) {
      const double value = f(sol.point.coords());
      if (sol.residual_l1 <= opts.iteration.tol && value >= result.window_lo - opts.window_slack &&
          value <= result.window_hi + opts.window_slack) {
        result.solutions.push_back(sol);
      }
    }
    previous = std::move(current);
  }
  return result;
}

}  // namespace mfgl
