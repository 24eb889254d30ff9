#include "mfgl/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mfgl {

namespace {

void check_dim(const char* where, int expected, std::size_t actual) {
  if (static_cast<std::size_t>(expected) != actual) {
    throw DimensionMismatch(where, expected, static_cast<int>(actual));
  }
}

// Discrete gradient at v read off the truth table, plus shift.
void shifted_gradient(std::span<const double> table, Vertex v, std::span<const double> shift,
                      std::vector<double>& buf) {
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const Vertex bit = Vertex{1} << i;
    buf[i] = (table[v | bit] - table[v & ~bit]) / 2.0;
    if (!shift.empty()) buf[i] += shift[i];
  }
}

}  // namespace

DenseMeasure DenseMeasure::from_log_weights(int n, std::vector<double> log_weights) {
  check_dim("DenseMeasure::from_log_weights", static_cast<int>(vertex_count(n)), log_weights.size());
  double shift = -std::numeric_limits<double>::infinity();
  for (double w : log_weights) {
    if (std::isnan(w) || w == std::numeric_limits<double>::infinity()) {
      throw NumericError("DenseMeasure: non-finite log weight");
    }
    shift = std::max(shift, w);
  }
  if (!std::isfinite(shift)) throw NumericError("DenseMeasure: all weights are zero");
  double total = 0.0;
  for (double w : log_weights) total += std::exp(w - shift);
  const double log_total = std::log(total);
  DenseMeasure m;
  m.n_ = n;
  m.log_norm_ = shift + log_total;
  m.log_probs_.resize(log_weights.size());
  m.probs_.resize(log_weights.size());
  for (std::size_t v = 0; v < log_weights.size(); ++v) {
    m.log_probs_[v] = log_weights[v] - shift - log_total;
    m.probs_[v] = std::exp(m.log_probs_[v]);
  }
  return m;
}

DenseMeasure DenseMeasure::from_probabilities(int n, std::vector<double> probs) {
  check_dim("DenseMeasure::from_probabilities", static_cast<int>(vertex_count(n)), probs.size());
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("DenseMeasure: negative or non-finite mass");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("DenseMeasure: masses do not sum to 1");
  DenseMeasure m;
  m.n_ = n;
  m.log_probs_.resize(probs.size());
  for (std::size_t v = 0; v < probs.size(); ++v) m.log_probs_[v] = std::log(probs[v]);
  m.probs_ = std::move(probs);
  return m;
}

ProductMeasure::ProductMeasure(std::vector<double> mean) : mean_(std::move(mean)) {
  for (double& z : mean_) {
    if (!std::isfinite(z) || std::abs(z) > 1.0 + kCubeTolerance) {
      throw InvalidArgument("ProductMeasure: mean outside [-1,1]");
    }
    z = std::clamp(z, -1.0, 1.0);
  }
}

double ProductMeasure::prob(Vertex v) const {
  double p = 1.0;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    p *= (1.0 + vertex_coord(v, static_cast<int>(i)) * mean_[i]) / 2.0;
  }
  return p;
}

DenseMeasure ProductMeasure::densify(int max_n) const {
  const int n = dim();
  require_dense(n, max_n, "ProductMeasure::densify");
  std::vector<double> logw(vertex_count(n));
  for (Vertex v = 0; v < logw.size(); ++v) {
    double lw = 0.0;
    for (int i = 0; i < n; ++i) {
      lw += std::log((1.0 + vertex_coord(v, i) * mean_[static_cast<std::size_t>(i)]) / 2.0);
    }
    logw[v] = lw;
  }
  return DenseMeasure::from_log_weights(n, std::move(logw));
}

TiltVector::TiltVector(std::vector<double> theta) : theta_(std::move(theta)) {
  for (double t : theta_) {
    if (!std::isfinite(t)) throw InvalidArgument("TiltVector: non-finite entry");
  }
}

double TiltVector::norm_inf() const {
  double m = 0.0;
  for (double t : theta_) m = std::max(m, std::abs(t));
  return m;
}

double TiltVector::norm_1() const { return l1_norm(theta_); }

double TiltVector::norm_2() const {
  double s = 0.0;
  for (double t : theta_) s += t * t;
  return std::sqrt(s);
}

bool TiltVector::in_mixture_support(double eps) const {
  return norm_inf() <= 0.25 && norm_2() <= eps * std::sqrt(static_cast<double>(dim()));
}

DenseMeasure gibbs_measure(const FourierExpansion& f, int max_n) {
  std::vector<double> table = f.truth_table(max_n);
  for (double v : table) {
    if (!std::isfinite(v)) throw NumericError("gibbs_measure: non-finite Hamiltonian value");
  }
  return DenseMeasure::from_log_weights(f.dim(), std::move(table));
}

DenseMeasure tilt(const DenseMeasure& nu, const TiltVector& theta) {
  check_dim("tilt", nu.dim(), static_cast<std::size_t>(theta.dim()));
  std::vector<double> logw(nu.size());
  const auto th = theta.values();
  for (Vertex v = 0; v < logw.size(); ++v) {
    double dot = 0.0;
    for (int i = 0; i < nu.dim(); ++i) dot += th[static_cast<std::size_t>(i)] * vertex_coord(v, i);
    logw[v] = nu.log_probs()[v] + dot;
  }
  return DenseMeasure::from_log_weights(nu.dim(), std::move(logw));
}

std::vector<double> mean(const DenseMeasure& nu) {
  std::vector<double> m(static_cast<std::size_t>(nu.dim()), 0.0);
  for (int i = 0; i < nu.dim(); ++i) {
    double acc = 0.0;
    for (Vertex v = 0; v < nu.size(); ++v) acc += nu.prob(v) * vertex_coord(v, i);
    m[static_cast<std::size_t>(i)] = acc;
  }
  return m;
}

std::vector<double> mean(const ProductMeasure& xi) {
  return {xi.mean().begin(), xi.mean().end()};
}

double expectation(const DenseMeasure& nu, std::span<const double> table) {
  check_dim("expectation", static_cast<int>(nu.size()), table.size());
  double acc = 0.0;
  for (std::size_t v = 0; v < table.size(); ++v) acc += nu.prob(v) * table[v];
  return acc;
}

HMatrix h_matrix(const DenseMeasure& nu, const FourierExpansion& f, std::span<const double> shift) {
  const int n = nu.dim();
  check_dim("h_matrix", n, static_cast<std::size_t>(f.dim()));
  if (!shift.empty()) check_dim("h_matrix: shift", n, shift.size());
  const auto un = static_cast<std::size_t>(n);
  const std::vector<double> table = f.truth_table(n);
  std::vector<double> buf(un);
  std::vector<double> centre(un, 0.0);
  for (Vertex v = 0; v < nu.size(); ++v) {
    shifted_gradient(table, v, shift, buf);
    for (std::size_t i = 0; i < un; ++i) centre[i] += nu.prob(v) * std::tanh(buf[i]);
  }
  HMatrix out{Matrix(n, n), 0.0};
  std::vector<double> dev(un);
  for (Vertex v = 0; v < nu.size(); ++v) {
    const double p = nu.prob(v);
    if (p == 0.0) continue;
    shifted_gradient(table, v, shift, buf);
    for (std::size_t i = 0; i < un; ++i) dev[i] = std::tanh(buf[i]) - centre[i];
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        out.H(i, j) += p * dev[static_cast<std::size_t>(i)] * dev[static_cast<std::size_t>(j)];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) out.H(i, j) = out.H(j, i);
  }
  out.trace = out.H.trace();
  return out;
}

ProductMeasure product_approx(const DenseMeasure& nu, const FourierExpansion& f,
                              std::span<const double> shift) {
  const int n = nu.dim();
  check_dim("product_approx", n, static_cast<std::size_t>(f.dim()));
  if (!shift.empty()) check_dim("product_approx: shift", n, shift.size());
  const auto un = static_cast<std::size_t>(n);
  const std::vector<double> table = f.truth_table(n);
  std::vector<double> buf(un);
  std::vector<double> centre(un, 0.0);
  for (Vertex v = 0; v < nu.size(); ++v) {
    shifted_gradient(table, v, shift, buf);
    for (std::size_t i = 0; i < un; ++i) centre[i] += nu.prob(v) * std::tanh(buf[i]);
  }
  return ProductMeasure(std::move(centre));
}

double tv(const DenseMeasure& a, const DenseMeasure& b) {
  check_dim("tv", a.dim(), static_cast<std::size_t>(b.dim()));
  double s = 0.0;
  for (std::size_t v = 0; v < a.size(); ++v) s += std::abs(a.prob(v) - b.prob(v));
  return s / 2.0;
}

}  // namespace mfgl
