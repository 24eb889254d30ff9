#include "mfgl/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mfgl {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

SubsetMask pair_mask(int i, int j) { return (SubsetMask{1} << i) | (SubsetMask{1} << j); }

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_row_abs_sum(const Matrix& A) {
  double best = 0.0;
  for (int i = 0; i < A.rows; ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols; ++j) s += std::abs(A(i, j));
    best = std::max(best, s);
  }
  return best;
}

void validate_ising(const Matrix& A, std::size_t mu_size) {
  if (A.rows != A.cols) throw InvalidArgument("ising: A must be square");
  if (A.rows < 1) throw InvalidArgument("ising: empty A");
  if (static_cast<std::size_t>(A.rows) != mu_size) {
    throw DimensionMismatch("ising: mu", A.rows, static_cast<int>(mu_size));
  }
  double scale = 0.0;
  for (double a : A.data) {
    if (!std::isfinite(a)) throw InvalidArgument("ising: non-finite entry in A");
    scale = std::max(scale, std::abs(a));
  }
  for (int i = 0; i < A.rows; ++i) {
    if (A(i, i) != 0.0) throw InvalidArgument("ising: A must have zero diagonal");
    for (int j = i + 1; j < A.cols; ++j) {
      if (std::abs(A(i, j) - A(j, i)) > 1e-12 * std::max(1.0, scale)) {
        throw InvalidArgument("ising: A must be symmetric");
      }
    }
  }
}

}  // namespace

std::string HamiltonianSpec::tag() const {
  return std::visit(Overloaded{
                        [](const LinearSpec&) { return std::string("linear"); },
                        [](const IsingSpec&) { return std::string("ising"); },
                        [](const CurieWeissSpec&) { return std::string("curie_weiss"); },
                        [](const TriangleCountSpec&) { return std::string("triangle_count"); },
                        [](const SparseFourierSpec&) { return std::string("sparse_fourier"); },
                        [](const SmoothedCutoffSpec&) { return std::string("smoothed_cutoff"); },
                    },
                    payload);
}

int HamiltonianSpec::dim() const {
  return std::visit(Overloaded{
                        [](const LinearSpec& s) { return static_cast<int>(s.theta.size()); },
                        [](const IsingSpec& s) { return s.A.rows; },
                        [](const CurieWeissSpec& s) { return s.n; },
                        [](const TriangleCountSpec& s) { return s.N * (s.N - 1) / 2; },
                        [](const SparseFourierSpec& s) { return s.n; },
                        [](const SmoothedCutoffSpec& s) { return s.inner ? s.inner->dim() : 0; },
                    },
                    payload);
}

void HamiltonianSpec::validate() const {
  std::visit(Overloaded{
                 [](const LinearSpec& s) {
                   if (s.theta.empty()) throw InvalidArgument("linear: empty theta");
                   for (double v : s.theta) {
                     if (!std::isfinite(v)) throw InvalidArgument("linear: non-finite theta");
                   }
                 },
                 [](const IsingSpec& s) { validate_ising(s.A, s.mu.size()); },
                 [](const CurieWeissSpec& s) {
                   if (!(s.beta > 0.0) || !std::isfinite(s.beta)) {
                     throw InvalidArgument("curie_weiss: beta must be > 0");
                   }
                   if (s.n < 2 || s.n > kMaxSparseDim) throw InvalidArgument("curie_weiss: n out of range");
                 },
                 [](const TriangleCountSpec& s) {
                   if (!std::isfinite(s.beta)) throw InvalidArgument("triangle_count: non-finite beta");
                   if (s.N < 3 || s.N * (s.N - 1) / 2 > kMaxSparseDim) {
                     throw InvalidArgument("triangle_count: N out of range");
                   }
                 },
                 [](const SparseFourierSpec& s) {
                   if (s.n < 1 || s.n > kMaxSparseDim) throw InvalidArgument("sparse_fourier: n out of range");
                 },
                 [](const SmoothedCutoffSpec& s) {
                   if (!s.inner) throw InvalidArgument("smoothed_cutoff: missing inner");
                   if (!(s.delta > 0.0)) throw InvalidArgument("smoothed_cutoff: delta must be > 0");
                   if (!std::isfinite(s.t)) throw InvalidArgument("smoothed_cutoff: non-finite t");
                   s.inner->validate();
                 },
             },
             payload);
}

int triangle_edge_index(int a, int b, int N) {
  if (a > b) std::swap(a, b);
  // Edges before row a: sum_{r<a} (N-1-r).
  return a * (2 * N - a - 1) / 2 + (b - a - 1);
}

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec, int max_n) {
  spec.validate();
  return std::visit(
      Overloaded{
          [](const LinearSpec& s) {
            FourierExpansion f = FourierExpansion::linear(s.theta);
            return Hamiltonian{f, gradient_map(f), false};
          },
          [](const IsingSpec& s) {
            const int n = s.A.rows;
            std::vector<Term> terms;
            for (int i = 0; i < n; ++i) {
              terms.push_back({SubsetMask{1} << i, s.mu[static_cast<std::size_t>(i)]});
              for (int j = i + 1; j < n; ++j) terms.push_back({pair_mask(i, j), s.A(i, j)});
            }
            FourierExpansion f(n, std::move(terms));
            GradientMap grad = [A = s.A, mu = s.mu](std::span<const double> x, std::span<double> out) {
              for (int i = 0; i < A.rows; ++i) {
                double acc = mu[static_cast<std::size_t>(i)];
                for (int j = 0; j < A.cols; ++j) acc += A(i, j) * x[static_cast<std::size_t>(j)];
                out[static_cast<std::size_t>(i)] = acc;
              }
            };
            return Hamiltonian{f, grad, true};
          },
          [](const CurieWeissSpec& s) {
            const double c = s.beta / s.n;
            std::vector<Term> terms;
            for (int i = 0; i < s.n; ++i) {
              for (int j = i + 1; j < s.n; ++j) terms.push_back({pair_mask(i, j), c});
            }
            FourierExpansion f(s.n, std::move(terms));
            GradientMap grad = [c](std::span<const double> x, std::span<double> out) {
              double total = 0.0;
              for (double v : x) total += v;
              for (std::size_t i = 0; i < x.size(); ++i) out[i] = c * (total - x[i]);
            };
            return Hamiltonian{f, grad, true};
          },
          [](const TriangleCountSpec& s) {
            const double c = 6.0 * s.beta / s.N;
            std::vector<Term> terms;
            for (int a = 0; a < s.N; ++a) {
              for (int b = a + 1; b < s.N; ++b) {
                for (int d = b + 1; d < s.N; ++d) {
                  const SubsetMask m = (SubsetMask{1} << triangle_edge_index(a, b, s.N)) |
                                       (SubsetMask{1} << triangle_edge_index(b, d, s.N)) |
                                       (SubsetMask{1} << triangle_edge_index(a, d, s.N));
                  terms.push_back({m, c});
                }
              }
            }
            FourierExpansion f(s.N * (s.N - 1) / 2, std::move(terms));
            return Hamiltonian{f, gradient_map(f), false};
          },
          [](const SparseFourierSpec& s) {
            FourierExpansion f(s.n, s.terms);
            return Hamiltonian{f, gradient_map(f), false};
          },
          [max_n](const SmoothedCutoffSpec& s) {
            const FourierExpansion inner = build_hamiltonian(*s.inner, max_n).expansion;
            FourierExpansion g = compose(inner, cutoff_psi(inner.dim(), s.t, s.delta), max_n);
            return Hamiltonian{g, gradient_map(g), false};
          },
      },
      spec.payload);
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::exact:
      return "exact";
    case Provenance::monte_carlo:
      return "monte_carlo";
    case Provenance::closed_form_bound:
      return "closed_form_bound";
  }
  return "exact";
}

Provenance provenance_from_string(const std::string& s) {
  if (s == "exact") return Provenance::exact;
  if (s == "monte_carlo") return Provenance::monte_carlo;
  if (s == "closed_form_bound") return Provenance::closed_form_bound;
  throw InvalidArgument("unknown provenance: " + s);
}

ComplexityParams ComplexityParams::with_floors(double D, double lip, double ratio,
                                               Provenance d_prov, Provenance l_prov,
                                               double D_std_error) {
  ComplexityParams p;
  p.D = D;
  p.D_std_error = D_std_error;
  p.L1 = std::max(1.0, lip);
  p.L2 = std::max(1.0, ratio);
  p.D_provenance = d_prov;
  p.L1_provenance = l_prov;
  p.L2_provenance = l_prov;
  return p;
}

ComplexityParams ising_complexity_bounds(const Matrix& A, std::span<const double> mu) {
  validate_ising(A, mu.size());
  const double n = A.rows;
  double tr_a2 = 0.0;
  for (double a : A.data) tr_a2 += a * a;
  const double mu_max = max_abs(mu);
  const double row = max_row_abs_sum(A);
  return ComplexityParams::with_floors(std::sqrt(n * tr_a2) + std::sqrt(n) * mu_max, mu_max + row,
                                       row, Provenance::closed_form_bound,
                                       Provenance::closed_form_bound);
}

GradientMap curie_weiss_full_coupling_field(double beta, int n) {
  const double c = beta / n;
  return [c](std::span<const double> x, std::span<double> out) {
    double total = 0.0;
    for (double v : x) total += v;
    std::fill(out.begin(), out.end(), c * total);
  };
}

double delta_prime(double delta) { return (std::log(4.0) + 1.0) * delta / 2.0; }

SmoothedCutoff smoothed_cutoff_weights(const FourierExpansion& f, double t, double delta,
                                       int max_n) {
  if (!(delta > 0.0)) throw InvalidArgument("smoothed_cutoff_weights: delta must be > 0");
  const int n = f.dim();
  const ScalarShape psi = cutoff_psi(n, t, delta);
  SmoothedCutoff out;
  out.delta_prime = delta_prime(delta);
  out.f_values = f.truth_table(max_n);
  out.g_values.resize(out.f_values.size());
  out.phi.resize(out.f_values.size());
  out.log_phi.resize(out.f_values.size());
  const double lower = (t - out.delta_prime) * n;
  const double upper = t * n;
  for (std::size_t v = 0; v < out.f_values.size(); ++v) {
    const double fv = out.f_values[v];
    const double gv = psi(fv);
    out.g_values[v] = gv;
    if (fv < lower) {
      out.phi[v] = 0.0;
      out.log_phi[v] = -std::numeric_limits<double>::infinity();
    } else if (fv >= upper) {
      out.phi[v] = 1.0;
      out.log_phi[v] = 0.0;
    } else {
      out.phi[v] = std::exp(gv);
      out.log_phi[v] = gv;
    }
  }
  out.g = FourierExpansion::from_truth_table(n, out.g_values, max_n);
  return out;
}

CompositionParams composition_params(double B1, double B2, const ComplexityParams& base, int n) {
  if (!(B1 >= 0.0) || !(B2 >= 0.0)) throw InvalidArgument("composition_params: bounds must be >= 0");
  if (n < 1) throw InvalidArgument("composition_params: n must be positive");
  // 0 * inf counts as 0.
  const auto mul = [](double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; };
  const double nd = n;
  const double l1sq = base.L1 * base.L1;
  CompositionParams p;
  p.D = mul(B1, base.D) + mul(B2, l1sq * nd);
  p.L1 = std::max(1.0, mul(B1, base.L1));
  p.L2 = std::max(1.0, mul(B1, base.L2) + 3.0 * mul(B2, l1sq * nd));
  p.L3 = 2.0 * mul(B2, l1sq * std::pow(nd, 1.5));
  return p;
}

}  // namespace mfgl
