#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mfgl/boolfn.hpp"
#include "mfgl/matrix.hpp"
#include "mfgl/scalar_shape.hpp"

namespace mfgl {

struct HamiltonianSpec;

struct LinearSpec {
  std::vector<double> theta;
};

/// f(x) = sum_{i<j} A_ij x_i x_j + <mu, x>, so that grad f(x) = Ax + mu.
struct IsingSpec {
  Matrix A;
  std::vector<double> mu;
};

/// (beta/n) on every pair {i,j}; grad f(x)_i = (beta/n) sum_{j != i} x_j.
struct CurieWeissSpec {
  double beta = 0.0;
  int n = 0;
};

/// (beta/N) times the sum over ordered distinct triples of x_ij x_jk x_ki on
/// the N(N-1)/2 edge variables, indexed lexicographically by (a, b), a < b.
struct TriangleCountSpec {
  double beta = 0.0;
  int N = 0;
};

struct SparseFourierSpec {
  int n = 0;
  std::vector<Term> terms;
};

/// g = psi o f with psi(x) = n h((x/n - t)/delta).
struct SmoothedCutoffSpec {
  std::shared_ptr<const HamiltonianSpec> inner;
  double t = 0.0;
  double delta = 0.0;
};

struct HamiltonianSpec {
  std::variant<LinearSpec, IsingSpec, CurieWeissSpec, TriangleCountSpec, SparseFourierSpec,
               SmoothedCutoffSpec>
      payload;

  std::string tag() const;
  int dim() const;
  /// Throws InvalidArgument when a payload invariant fails.
  void validate() const;
};

struct Hamiltonian {
  FourierExpansion expansion;
  /// Closed-form gradient when the family has one, else the expansion's.
  GradientMap gradient;
  bool closed_form_gradient = false;
};

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec, int max_n = kDefaultDenseCap);

int triangle_edge_index(int a, int b, int N);

enum class Provenance { exact, monte_carlo, closed_form_bound };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct ComplexityParams {
  double D = 0.0;
  double D_std_error = 0.0;
  double L1 = 1.0;
  double L2 = 1.0;
  Provenance D_provenance = Provenance::exact;
  Provenance L1_provenance = Provenance::exact;
  Provenance L2_provenance = Provenance::exact;

  /// Applies L1 = max{1, lip}, L2 = max{1, ratio}.
  static ComplexityParams with_floors(double D, double lip, double ratio, Provenance d_prov,
                                      Provenance l_prov, double D_std_error = 0.0);

  bool operator==(const ComplexityParams&) const = default;
};

ComplexityParams ising_complexity_bounds(const Matrix& A, std::span<const double> mu);

/// x -> (beta/n) sum_j x_j in every coordinate, diagonal included.
GradientMap curie_weiss_full_coupling_field(double beta, int n);

struct SmoothedCutoff {
  FourierExpansion g;
  std::vector<double> f_values;
  std::vector<double> g_values;
  std::vector<double> phi;
  std::vector<double> log_phi;
  double delta_prime = 0.0;
};

double delta_prime(double delta);

SmoothedCutoff smoothed_cutoff_weights(const FourierExpansion& f, double t, double delta,
                                       int max_n = kDefaultDenseCap);

struct CompositionParams {
  double D = 0.0;
  double L1 = 1.0;
  double L2 = 1.0;
  double L3 = 0.0;
};

CompositionParams composition_params(double B1, double B2, const ComplexityParams& base, int n);

}  // namespace mfgl
