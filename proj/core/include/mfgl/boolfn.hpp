#pragma once

// Real-valued functions on the Boolean hypercube {-1,1}^n in sparse Fourier
// form, with their multilinear (harmonic) extension to [-1,1]^n.
//
// Vertex encoding used across the library: bit i of a vertex index is 1 iff
// coordinate i equals +1. Subsets of [n] are bitmasks in the same bit order.

#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mfgl/errors.hpp"

namespace mfgl {

using SubsetMask = std::uint64_t;
using Vertex = std::uint64_t;

inline constexpr int kMaxSparseDim = 63;
inline constexpr int kDefaultDenseCap = 20;
inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kCubeTolerance = 1e-12;

constexpr double vertex_coord(Vertex v, int i) { return ((v >> i) & 1u) ? 1.0 : -1.0; }

constexpr std::uint64_t vertex_count(int n) { return std::uint64_t{1} << n; }

std::vector<double> vertex_point(Vertex v, int n);

/// Throws CapExceeded when n is above the dense-enumeration cap.
void require_dense(int n, int max_n, const char* where);

/// A point of the solid cube [-1,1]^n.
class CubePoint {
 public:
  CubePoint() = default;
  explicit CubePoint(std::vector<double> coords);

  static CubePoint vertex(Vertex v, int n);
  static CubePoint constant(int n, double value);

  int dim() const { return static_cast<int>(coords_.size()); }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }
  double operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  bool is_vertex() const;

  bool operator==(const CubePoint&) const = default;

 private:
  std::vector<double> coords_;
};

struct Term {
  SubsetMask subset = 0;
  double coeff = 0.0;

  bool operator==(const Term&) const = default;
};

/// Sparse multilinear polynomial sum_S c_S prod_{i in S} x_i.
///
/// Terms are kept sorted by subset mask with duplicates merged and exact
/// zeros dropped. An expansion with no terms is the zero function.
class FourierExpansion {
 public:
  FourierExpansion() = default;
  explicit FourierExpansion(int n, std::vector<Term> terms = {});

  /// Inverse of truth_table(): recovers coefficients from the 2^n vertex
  /// values and drops coefficients with magnitude <= kPruneThreshold.
  static FourierExpansion from_truth_table(int n, std::span<const double> table,
                                           int max_n = kDefaultDenseCap);
  static FourierExpansion linear(std::span<const double> theta);
  static FourierExpansion constant(int n, double c);

  int dim() const { return n_; }
  std::span<const Term> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double coefficient(SubsetMask subset) const;
  int degree() const;

  /// Extension value at x; no range or dimension checks.
  double operator()(std::span<const double> x) const;
  double at_vertex(Vertex v) const;

  /// Gradient of the extension at x written into out (length n).
  void gradient_into(std::span<const double> x, std::span<double> out) const;
  void gradient_at_vertex(Vertex v, std::span<double> out) const;

  std::vector<double> truth_table(int max_n = kDefaultDenseCap) const;

  FourierExpansion operator+(const FourierExpansion& other) const;
  FourierExpansion scaled(double factor) const;
  FourierExpansion plus_linear(std::span<const double> theta) const;

  bool operator==(const FourierExpansion&) const = default;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

/// Gradient field x -> grad(x) used by the fixed-point solvers; the
/// expansion's own gradient is one implementation, closed forms are others.
using GradientMap = std::function<void(std::span<const double>, std::span<double>)>;

GradientMap gradient_map(const FourierExpansion& f);

double eval_extension(const FourierExpansion& f, const CubePoint& x);
std::vector<double> gradient_extension(const FourierExpansion& f, const CubePoint& x);

/// max over i and vertices v of |d_i f(v)|, no floor applied.
double lipschitz_l1(const FourierExpansion& f, int max_n = kDefaultDenseCap);

/// sup over vertex pairs x != y of ||grad f(x) - grad f(y)||_1 / ||x - y||_1.
///
/// Evaluated over Hamming-distance-1 pairs only; the supremum over all pairs
/// is attained at a single flip. O(n^2 2^n) time, O(2^n) memory.
double lipschitz_l2(const FourierExpansion& f, int max_n = kDefaultDenseCap);

double lipschitz_l1_from_table(int n, std::span<const double> table);
double lipschitz_l2_from_table(int n, std::span<const double> table);

/// In-place unnormalised Walsh-Hadamard butterfly:
/// out[u] = sum_S in[S] (-1)^{|S & u|}.
void walsh_hadamard(std::span<double> values);

/// Fourier expansion of v -> h(f(v)) via the truth table.
template <typename Fn>
  requires std::invocable<Fn, double>
FourierExpansion compose(const FourierExpansion& f, Fn&& h, int max_n = kDefaultDenseCap) {
  std::vector<double> table = f.truth_table(max_n);
  for (double& value : table) {
    value = static_cast<double>(std::invoke(h, value));
    if (!std::isfinite(value)) throw NumericError("compose: shape value is not finite");
  }
  return FourierExpansion::from_truth_table(f.dim(), table, max_n);
}

double l1_norm(std::span<const double> v);
double l1_distance(std::span<const double> a, std::span<const double> b);

}  // namespace mfgl
