#include "mfgl/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace mfgl {

namespace {

double vertex_sign(SubsetMask subset, Vertex v) {
  return (std::popcount(subset & ~v) & 1) ? -1.0 : 1.0;
}

void check_dim(const char* where, int expected, std::size_t actual) {
  if (static_cast<std::size_t>(expected) != actual) {
    throw DimensionMismatch(where, expected, static_cast<int>(actual));
  }
}

}  // namespace

std::vector<double> vertex_point(Vertex v, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = vertex_coord(v, i);
  return x;
}

void require_dense(int n, int max_n, const char* where) {
  if (n > max_n) throw CapExceeded(std::string(where) + ": dense n", max_n, n);
}

CubePoint::CubePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double& c : coords_) {
    if (!std::isfinite(c) || std::abs(c) > 1.0 + kCubeTolerance) {
      throw InvalidArgument("CubePoint: coordinate outside [-1,1]");
    }
    c = std::clamp(c, -1.0, 1.0);
  }
}

CubePoint CubePoint::vertex(Vertex v, int n) { return CubePoint(vertex_point(v, n)); }

CubePoint CubePoint::constant(int n, double value) {
  return CubePoint(std::vector<double>(static_cast<std::size_t>(n), value));
}

bool CubePoint::is_vertex() const {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double c) { return c == 1.0 || c == -1.0; });
}

FourierExpansion::FourierExpansion(int n, std::vector<Term> terms) : n_(n) {
  if (n < 1 || n > kMaxSparseDim) throw InvalidArgument("FourierExpansion: n out of range");
  const SubsetMask allowed = (SubsetMask{1} << n) - 1;
  for (const Term& t : terms) {
    if (t.subset & ~allowed) throw InvalidArgument("FourierExpansion: subset uses bits beyond n");
    if (!std::isfinite(t.coeff)) throw NumericError("FourierExpansion: non-finite coefficient");
  }
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return a.subset < b.subset; });
  for (const Term& t : terms) {
    if (!terms_.empty() && terms_.back().subset == t.subset) {
      terms_.back().coeff += t.coeff;
    } else {
      terms_.push_back(t);
    }
  }
  std::erase_if(terms_, [](const Term& t) { return t.coeff == 0.0; });
}

FourierExpansion FourierExpansion::from_truth_table(int n, std::span<const double> table,
                                                    int max_n) {
  require_dense(n, max_n, "from_truth_table");
  check_dim("from_truth_table", static_cast<int>(vertex_count(n)), table.size());
  const std::size_t size = table.size();
  std::vector<double> work(size);
  for (std::size_t v = 0; v < size; ++v) work[v] = table[(size - 1) ^ v];
  walsh_hadamard(work);
  const double scale = 1.0 / static_cast<double>(size);
  std::vector<Term> terms;
  for (std::size_t s = 0; s < size; ++s) {
    const double c = work[s] * scale;
    if (std::abs(c) > kPruneThreshold) terms.push_back({s, c});
  }
  return FourierExpansion(n, std::move(terms));
}

FourierExpansion FourierExpansion::linear(std::span<const double> theta) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < theta.size(); ++i) terms.push_back({SubsetMask{1} << i, theta[i]});
  return FourierExpansion(static_cast<int>(theta.size()), std::move(terms));
}

FourierExpansion FourierExpansion::constant(int n, double c) {
  return FourierExpansion(n, {{0, c}});
}

double FourierExpansion::coefficient(SubsetMask subset) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), subset,
                             [](const Term& t, SubsetMask s) { return t.subset < s; });
  return (it != terms_.end() && it->subset == subset) ? it->coeff : 0.0;
}

int FourierExpansion::degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, std::popcount(t.subset));
  return d;
}

double FourierExpansion::operator()(std::span<const double> x) const {
  double total = 0.0;
  for (const Term& t : terms_) {
    double p = t.coeff;
    for (SubsetMask s = t.subset; s; s &= s - 1) p *= x[static_cast<std::size_t>(std::countr_zero(s))];
    total += p;
  }
  return total;
}

double FourierExpansion::at_vertex(Vertex v) const {
  double total = 0.0;
  for (const Term& t : terms_) total += t.coeff * vertex_sign(t.subset, v);
  return total;
}

void FourierExpansion::gradient_into(std::span<const double> x, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  int idx[64];
  double prefix[65];
  for (const Term& t : terms_) {
    int k = 0;
    for (SubsetMask s = t.subset; s; s &= s - 1) idx[k++] = std::countr_zero(s);
    prefix[0] = 1.0;
    for (int a = 0; a < k; ++a) prefix[a + 1] = prefix[a] * x[static_cast<std::size_t>(idx[a])];
    double suffix = 1.0;
    for (int a = k - 1; a >= 0; --a) {
      out[static_cast<std::size_t>(idx[a])] += t.coeff * prefix[a] * suffix;
      suffix *= x[static_cast<std::size_t>(idx[a])];
    }
  }
}

void FourierExpansion::gradient_at_vertex(Vertex v, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const Term& t : terms_) {
    for (SubsetMask s = t.subset; s; s &= s - 1) {
      const int i = std::countr_zero(s);
      const SubsetMask rest = t.subset & ~(SubsetMask{1} << i);
      out[static_cast<std::size_t>(i)] += t.coeff * vertex_sign(rest, v);
    }
  }
}

std::vector<double> FourierExpansion::truth_table(int max_n) const {
  require_dense(n_, max_n, "truth_table");
  const std::size_t size = vertex_count(n_);
  std::vector<double> coeffs(size, 0.0);
  for (const Term& t : terms_) coeffs[t.subset] = t.coeff;
  walsh_hadamard(coeffs);
  std::vector<double> table(size);
  for (std::size_t v = 0; v < size; ++v) table[v] = coeffs[(size - 1) ^ v];
  return table;
}

FourierExpansion FourierExpansion::operator+(const FourierExpansion& other) const {
  if (other.n_ != n_) throw DimensionMismatch("FourierExpansion::operator+", n_, other.n_);
  std::vector<Term> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return FourierExpansion(n_, std::move(all));
}

FourierExpansion FourierExpansion::scaled(double factor) const {
  std::vector<Term> all = terms_;
  for (Term& t : all) t.coeff *= factor;
  return FourierExpansion(n_, std::move(all));
}

FourierExpansion FourierExpansion::plus_linear(std::span<const double> theta) const {
  check_dim("plus_linear", n_, theta.size());
  return *this + linear(theta);
}

GradientMap gradient_map(const FourierExpansion& f) {
  return [f](std::span<const double> x, std::span<double> out) { f.gradient_into(x, out); };
}

double eval_extension(const FourierExpansion& f, const CubePoint& x) {
  check_dim("eval_extension", f.dim(), x.coords().size());
  return f(x.coords());
}

std::vector<double> gradient_extension(const FourierExpansion& f, const CubePoint& x) {
  check_dim("gradient_extension", f.dim(), x.coords().size());
  std::vector<double> g(static_cast<std::size_t>(f.dim()));
  f.gradient_into(x.coords(), g);
  return g;
}

double lipschitz_l1_from_table(int n, std::span<const double> table) {
  check_dim("lipschitz_l1", static_cast<int>(vertex_count(n)), table.size());
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vertex bit = Vertex{1} << i;
    for (Vertex v = 0; v < table.size(); ++v) {
      if (v & bit) continue;
      best = std::max(best, std::abs(table[v | bit] - table[v]) / 2.0);
    }
  }
  return best;
}

double lipschitz_l2_from_table(int n, std::span<const double> table) {
  check_dim("lipschitz_l2", static_cast<int>(vertex_count(n)), table.size());
  const auto partial = [&](Vertex v, int i) {
    const Vertex bit = Vertex{1} << i;
    return (table[v | bit] - table[v & ~bit]) / 2.0;
  };
  std::vector<double> grad(static_cast<std::size_t>(n));
  double best = 0.0;
  for (Vertex v = 0; v < table.size(); ++v) {
    for (int i = 0; i < n; ++i) grad[static_cast<std::size_t>(i)] = partial(v, i);
    for (int j = 0; j < n; ++j) {
      const Vertex bj = Vertex{1} << j;
      if (v & bj) continue;
      double num = 0.0;
      for (int i = 0; i < n; ++i) {
        if (i != j) num += std::abs(grad[static_cast<std::size_t>(i)] - partial(v | bj, i));
      }
      best = std::max(best, num / 2.0);
    }
  }
  return best;
}

double lipschitz_l1(const FourierExpansion& f, int max_n) {
  return lipschitz_l1_from_table(f.dim(), f.truth_table(max_n));
}

double lipschitz_l2(const FourierExpansion& f, int max_n) {
  // Terms of degree <= 1 leave the discrete gradient constant.
  std::vector<Term> curved;
  for (const Term& t : f.terms()) {
    if (std::popcount(t.subset) >= 2) curved.push_back(t);
  }
  const FourierExpansion g(f.dim(), std::move(curved));
  return lipschitz_l2_from_table(g.dim(), g.truth_table(max_n));
}

void walsh_hadamard(std::span<double> values) {
  const std::size_t size = values.size();
  if (size == 0 || (size & (size - 1))) throw InvalidArgument("walsh_hadamard: size must be a power of two");
  for (std::size_t h = 1; h < size; h <<= 1) {
    for (std::size_t i = 0; i < size; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = values[j];
        const double b = values[j + h];
        values[j] = a + b;
        values[j + h] = a - b;
      }
    }
  }
}

double l1_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += std::abs(x);
  return s;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  check_dim("l1_distance", static_cast<int>(a.size()), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s;
}

}  // namespace mfgl
