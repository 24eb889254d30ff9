#include <gtest/gtest.h>

#include <cmath>

#include "mfgl/complexity.hpp"
#include "mfgl/errors.hpp"
#include "mfgl/hamiltonians.hpp"
#include "oracles.hpp"

using namespace mfgl;

namespace {

HamiltonianSpec ising_spec(const Matrix& A, std::vector<double> mu) { return {IsingSpec{A, std::move(mu)}}; }

}  // namespace

TEST(BuildHamiltonian, CurieWeissMatchesPairSumAtEveryVertex) {
  for (int n : {3, 5, 8}) {
    const double beta = 1.3;
    const FourierExpansion f = build_hamiltonian({CurieWeissSpec{beta, n}}).expansion;
    for (Vertex v = 0; v < (Vertex{1} << n); ++v) {
      EXPECT_NEAR(f.at_vertex(v), oracle::curie_weiss_direct(beta, n, oracle::coords(v, n)), 1e-12);
    }
  }
}

TEST(BuildHamiltonian, CurieWeissGradientIsScaledSumOfOthers) {
  const int n = 6;
  const Hamiltonian h = build_hamiltonian({CurieWeissSpec{2.0, n}});
  std::mt19937_64 rng(1);
  const auto x = oracle::uniform_vector(n, -1, 1, rng);
  std::vector<double> g(n);
  h.gradient(x, g);
  double total = 0.0;
  for (double v : x) total += v;
  for (int i = 0; i < n; ++i) EXPECT_NEAR(g[static_cast<std::size_t>(i)], 2.0 / n * (total - x[static_cast<std::size_t>(i)]), 1e-12);
}

TEST(BuildHamiltonian, TriangleAllPlusIsTwoBeta) {
  const double beta = 0.7;
  const FourierExpansion f = build_hamiltonian({TriangleCountSpec{beta, 3}}).expansion;
  EXPECT_NEAR(f.at_vertex(0b111), 2.0 * beta, 1e-12);
}

TEST(BuildHamiltonian, TriangleMatchesOrderedTripleSum) {
  for (int N : {3, 4, 5}) {
    const double beta = -0.4;
    const FourierExpansion f = build_hamiltonian({TriangleCountSpec{beta, N}}).expansion;
    const int n = N * (N - 1) / 2;
    for (Vertex v = 0; v < (Vertex{1} << n); v += 7) {
      EXPECT_NEAR(f.at_vertex(v), oracle::triangle_direct(beta, N, oracle::coords(v, n)), 1e-12);
    }
  }
}

TEST(BuildHamiltonian, LinearIsInnerProduct) {
  const std::vector<double> theta = {0.5, -0.25, 2.0};
  const FourierExpansion f = build_hamiltonian({LinearSpec{theta}}).expansion;
  for (Vertex v = 0; v < 8; ++v) {
    const auto x = oracle::coords(v, 3);
    EXPECT_NEAR(f.at_vertex(v), theta[0] * x[0] + theta[1] * x[1] + theta[2] * x[2], 1e-15);
  }
}

TEST(BuildHamiltonian, IsingClosedFormAgreesWithExpansion) {
  std::mt19937_64 rng(2);
  const int n = 7;
  const Matrix A = oracle::random_symmetric(n, 1.0, rng);
  const auto mu = oracle::uniform_vector(n, -1, 1, rng);
  const Hamiltonian h = build_hamiltonian(ising_spec(A, mu));
  ASSERT_TRUE(h.closed_form_gradient);
  std::vector<double> g(n);
  for (Vertex v = 0; v < (Vertex{1} << n); ++v) {
    const auto x = oracle::coords(v, n);
    h.gradient(x, g);
    const auto ext = gradient_extension(h.expansion, CubePoint(x));
    for (int i = 0; i < n; ++i) EXPECT_DOUBLE_EQ(g[static_cast<std::size_t>(i)], ext[static_cast<std::size_t>(i)]);
  }
}

TEST(BuildHamiltonian, RejectsInvalidSpecs) {
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  EXPECT_THROW(build_hamiltonian(ising_spec(asym, {0, 0})), InvalidArgument);
  Matrix diag(2, 2);
  diag(0, 0) = 1.0;
  EXPECT_THROW(build_hamiltonian(ising_spec(diag, {0, 0})), InvalidArgument);
  EXPECT_THROW(build_hamiltonian({CurieWeissSpec{-1.0, 4}}), InvalidArgument);
  auto inner = std::make_shared<const HamiltonianSpec>(HamiltonianSpec{CurieWeissSpec{1.0, 4}});
  EXPECT_THROW(build_hamiltonian({SmoothedCutoffSpec{inner, 0.1, 0.0}}), InvalidArgument);
}

TEST(BuildHamiltonian, SmoothedCutoffComposesPsi) {
  auto inner = std::make_shared<const HamiltonianSpec>(HamiltonianSpec{CurieWeissSpec{1.5, 6}});
  const double t = 0.2, delta = 0.1;
  const FourierExpansion g = build_hamiltonian({SmoothedCutoffSpec{inner, t, delta}}).expansion;
  const FourierExpansion f = build_hamiltonian(*inner).expansion;
  const ScalarShape h = ScalarShape::cutoff();
  for (Vertex v = 0; v < 64; ++v) {
    EXPECT_NEAR(g.at_vertex(v), 6.0 * h((f.at_vertex(v) / 6.0 - t) / delta), 1e-10);
  }
}

TEST(BuildHamiltonian, SmoothedCutoffAboveCap) {
  auto inner = std::make_shared<const HamiltonianSpec>(HamiltonianSpec{CurieWeissSpec{1.5, 24}});
  EXPECT_THROW(build_hamiltonian({SmoothedCutoffSpec{inner, 0.2, 0.1}}), CapExceeded);
}

TEST(IsingBounds, ZeroCouplings) {
  const ComplexityParams p = ising_complexity_bounds(Matrix(4, 4), std::vector<double>(4, 0.0));
  EXPECT_EQ(p.D, 0.0);
  EXPECT_EQ(p.L1, 1.0);
  EXPECT_EQ(p.L2, 1.0);
  EXPECT_EQ(p.D_provenance, Provenance::closed_form_bound);
}

TEST(IsingBounds, CurieWeissAsIsing) {
  for (int n : {4, 8, 16}) {
    const double beta = 2.0;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) A(i, j) = i == j ? 0.0 : beta / n;
    }
    const ComplexityParams p = ising_complexity_bounds(A, std::vector<double>(static_cast<std::size_t>(n), 0.0));
    EXPECT_NEAR(p.D, beta * std::sqrt(n * (1.0 - 1.0 / n)), 1e-12);
    EXPECT_LE(p.D, beta * std::sqrt(n));
  }
}

TEST(IsingBounds, MonteCarloWidthBelowClosedForm) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const int n = 8;
    const Matrix A = oracle::random_symmetric(n, 0.5, rng);
    const auto mu = oracle::uniform_vector(n, -0.5, 0.5, rng);
    const ComplexityParams bound = ising_complexity_bounds(A, mu);
    const FourierExpansion f = build_hamiltonian(ising_spec(A, mu)).expansion;
    const WidthEstimate w = gaussian_width_mc(gradient_cloud(f), 20000, 5 + trial);
    EXPECT_LE(w.estimate, bound.D + 3 * w.std_error);
  }
}

TEST(IsingBounds, RejectsAsymmetric) {
  Matrix A(2, 2);
  A(0, 1) = 1.0;
  EXPECT_THROW(ising_complexity_bounds(A, std::vector<double>{0, 0}), InvalidArgument);
}

TEST(CutoffShape, KnotValues) {
  const ScalarShape h = ScalarShape::cutoff();
  EXPECT_EQ(cutoff_shape_eval(h, -2.0).value, -3.0);
  EXPECT_EQ(cutoff_shape_eval(h, -1.0).value, -1.0);
  EXPECT_EQ(cutoff_shape_eval(h, 0.0).value, 0.0);
}

TEST(CutoffShape, DerivativeBoundsAndMonotone) {
  const ScalarShape h = ScalarShape::cutoff();
  double prev = -1e300;
  for (double x = -3.0; x <= 2.0; x += 1e-3) {
    const ShapeJet j = h.eval(x);
    EXPECT_LE(std::abs(j.d1), 2.0);
    EXPECT_LE(std::abs(j.d2), 2.0);
    EXPECT_LE(j.value, 0.0);
    EXPECT_GE(j.value, prev);
    prev = j.value;
  }
  EXPECT_EQ(h.b1(), 2.0);
  EXPECT_EQ(h.b2(), 2.0);
}

TEST(CutoffShape, DerivativesMatchDifferences) {
  const ScalarShape h = ScalarShape::cutoff();
  for (double x : {-2.5, -0.7, -0.2, 0.5}) {
    const double d = 1e-6;
    EXPECT_NEAR(h.eval(x).d1, (h(x + d) - h(x - d)) / (2 * d), 1e-6);
  }
}

TEST(CubicQuinticShape, ContinuousAtOne) {
  const ScalarShape h = ScalarShape::remark14();
  EXPECT_NEAR(h(1.0 - 1e-12), 0.5, 1e-9);
  EXPECT_NEAR(h(1.0), 0.5, 1e-15);
  EXPECT_NEAR(h.eval(1.0 - 1e-12).d1, h.eval(1.0).d1, 1e-9);
  EXPECT_EQ(h.eval(0.0).d1, 0.0);
}

TEST(CubicQuinticShape, SecondDerivativeBound) {
  const ScalarShape h = ScalarShape::remark14();
  double worst = 0.0;
  for (double x = -3.0; x <= 3.0; x += 1e-4) worst = std::max(worst, std::abs(h.eval(x).d2));
  EXPECT_LE(worst, h.b2() + 1e-12);
  EXPECT_GE(worst, h.b2() - 1e-3);
}

TEST(SmoothedCutoff, WeightsFollowBands) {
  const FourierExpansion f = build_hamiltonian({CurieWeissSpec{1.5, 8}}).expansion;
  const double t = 0.3, delta = 0.05;
  const SmoothedCutoff sc = smoothed_cutoff_weights(f, t, delta);
  EXPECT_NEAR(sc.delta_prime, (std::log(4.0) + 1.0) * delta / 2.0, 1e-15);
  const double n = 8;
  for (std::size_t v = 0; v < sc.f_values.size(); ++v) {
    const double fv = sc.f_values[v];
    EXPECT_LE(sc.g_values[v], 0.0);
    if (fv >= t * n) {
      EXPECT_EQ(sc.g_values[v], 0.0);
      EXPECT_EQ(sc.phi[v], 1.0);
    } else if (fv < (t - sc.delta_prime) * n) {
      EXPECT_EQ(sc.phi[v], 0.0);
    } else {
      EXPECT_NEAR(sc.phi[v], std::exp(sc.g_values[v]), 1e-15);
    }
  }
}

TEST(CompositionParams, AffineShape) {
  const ComplexityParams base = ComplexityParams::with_floors(3.0, 2.0, 1.5, Provenance::exact, Provenance::exact);
  const CompositionParams c = composition_params(0.5, 0.0, base, 10);
  EXPECT_DOUBLE_EQ(c.D, 1.5);
  EXPECT_EQ(c.L3, 0.0);
}

TEST(CompositionParams, DirectFormula) {
  const ComplexityParams base = ComplexityParams::with_floors(0.0, 0.0, 0.0, Provenance::exact, Provenance::exact);
  const CompositionParams c = composition_params(1.0, 1.0, base, 4);
  EXPECT_DOUBLE_EQ(c.D, 4.0);
  EXPECT_DOUBLE_EQ(c.L1, 1.0);
  EXPECT_DOUBLE_EQ(c.L2, 13.0);
  EXPECT_DOUBLE_EQ(c.L3, 16.0);
}

TEST(CompositionParams, LargeDeviationInstantiationCancelsN) {
  const ComplexityParams base = ComplexityParams::with_floors(2.5, 3.0, 1.0, Provenance::exact, Provenance::exact);
  const double delta = 0.1;
  for (int n : {5, 50, 500}) {
    const CompositionParams c = composition_params(2.0 / delta, 2.0 / (n * delta * delta), base, n);
    EXPECT_NEAR(c.D, 2.0 / delta * 2.5 + 2.0 / (delta * delta) * 9.0, 1e-9);
  }
}

TEST(CompositionParams, RejectsNegative) {
  EXPECT_THROW(composition_params(-1.0, 0.0, ComplexityParams{}, 3), InvalidArgument);
}

TEST(CompositionParams, LipschitzBoundsHoldOnRandomInstances) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 5;
    const FourierExpansion f = oracle::random_expansion(n, 2, rng);
    const ScalarShape h = ScalarShape::cutoff().rescaled(1.0, 0.3, 0.8);
    const FourierExpansion hf = compose(f, h);
    const double L1 = std::max(1.0, lipschitz_l1(f));
    const double L2 = std::max(1.0, lipschitz_l2(f));
    EXPECT_LE(lipschitz_l1(hf), h.b1() * L1 + 1e-12);
    EXPECT_LE(lipschitz_l2(hf), h.b1() * L2 + 3 * h.b2() * L1 * L1 * n + 1e-12);
  }
}

TEST(Provenance, StringRoundTrip) {
  for (Provenance p : {Provenance::exact, Provenance::monte_carlo, Provenance::closed_form_bound}) {
    EXPECT_EQ(provenance_from_string(to_string(p)), p);
  }
  EXPECT_THROW(provenance_from_string("guess"), InvalidArgument);
}
