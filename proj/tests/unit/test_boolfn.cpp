#include <gtest/gtest.h>

#include <cmath>

#include "mfgl/boolfn.hpp"
#include "mfgl/errors.hpp"
#include "mfgl/scalar_shape.hpp"
#include "oracles.hpp"

using namespace mfgl;

namespace {

FourierExpansion pair01(int n) { return FourierExpansion(n, {{0b11, 1.0}}); }

}  // namespace

TEST(FourierExpansion, NormalisesTerms) {
  FourierExpansion f(3, {{0b101, 1.0}, {0b001, 2.0}, {0b101, -1.0}, {0b010, 0.0}});
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].subset, 0b001u);
  EXPECT_EQ(f.terms()[0].coeff, 2.0);
}

TEST(FourierExpansion, RejectsOutOfRangeSubset) {
  EXPECT_THROW(FourierExpansion(2, {{0b100, 1.0}}), InvalidArgument);
  EXPECT_THROW(FourierExpansion(0), InvalidArgument);
}

TEST(EvalExtension, MonomialAtVertex) {
  EXPECT_EQ(eval_extension(pair01(2), CubePoint({1.0, -1.0})), -1.0);
}

TEST(EvalExtension, MonomialInterior) {
  EXPECT_DOUBLE_EQ(eval_extension(pair01(2), CubePoint({0.5, 0.5})), 0.25);
}

TEST(EvalExtension, DimensionMismatchThrows) {
  EXPECT_THROW(eval_extension(pair01(3), CubePoint({0.5, 0.5})), DimensionMismatch);
}

TEST(EvalExtension, MatchesExhaustiveExpectationAtProductMean) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 6;
    const FourierExpansion f = oracle::random_expansion(n, 3, rng);
    const std::vector<double> z = oracle::uniform_vector(n, -1.0, 1.0, rng);
    const double expected = oracle::product_expectation(z, oracle::table_direct(f));
    EXPECT_NEAR(eval_extension(f, CubePoint(z)), expected, 1e-12);
  }
}

TEST(EvalExtension, VertexValuesMatchDirectProducts) {
  std::mt19937_64 rng(3);
  const FourierExpansion f = oracle::random_expansion(7, 4, rng);
  const std::vector<double> direct = oracle::table_direct(f);
  const std::vector<double> table = f.truth_table();
  for (Vertex v = 0; v < table.size(); ++v) {
    EXPECT_NEAR(table[v], direct[v], 1e-12);
    EXPECT_NEAR(f.at_vertex(v), direct[v], 1e-12);
  }
}

TEST(CubePoint, ValidatesRange) {
  EXPECT_THROW(CubePoint({1.5}), InvalidArgument);
  EXPECT_NO_THROW(CubePoint({1.0 + 5e-13}));
  EXPECT_TRUE(CubePoint({1.0, -1.0}).is_vertex());
  EXPECT_FALSE(CubePoint({1.0, 0.0}).is_vertex());
}

TEST(GradientExtension, LinearIsConstant) {
  const std::vector<double> mu = {0.3, -1.2, 2.0};
  const FourierExpansion f = FourierExpansion::linear(mu);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    const auto g = gradient_extension(f, CubePoint(oracle::uniform_vector(3, -1, 1, rng)));
    for (int i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(g[static_cast<std::size_t>(i)], mu[static_cast<std::size_t>(i)]);
  }
}

TEST(GradientExtension, QuadraticFormGivesAxPlusMu) {
  std::mt19937_64 rng(7);
  const int n = 6;
  const Matrix A = oracle::random_symmetric(n, 1.0, rng);
  const std::vector<double> mu = oracle::uniform_vector(n, -1, 1, rng);
  std::vector<Term> terms;
  for (int i = 0; i < n; ++i) {
    terms.push_back({SubsetMask{1} << i, mu[static_cast<std::size_t>(i)]});
    for (int j = i + 1; j < n; ++j) terms.push_back({(SubsetMask{1} << i) | (SubsetMask{1} << j), A(i, j)});
  }
  const FourierExpansion f(n, terms);
  const std::vector<double> x = oracle::uniform_vector(n, -1, 1, rng);
  const auto g = gradient_extension(f, CubePoint(x));
  for (int i = 0; i < n; ++i) {
    double ax = mu[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) ax += A(i, j) * x[static_cast<std::size_t>(j)];
    EXPECT_NEAR(g[static_cast<std::size_t>(i)], ax, 1e-12);
  }
}

TEST(GradientExtension, MatchesCentralDifferences) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 4;
    const FourierExpansion f = oracle::random_expansion(n, 3, rng);
    const std::vector<double> x = oracle::uniform_vector(n, -0.9, 0.9, rng);
    const auto g = gradient_extension(f, CubePoint(x));
    for (int i = 0; i < n; ++i) EXPECT_NEAR(g[static_cast<std::size_t>(i)], oracle::central_difference(f, x, i, 0.05), 1e-10);
  }
}

TEST(GradientExtension, AtVerticesIsHalfDifference) {
  std::mt19937_64 rng(17);
  const FourierExpansion f = oracle::random_expansion(5, 3, rng);
  std::vector<double> g(5);
  for (Vertex v = 0; v < 32; ++v) {
    f.gradient_at_vertex(v, g);
    const auto direct = oracle::gradient_direct(f, v);
    const auto ext = gradient_extension(f, CubePoint::vertex(v, 5));
    for (int i = 0; i < 5; ++i) {
      EXPECT_NEAR(g[static_cast<std::size_t>(i)], direct[static_cast<std::size_t>(i)], 1e-12);
      EXPECT_NEAR(ext[static_cast<std::size_t>(i)], direct[static_cast<std::size_t>(i)], 1e-12);
    }
  }
}

TEST(LipschitzL1, LinearIsMaxAbsCoefficient) {
  const std::vector<double> mu = {0.3, -1.7, 1.2};
  EXPECT_DOUBLE_EQ(lipschitz_l1(FourierExpansion::linear(mu)), 1.7);
}

TEST(LipschitzL1, IsingRowSumBound) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 6;
    const Matrix A = oracle::random_symmetric(n, 1.0, rng);
    const std::vector<double> mu = oracle::uniform_vector(n, -1, 1, rng);
    std::vector<Term> terms;
    double mu_max = 0.0, row_max = 0.0;
    for (int i = 0; i < n; ++i) {
      mu_max = std::max(mu_max, std::abs(mu[static_cast<std::size_t>(i)]));
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += std::abs(A(i, j));
      row_max = std::max(row_max, row);
      terms.push_back({SubsetMask{1} << i, mu[static_cast<std::size_t>(i)]});
      for (int j = i + 1; j < n; ++j) terms.push_back({(SubsetMask{1} << i) | (SubsetMask{1} << j), A(i, j)});
    }
    EXPECT_LE(lipschitz_l1(FourierExpansion(n, terms)), mu_max + row_max + 1e-12);
  }
}

TEST(LipschitzL1, EqualsBruteForce) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierExpansion f = oracle::random_expansion(6, 2, rng);
    EXPECT_NEAR(lipschitz_l1(f), oracle::lipschitz_brute(f), 1e-12);
  }
}

TEST(LipschitzL1, CapExceeded) {
  EXPECT_THROW(lipschitz_l1(FourierExpansion(21), 20), CapExceeded);
}

TEST(LipschitzL2, LinearIsZero) {
  const std::vector<double> mu = {0.3, -1.7, 1.2};
  EXPECT_EQ(lipschitz_l2(FourierExpansion::linear(mu)), 0.0);
}

TEST(LipschitzL2, CurieWeissCouplingBoundedByBeta) {
  for (int n : {3, 6, 9}) {
    const double beta = 1.7;
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) terms.push_back({(SubsetMask{1} << i) | (SubsetMask{1} << j), beta / n});
    }
    EXPECT_LE(lipschitz_l2(FourierExpansion(n, terms)), beta + 1e-12);
  }
}

TEST(LipschitzL2, HammingOneEqualsAllPairs) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 5;
    const FourierExpansion f = oracle::random_expansion(n, 3, rng);
    EXPECT_NEAR(lipschitz_l2(f), oracle::l2_all_pairs(f), 1e-12);
  }
}

TEST(Compose, IdentityKeepsTable) {
  std::mt19937_64 rng(31);
  const FourierExpansion f = oracle::random_expansion(6, 3, rng);
  const FourierExpansion g = compose(f, [](double x) { return x; });
  const auto a = f.truth_table(), b = g.truth_table();
  for (std::size_t v = 0; v < a.size(); ++v) EXPECT_NEAR(a[v], b[v], 1e-12);
}

TEST(Compose, ConstantGivesEmptySetTerm) {
  const FourierExpansion g = compose(FourierExpansion::constant(4, 0.7), [](double x) { return x * x + 1; });
  ASSERT_EQ(g.terms().size(), 1u);
  EXPECT_EQ(g.terms()[0].subset, 0u);
  EXPECT_NEAR(g.terms()[0].coeff, 1.49, 1e-14);
}

TEST(Compose, CutoffRoundTripAtEveryVertex) {
  std::mt19937_64 rng(37);
  const ScalarShape h = ScalarShape::cutoff();
  for (int trial = 0; trial < 5; ++trial) {
    const FourierExpansion f = oracle::random_expansion(8, 3, rng);
    const FourierExpansion g = compose(f, h);
    const auto tf = oracle::table_direct(f);
    const auto tg = oracle::table_direct(g);
    for (std::size_t v = 0; v < tf.size(); ++v) EXPECT_NEAR(tg[v], h(tf[v]), 1e-10);
  }
}

TEST(Compose, RejectsNonFiniteShape) {
  EXPECT_THROW(compose(FourierExpansion::constant(2, 0.0), [](double x) { return 1.0 / x; }), NumericError);
}

TEST(Compose, CapExceeded) {
  EXPECT_THROW(compose(FourierExpansion(22), [](double x) { return x; }), CapExceeded);
}

TEST(TruthTable, RoundTripsThroughTransform) {
  std::mt19937_64 rng(41);
  const FourierExpansion f = oracle::random_expansion(7, 4, rng);
  const FourierExpansion g = FourierExpansion::from_truth_table(7, f.truth_table());
  ASSERT_EQ(f.terms().size(), g.terms().size());
  for (std::size_t k = 0; k < f.terms().size(); ++k) {
    EXPECT_EQ(f.terms()[k].subset, g.terms()[k].subset);
    EXPECT_NEAR(f.terms()[k].coeff, g.terms()[k].coeff, 1e-13);
  }
}

TEST(ZeroFunction, AllOperationsAccept) {
  const FourierExpansion z(4);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(eval_extension(z, CubePoint::constant(4, 0.3)), 0.0);
  EXPECT_EQ(lipschitz_l1(z), 0.0);
  EXPECT_EQ(lipschitz_l2(z), 0.0);
  EXPECT_TRUE(compose(z, [](double x) { return x; }).is_zero());
}

TEST(Properties, VertexLipschitzInequality) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<Vertex> pick(0, 255);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierExpansion f = oracle::random_expansion(8, 3, rng);
    const double L = lipschitz_l1(f);
    for (int k = 0; k < 50; ++k) {
      const Vertex x = pick(rng), y = pick(rng);
      const double dist = 2.0 * std::popcount(x ^ y);
      EXPECT_LE(std::abs(f.at_vertex(x) - f.at_vertex(y)), L * dist + 1e-12);
    }
  }
}

TEST(Properties, MultilinearInEachCoordinate) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const FourierExpansion f = oracle::random_expansion(5, 4, rng);
    std::vector<double> x = oracle::uniform_vector(5, -1, 1, rng);
    const int i = trial % 5;
    auto at = [&](double s) {
      x[static_cast<std::size_t>(i)] = s;
      return f(x);
    };
    const double a = at(-1.0), b = at(1.0), mid = at(0.3);
    EXPECT_NEAR(mid, a + (b - a) * (0.3 + 1.0) / 2.0, 1e-12);
  }
}

TEST(Properties, TanhContraction) {
  std::mt19937_64 rng(53);
  for (int k = 0; k < 100; ++k) {
    const auto u = oracle::uniform_vector(6, -4, 4, rng);
    const auto v = oracle::uniform_vector(6, -4, 4, rng);
    std::vector<double> tu(6), tv(6);
    for (int i = 0; i < 6; ++i) {
      tu[static_cast<std::size_t>(i)] = std::tanh(u[static_cast<std::size_t>(i)]);
      tv[static_cast<std::size_t>(i)] = std::tanh(v[static_cast<std::size_t>(i)]);
    }
    EXPECT_LE(l1_distance(tu, tv), l1_distance(u, v));
  }
}

TEST(WalshHadamard, MatchesCharacterSums) {
  std::vector<double> in = {1.0, 2.0, -0.5, 3.0};
  std::vector<double> out = in;
  walsh_hadamard(out);
  for (std::size_t u = 0; u < 4; ++u) {
    double s = 0.0;
    for (std::size_t S = 0; S < 4; ++S) s += in[S] * ((std::popcount(S & u) % 2) ? -1.0 : 1.0);
    EXPECT_DOUBLE_EQ(out[u], s);
  }
}
