#include <gtest/gtest.h>

#include <boost/math/special_functions/gamma.hpp>

#include "rmtlab/dpp.hpp"

using namespace rmt;

namespace {

KernelSpec kernel(KernelFamily f, std::size_t n) {
  KernelSpec k;
  k.family = f;
  k.n = n;
  return k;
}

// Var N_[0,x] for the circular kernel from the Fourier expansion of |K|^2.
double dyson_variance_oracle(std::size_t n, double x) {
  const double nn = static_cast<double>(n);
  double inner = nn * x * x;
  for (std::size_t d = 1; d < n; ++d) {
    const double s = std::sin(0.5 * static_cast<double>(d) * x);
    inner += 2.0 * (nn - static_cast<double>(d)) * 4.0 * s * s / static_cast<double>(d * d);
  }
  return nn * x / kTwoPi - inner / (kTwoPi * kTwoPi);
}

}  // namespace

TEST(Kernel, DiagonalExamples) {
  EXPECT_NEAR(kernel_eval(kernel(KernelFamily::DysonCircle, 7), 1.3, 1.3).real(), 7.0, 1e-12);
  EXPECT_NEAR(kernel_eval(kernel(KernelFamily::Ginibre, 5), 0.0, 0.0).real(), 1.0 / kPi, 1e-15);
  EXPECT_NEAR(kernel_eval(kernel(KernelFamily::HermiteGUE, 1), 0.0, 0.0).real(), 1.0 / std::sqrt(kPi), 1e-15);
}

TEST(Kernel, HermiteFunctionsAreOrthonormal) {
  const auto nodes = quad::composite_nodes(-15.0, 15.0, 120);
  const std::size_t m = 12;
  std::vector<std::vector<double>> g(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < nodes.x.size(); ++i) {
    const auto psi = hermite_functions(nodes.x[i], m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) g[a][b] += nodes.w[i] * psi[a] * psi[b];
  }
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) EXPECT_NEAR(g[a][b], a == b ? 1.0 : 0.0, 1e-12);
}

TEST(Kernel, ChristoffelDarbouxMatchesSum) {
  for (double x : {-3.0, -0.4, 0.7, 4.1})
    for (double y : {-2.2, 0.1, 3.3}) {
      const auto px = hermite_functions(x, 21), py = hermite_functions(y, 21);
      EXPECT_NEAR(hermite_kernel_cd(20, x, y, px[20], px[19], py[20], py[19]), hermite_kernel(20, x, y), 1e-12);
    }
}

TEST(Kernel, GinibreIsHermitianSymmetric) {
  const auto k = kernel(KernelFamily::Ginibre, 9);
  const cplx z(0.7, -1.1), w(-0.3, 0.5);
  EXPECT_NEAR(std::abs(kernel_eval(k, z, w) - std::conj(kernel_eval(k, w, z))), 0.0, 1e-15);
}

TEST(Counting, TotalMass) {
  for (std::size_t n : {1u, 5u, 20u, 50u}) {
    EXPECT_NEAR(counting_mean(kernel(KernelFamily::HermiteGUE, n), 1e3), static_cast<double>(n), 1e-6);
    EXPECT_NEAR(counting_mean(kernel(KernelFamily::DysonCircle, n), kTwoPi), static_cast<double>(n), 1e-6);
    EXPECT_NEAR(counting_mean(kernel(KernelFamily::Ginibre, n), 1e3), static_cast<double>(n), 1e-6);
  }
}

TEST(Counting, DysonMeanIsLinear) {
  EXPECT_NEAR(counting_mean(kernel(KernelFamily::DysonCircle, 10), kPi), 5.0, 1e-9);
  EXPECT_NEAR(counting_mean(kernel(KernelFamily::DysonCircle, 13), 1.0), 13.0 / kTwoPi, 1e-9);
}

TEST(Counting, DysonVarianceMatchesFourierOracle) {
  for (std::size_t n : {3u, 10u, 25u})
    for (double x : {0.4, kPi, 5.0})
      EXPECT_NEAR(counting_variance(kernel(KernelFamily::DysonCircle, n), x), dyson_variance_oracle(n, x), 1e-6) << n << " " << x;
}

TEST(Counting, GinibreMatchesIndependentGammaModuli) {
  // |z|^2 over the points are independent Gamma(k+1, 1), k < n
  for (std::size_t n : {4u, 16u, 40u})
    for (double r : {0.5, 1.7, std::sqrt(static_cast<double>(n))}) {
      double mean = 0.0, var = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double p = boost::math::gamma_p(static_cast<double>(k + 1), r * r);
        mean += p;
        var += p * (1.0 - p);
      }
      const auto k = kernel(KernelFamily::Ginibre, n);
      EXPECT_NEAR(counting_mean(k, r), mean, 1e-8) << n << " " << r;
      EXPECT_NEAR(counting_variance(k, r), var, 1e-6) << n << " " << r;
    }
}

TEST(Counting, HermiteVarianceIdentity) {
  // Var N_x = E N_x - int int_{(-inf,x]^2} K^2
  const std::size_t n = 8;
  const auto k = kernel(KernelFamily::HermiteGUE, n);
  for (double x : {-1.5, 0.0, 2.0}) {
    const auto nodes = quad::composite_nodes(-12.0, x, 80);
    double inner = 0.0;
    for (std::size_t i = 0; i < nodes.x.size(); ++i)
      for (std::size_t j = 0; j < nodes.x.size(); ++j) {
        const double v = hermite_kernel(n, nodes.x[i], nodes.x[j]);
        inner += nodes.w[i] * nodes.w[j] * v * v;
      }
    EXPECT_NEAR(counting_variance(k, x), counting_mean(k, x) - inner, 1e-6) << x;
  }
  EXPECT_NEAR(counting_variance(k, 0.9), counting_variance(k, -0.9), 1e-7);
}

TEST(Counting, BoundaryVariances) {
  EXPECT_EQ(counting_variance(kernel(KernelFamily::DysonCircle, 10), kTwoPi), 0.0);
  EXPECT_EQ(counting_variance(kernel(KernelFamily::DysonCircle, 10), 0.0), 0.0);
  EXPECT_EQ(counting_mean(kernel(KernelFamily::HermiteGUE, 10), -1e3), 0.0);
  EXPECT_EQ(counting_variance(kernel(KernelFamily::HermiteGUE, 10), -1e3), 0.0);
  EXPECT_EQ(counting_mean(kernel(KernelFamily::Ginibre, 10), 0.0), 0.0);
}

TEST(Counting, HermiteEdgeMapping) {
  const std::size_t n = 50;
  EXPECT_EQ(gue_coordinate_map(n, 0.0), 0.0);
  EXPECT_NEAR(gue_coordinate_map(n, 2.0), std::sqrt(2.0 * n), 1e-13);
  EXPECT_NEAR(gue_coordinate_unmap(n, gue_coordinate_map(n, 0.73)), 0.73, 1e-15);
  EXPECT_NEAR(counting_mean(kernel(KernelFamily::HermiteGUE, n), gue_coordinate_map(n, 2.0)), 50.0, 1e-3 * 50.0);
  EXPECT_NEAR(counting_mean(kernel(KernelFamily::HermiteGUE, n), 0.0), 25.0, 1e-8);
}

TEST(Bernstein, Formula) {
  EXPECT_NEAR(bernstein_tail(0.0, 1.0), 2.0 * std::exp(-1.0), 1e-15);
  EXPECT_EQ(bernstein_tail(3.0, 0.0), 2.0);
  EXPECT_NEAR(bernstein_tail(1.5, 2.0), 2.0 * std::exp(-4.0 / 5.0), 1e-15);
  EXPECT_THROW(bernstein_tail(-1.0, 1.0), Error);
}
