#include <gtest/gtest.h>

#include "rmtlab/rng.hpp"
#include "rmtlab/transport.hpp"

using namespace rmt;

namespace {

std::vector<cplx> random_points(RngStream& rng, std::size_t n) {
  std::vector<cplx> z(n);
  for (auto& v : z) v = {rng.normal(), rng.normal()};
  return z;
}

}  // namespace

TEST(Sorted1d, Examples) {
  EXPECT_EQ(wp_sorted_1d(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2}, 2.0).distance, 0.0);
  EXPECT_NEAR(wp_sorted_1d(std::vector<double>{0, 2}, std::vector<double>{1, 3}, 1.0).distance, 1.0, 1e-15);
  EXPECT_NEAR(wp_sorted_1d(std::vector<double>{-1, 1}, std::vector<double>{0, 0}, 2.0).distance, 1.0, 1e-15);
  EXPECT_THROW(wp_sorted_1d(std::vector<double>{1}, std::vector<double>{1, 2}, 2.0), Error);
  EXPECT_THROW(wp_sorted_1d(std::vector<double>{1}, std::vector<double>{1}, 0.5), Error);
}

TEST(Assignment, Examples) {
  const std::vector<cplx> z{1.0, -1.0}, w{cplx(0, 1), cplx(0, -1)};
  EXPECT_EQ(wp_assignment_plane(z, z, 2.0).distance, 0.0);
  EXPECT_NEAR(wp_assignment_plane(z, w, 2.0).distance, std::sqrt(2.0), 1e-14);
  for (double p : {1.0, 1.5, 2.0, 3.0})
    EXPECT_NEAR(wp_assignment_plane(std::vector<cplx>{0.0}, std::vector<cplx>{cplx(3, 4)}, p).distance, 5.0, 1e-14);
}

TEST(BruteForce, Examples) {
  EXPECT_NEAR(wp_bruteforce({cplx(1, 2)}, {cplx(4, 6)}, 2.0).distance, 5.0, 1e-14);
  const std::vector<cplx> a{1.0, cplx(0, 2), cplx(-3, 1), 0.5};
  const std::vector<cplx> b{a[2], a[0], a[3], a[1]};
  EXPECT_NEAR(wp_bruteforce(a, b, 2.0).distance, 0.0, 1e-15);
  EXPECT_THROW(wp_bruteforce(std::vector<cplx>(9), std::vector<cplx>(9), 2.0), Error);
}

TEST(Assignment, AgreesWithBruteForce) {
  for (std::uint64_t r = 0; r < 300; ++r) {
    RngStream rng(21, "bf", 0, r);
    const std::size_t n = 2 + r % 6;
    const double p = r % 3 == 0 ? 1.0 : (r % 3 == 1 ? 2.0 : 1.5);
    const auto a = random_points(rng, n), b = random_points(rng, n);
    EXPECT_NEAR(wp_assignment_plane(a, b, p).distance, wp_bruteforce(a, b, p).distance, 1e-9);
  }
}

TEST(Assignment, MatchingIsAPermutationAndAchievesTheCost) {
  RngStream rng(4, "perm", 0, 0);
  const auto a = random_points(rng, 40), b = random_points(rng, 40);
  const auto res = wp_assignment_plane(a, b, 2.0);
  ASSERT_EQ(res.matching.size(), 40u);
  std::vector<bool> seen(40, false);
  double cost = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    ASSERT_LT(res.matching[i], 40u);
    EXPECT_FALSE(seen[res.matching[i]]);
    seen[res.matching[i]] = true;
    cost += std::norm(a[i] - b[res.matching[i]]);
  }
  EXPECT_NEAR(std::sqrt(cost / 40.0), res.distance, 1e-12);
}

TEST(Assignment, RealLineAgreesWithSortedFormula) {
  for (std::uint64_t r = 0; r < 50; ++r) {
    RngStream rng(6, "line", 0, r);
    std::vector<double> x(12), y(12);
    std::vector<cplx> zx, zy;
    for (std::size_t i = 0; i < 12; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
      zx.emplace_back(x[i], 0.0);
      zy.emplace_back(y[i], 0.0);
    }
    EXPECT_NEAR(wp_sorted_1d(x, y, 2.0).distance, wp_assignment_plane(zx, zy, 2.0).distance, 1e-9);
    EXPECT_NEAR(wp_sorted_1d(x, y, 1.0).distance, wp_assignment_plane(zx, zy, 1.0).distance, 1e-9);
  }
}

TEST(CyclicShift, AgreesWithAssignmentOnCircle) {
  RngStream rng(1, "circle", 0, 0);
  std::vector<cplx> z(16);
  for (auto& v : z) v = std::polar(1.0, kTwoPi * rng.uniform());
  const auto roots = discretize_law(LimitLaw::uniform_circle(), 16).atoms();
  EXPECT_NEAR(wp_cyclic_shift(z, roots, 2.0).distance, wp_assignment_plane(z, roots, 2.0).distance, 1e-9);
}

TEST(QuantileLaw, PointMassAgainstGaussian) {
  EXPECT_NEAR(wp_quantile_vs_law(std::vector<double>{0.0}, LimitLaw::std_gaussian(), 2.0).distance, 1.0, 1e-8);
  EXPECT_NEAR(wp_quantile_vs_law(std::vector<double>{0.0}, LimitLaw::std_gaussian(), 1.0).distance, std::sqrt(2.0 / kPi), 1e-8);
}

TEST(QuantileLaw, PointMassAgainstSemicircle) {
  // W2^2 from delta_0 is the second moment 1; W1 is E|x| = 8/(3 pi)
  EXPECT_NEAR(wp_quantile_vs_law(std::vector<double>{0.0}, LimitLaw::semicircle(), 2.0).distance, 1.0, 1e-8);
  EXPECT_NEAR(wp_quantile_vs_law(std::vector<double>{0.0}, LimitLaw::semicircle(), 1.0).distance, 8.0 / (3.0 * kPi), 1e-8);
}

TEST(QuantileLaw, DiscretizationDecaysLikeOneOverN) {
  std::vector<double> d;
  for (std::size_t n : {32u, 64u, 128u, 256u})
    d.push_back(wp_quantile_vs_law(discretize_law(LimitLaw::semicircle(), n).real_parts(), LimitLaw::semicircle(), 2.0).distance);
  for (std::size_t i = 1; i < d.size(); ++i) {
    EXPECT_LT(d[i], d[i - 1]);
    EXPECT_NEAR(d[i - 1] / d[i], 2.0, 0.6);
  }
}

TEST(QuantileLaw, MatchesDenseSampleOfTheLaw) {
  // a fine discretization approximates the law from the other side
  const std::vector<double> xs{-1.0, 0.3, 0.9};
  const auto fine = discretize_law(LimitLaw::semicircle(), 30000).real_parts();
  EXPECT_NEAR(wp_quantile_vs_law(xs, LimitLaw::semicircle(), 2.0).distance, wp_quantile_1d(xs, fine, 2.0), 2e-3);
}

TEST(Planar, DiscretizationAtomsGiveZero) {
  const auto nu = discretize_law(LimitLaw::uniform_disc(), 25).atoms();
  const auto pd = wp_to_planar_law(nu, LimitLaw::uniform_disc(), 2.0);
  EXPECT_NEAR(pd.exact_to_discretization.distance, 0.0, 1e-12);
  EXPECT_GT(pd.analytic_tail, 0.0);
}

TEST(Planar, RotatedRootsExample) {
  std::vector<cplx> z;
  for (int j = 1; j <= 4; ++j) z.push_back(std::polar(1.0, kTwoPi * j / 4.0 + kPi / 4.0));
  const auto pd = wp_to_planar_law(z, LimitLaw::uniform_circle(), 2.0);
  EXPECT_NEAR(pd.exact_to_discretization.distance, 2.0 * std::sin(kPi / 8.0), 1e-12);
  EXPECT_NEAR(std::abs(std::polar(1.0, kPi / 4.0) - cplx(0, 1)), 0.7654, 1e-4);
}

TEST(Dual, LowerBoundsExactW1) {
  const AtomicMeasure mu(std::vector<cplx>{1.0, cplx(0, 1)});
  EXPECT_NEAR(w1_dual_lower_bound(mu, mu, 20), 0.0, 1e-15);
  for (std::uint64_t r = 0; r < 50; ++r) {
    RngStream rng(12, "dual", 0, r);
    const auto a = random_points(rng, 10), b = random_points(rng, 10);
    const double exact = wp_assignment_plane(a, b, 1.0).distance;
    const double lb = w1_dual_lower_bound(AtomicMeasure(a), AtomicMeasure(b), 50);
    EXPECT_LE(lb, exact + 1e-9);
    EXPECT_GE(lb, 0.0);
  }
}

TEST(Metric, TriangleInequality) {
  for (std::uint64_t r = 0; r < 100; ++r) {
    RngStream rng(13, "tri", 0, r);
    const auto a = random_points(rng, 8), b = random_points(rng, 8), c = random_points(rng, 8);
    for (double p : {1.0, 2.0}) {
      const double ab = wp_assignment_plane(a, b, p).distance, bc = wp_assignment_plane(b, c, p).distance,
                   ac = wp_assignment_plane(a, c, p).distance;
      EXPECT_LE(ac, ab + bc + 1e-12);
      EXPECT_NEAR(ab, wp_assignment_plane(b, a, p).distance, 1e-12);
    }
    EXPECT_LE(wp_assignment_plane(a, b, 1.0).distance, wp_assignment_plane(a, b, 2.0).distance + 1e-12);
  }
}
