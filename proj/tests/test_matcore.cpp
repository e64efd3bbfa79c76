#include <gtest/gtest.h>

#include "rmtlab/ensembles.hpp"
#include "rmtlab/matcore.hpp"

using namespace rmt;

namespace {

std::vector<double> herm(const ComplexMatrix& m) { return hermitian_eigenvalues(HermitianView(m)).values(); }

std::vector<cplx> sorted_general(const ComplexMatrix& m) {
  auto v = general_eigenvalues(m).values();
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a.real() - b.real()) > 1e-12 ? a.real() < b.real() : a.imag() < b.imag(); });
  return v;
}

}  // namespace

TEST(Hermitian, IdentityAndDiagonal) {
  for (double v : herm(identity(3))) EXPECT_NEAR(v, 1.0, 1e-14);
  const auto d = herm(diag_real({3, -1, 2}));
  ASSERT_EQ(d.size(), 3u);
  EXPECT_NEAR(d[0], -1.0, 1e-14);
  EXPECT_NEAR(d[1], 2.0, 1e-14);
  EXPECT_NEAR(d[2], 3.0, 1e-14);
}

TEST(Hermitian, PauliX) {
  ComplexMatrix h(2, 2);
  h << 0, 1, 1, 0;
  const auto d = herm(h);
  EXPECT_NEAR(d[0], -1.0, 1e-14);
  EXPECT_NEAR(d[1], 1.0, 1e-14);
}

TEST(Hermitian, RejectsNonHermitian) {
  ComplexMatrix h(2, 2);
  h << 0, 1, 2, 0;
  try {
    HermitianView v(h);
    FAIL() << "accepted a non-Hermitian matrix";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonHermitian);
  }
}

TEST(Hermitian, RejectsNonFinite) {
  ComplexMatrix h = identity(2);
  h(0, 0) = NAN;
  EXPECT_THROW(HermitianView{h}, Error);
}

TEST(General, Rotation) {
  ComplexMatrix a(2, 2);
  a << 0, 1, -1, 0;
  const auto v = sorted_general(a);
  EXPECT_NEAR(std::abs(v[0] - cplx(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(v[1] - cplx(0, 1)), 0.0, 1e-14);
}

TEST(General, CyclicPermutationGivesRootsOfUnity) {
  ComplexMatrix p = ComplexMatrix::Zero(4, 4);
  for (int j = 0; j < 4; ++j) p((j + 1) % 4, j) = 1.0;
  const auto v = general_eigenvalues(p).values();
  for (cplx root : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)}) {
    double best = 1e9;
    for (cplx z : v) best = std::min(best, std::abs(z - root));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(General, Triangular) {
  ComplexMatrix a(3, 3);
  a << 1, 5, 7, 0, cplx(2, 1), 4, 0, 0, -3;
  const auto v = sorted_general(a);
  EXPECT_NEAR(std::abs(v[0] - cplx(-3, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v[1] - cplx(1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(v[2] - cplx(2, 1)), 0.0, 1e-12);
}

TEST(General, RejectsNonSquare) { EXPECT_THROW(general_eigenvalues(ComplexMatrix::Zero(2, 3)), Error); }

TEST(Singular, Examples) {
  auto s = singular_values(diag_real({3, -4})).values();
  EXPECT_NEAR(s[0], 3.0, 1e-13);
  EXPECT_NEAR(s[1], 4.0, 1e-13);
  s = singular_values(ComplexMatrix::Zero(2, 3)).values();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 0.0, 1e-14);
  EXPECT_NEAR(s[1], 0.0, 1e-14);
  ComplexMatrix col(2, 1);
  col << 1, 1;
  s = singular_values(col).values();
  ASSERT_EQ(s.size(), 1u);
  EXPECT_NEAR(s[0], std::sqrt(2.0), 1e-13);
}

TEST(Singular, MatchesGramEigenvalues) {
  RngStream rng(3, "svd", 7, 0);
  ComplexMatrix x(9, 5);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = cplx(rng.normal(), rng.normal());
  const auto s = singular_values(x).values();
  const auto g = hermitian_eigenvalues(HermitianView::hermitize(x.adjoint() * x)).values();
  for (std::size_t j = 0; j < s.size(); ++j) EXPECT_NEAR(s[j] * s[j], g[j], 1e-8 * g.back());
}

TEST(Norms, Examples) {
  auto n = matrix_norms(identity(4));
  EXPECT_NEAR(n.hs, 2.0, 1e-14);
  EXPECT_NEAR(n.op, 1.0, 1e-14);
  ComplexMatrix a(2, 2);
  a << 0, 2, 0, 0;
  n = matrix_norms(a);
  EXPECT_NEAR(n.hs, 2.0, 1e-14);
  EXPECT_NEAR(n.op, 2.0, 1e-13);
  a << 1, 1, 1, 1;
  n = matrix_norms(a);
  EXPECT_NEAR(n.hs, 2.0, 1e-14);
  EXPECT_NEAR(n.op, 2.0, 1e-13);
}

TEST(Norms, HsDistance) {
  const ComplexMatrix a = identity(3);
  EXPECT_EQ(hs_distance(a, a), 0.0);
  EXPECT_NEAR(hs_distance(identity(2), ComplexMatrix::Zero(2, 2)), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(hs_distance(diag_real({1, 0}), diag_real({0, 1})), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(hs_distance(identity(2), identity(3)), Error);
}

TEST(Contracts, ResidualAndTraceOnRandomMatrices) {
  for (std::size_t n : {3u, 17u, 64u}) {
    RngStream rng(11, "contract", n, 0);
    ComplexMatrix g(n, n);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    const HermitianView h = HermitianView::hermitize(g);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h.matrix());
    const double op = matrix_norms(h.matrix()).op;
    const ComplexMatrix resid = h.matrix() * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().cast<cplx>().asDiagonal();
    EXPECT_LE(resid.norm(), 1e-10 * static_cast<double>(n) * op);
    const auto vals = hermitian_eigenvalues(h).values();
    double sq = 0.0, tr = 0.0;
    for (double v : vals) {
      sq += v * v;
      tr += v;
    }
    EXPECT_NEAR(tr, h.matrix().trace().real(), 1e-10 * n * op);
    EXPECT_NEAR(sq, h.matrix().squaredNorm(), 1e-10 * n * op * op);

    cplx sum = 0.0;
    for (cplx z : general_eigenvalues(g).values()) sum += z;
    EXPECT_LE(std::abs(sum - g.trace()), 1e-8 * static_cast<double>(n) * matrix_norms(g).op);
  }
}
