// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// matcore.hpp: dense complex matrices, norms and spectral decompositions.
//
// Hermitian eigenvalues come from Eigen, general complex eigenvalues from
// LAPACK zgeev. The numerical meaning of "the eigenvalues" is pinned by
// backward-error contracts that the test suite checks on re-synthesized matrices:
//   Hermitian:  ||H V - V diag(lambda)||_HS <= 1e-10 * n * ||H||_op
//   general:    |sum lambda - trace A|      <= 1e-8  * n * ||A||_op
#pragma once

#include <Eigen/Dense>

#include "rmtlab/core.hpp"

// LAPACK complex nonsymmetric eigensolver (Hessenberg reduction + shifted QR).
// The trailing arguments are the hidden Fortran lengths of the two character
// flags; leaving them out lets an optimized callee clobber the caller's frame.
extern "C" void zgeev_(const char* jobvl, const char* jobvr, const int* n, std::complex<double>* a, const int* lda,
                       std::complex<double>* w, std::complex<double>* vl, const int* ldvl, std::complex<double>* vr,
                       const int* ldvr, std::complex<double>* work, const int* lwork, double* rwork, int* info,
                       std::size_t jobvl_len, std::size_t jobvr_len);

namespace rmt {

using ComplexMatrix = Eigen::MatrixXcd;

inline void validate_matrix(const ComplexMatrix& a) {
  require(a.rows() >= 1 && a.cols() >= 1, ErrorKind::ShapeMismatch, "matrix must be at least 1x1");
  require(a.allFinite(), ErrorKind::NonFinite, "matrix entries must be finite");
}

inline double max_abs_entry(const ComplexMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

/// A square complex matrix checked to be Hermitian.
class HermitianView {
 public:
  /// Checks entry(j,k) == conj(entry(k,j)) to 1e-12 * max|entry|.
  explicit HermitianView(ComplexMatrix m) : m_(std::move(m)) {
    validate_matrix(m_);
    require(m_.rows() == m_.cols(), ErrorKind::ShapeMismatch, "Hermitian matrix must be square");
    const double tol = 1e-12 * max_abs_entry(m_);
    const Eigen::Index n = m_.rows();
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = j; k < n; ++k)
        if (std::abs(m_(j, k) - std::conj(m_(k, j))) > tol)
          fail(ErrorKind::NonHermitian, "entry (" + std::to_string(j) + "," + std::to_string(k) + ")");
  }

  /// Replaces m by (m + m*)/2.
  static HermitianView hermitize(const ComplexMatrix& m) {
    require(m.rows() == m.cols(), ErrorKind::ShapeMismatch, "Hermitian matrix must be square");
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    return HermitianView(std::move(h));
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  ComplexMatrix m_;
};

namespace detail {

inline bool is_real_matrix(const ComplexMatrix& m) { return m.imag().cwiseAbs().maxCoeff() == 0.0; }

}  // namespace detail

inline RealSpectrum hermitian_eigenvalues(const HermitianView& h) {
  const ComplexMatrix& m = h.matrix();
  std::vector<double> vals(static_cast<std::size_t>(m.rows()));
  if (detail::is_real_matrix(m)) {
    Eigen::MatrixXd r = m.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorKind::NonConvergence, "symmetric eigensolver");
    Eigen::VectorXd::Map(vals.data(), m.rows()) = es.eigenvalues();
  } else {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) fail(ErrorKind::NonConvergence, "Hermitian eigensolver");
    Eigen::VectorXd::Map(vals.data(), m.rows()) = es.eigenvalues();
  }
  return RealSpectrum(std::move(vals));
}

inline ComplexSpectrum general_eigenvalues(const ComplexMatrix& a) {
  validate_matrix(a);
  require(a.rows() == a.cols(), ErrorKind::ShapeMismatch, "general_eigenvalues needs a square matrix");
  const int n = static_cast<int>(a.rows());
  ComplexMatrix work = a;
  std::vector<cplx> w(static_cast<std::size_t>(n));
  std::vector<double> rwork(2 * static_cast<std::size_t>(n));
  cplx dummy{};
  const int one = 1;
  const char no = 'N';
  int info = 0;
  int lwork = -1;
  cplx query{};
  zgeev_(&no, &no, &n, work.data(), &n, w.data(), &dummy, &one, &dummy, &one, &query, &lwork, rwork.data(), &info, 1, 1);
  lwork = std::max(1, static_cast<int>(query.real()));
  std::vector<cplx> buf(static_cast<std::size_t>(lwork));
  zgeev_(&no, &no, &n, work.data(), &n, w.data(), &dummy, &one, &dummy, &one, buf.data(), &lwork, rwork.data(), &info, 1, 1);
  if (info != 0) fail(ErrorKind::NonConvergence, "complex Hessenberg QR did not converge");
  return ComplexSpectrum(std::move(w));
}

/// Singular values of an m x n matrix, read off as the min(m,n) largest
/// eigenvalues of the augmented Hermitian matrix [0 X; X* 0], whose spectrum
/// is {+-sigma_j} padded with |m-n| zeros.
inline RealSpectrum singular_values(const ComplexMatrix& x) {
  validate_matrix(x);
  const Eigen::Index m = x.rows(), n = x.cols();
  ComplexMatrix aug = ComplexMatrix::Zero(m + n, m + n);
  aug.topRightCorner(m, n) = x;
  aug.bottomLeftCorner(n, m) = x.adjoint();
  const RealSpectrum all = hermitian_eigenvalues(HermitianView(std::move(aug)));
  const std::size_t k = static_cast<std::size_t>(std::min(m, n));
  std::vector<double> sv(all.values().end() - static_cast<std::ptrdiff_t>(k), all.values().end());
  for (double& s : sv) s = std::max(s, 0.0);
  return RealSpectrum(std::move(sv));
}

struct MatrixNorms {
  double hs = 0.0;
  double op = 0.0;
};

inline MatrixNorms matrix_norms(const ComplexMatrix& a) {
  validate_matrix(a);
  MatrixNorms out;
  out.hs = a.norm();
  out.op = singular_values(a).max();
  // the augmented route can overshoot hs by rounding on rank-one inputs
  out.op = std::min(out.op, out.hs);
  return out;
}

inline double hs_norm(const ComplexMatrix& a) { return a.norm(); }

inline double hs_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) fail(ErrorKind::ShapeMismatch, "hs_distance operands");
  return (a - b).norm();
}

inline ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

inline ComplexMatrix diag(const std::vector<cplx>& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) m(j, j) = d[static_cast<std::size_t>(j)];
  return m;
}

inline ComplexMatrix diag_real(const std::vector<double>& d) {
  std::vector<cplx> c(d.begin(), d.end());
  return diag(c);
}

}  // namespace rmt
