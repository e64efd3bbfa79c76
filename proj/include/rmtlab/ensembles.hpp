// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// ensembles.hpp: seed-deterministic samplers for the matrix models.
//
// Draw order is part of the reproducibility contract. Unless stated
// otherwise, entries are drawn row-major; Hermitian models draw only the
// upper triangle (diagonal included) and fill the rest by conjugation.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "rmtlab/matcore.hpp"
#include "rmtlab/rng.hpp"

namespace rmt {

enum class EnsembleKind {
  GUE,
  GOE,
  WignerGeneric,
  Wishart,
  Haar,
  HaarPower,
  RandomizedSum,
  Compression,
  QuantumSpinGlass,
  Ginibre,
};

enum class Group { O, SO, U, SU, Sp };
enum class EntryDist { Gaussian, Uniform };
enum class Field { Real, Complex };
enum class Ingredient { Signs, Equispaced, Zero };

inline std::string to_string(EnsembleKind k) {
  switch (k) {
    case EnsembleKind::GUE: return "gue";
    case EnsembleKind::GOE: return "goe";
    case EnsembleKind::WignerGeneric: return "wigner";
    case EnsembleKind::Wishart: return "wishart";
    case EnsembleKind::Haar: return "haar";
    case EnsembleKind::HaarPower: return "haar-power";
    case EnsembleKind::RandomizedSum: return "sum";
    case EnsembleKind::Compression: return "compression";
    case EnsembleKind::QuantumSpinGlass: return "qsg";
    case EnsembleKind::Ginibre: return "ginibre";
  }
  return "?";
}

inline std::string to_string(Group g) {
  switch (g) {
    case Group::O: return "O";
    case Group::SO: return "SO";
    case Group::U: return "U";
    case Group::SU: return "SU";
    case Group::Sp: return "Sp";
  }
  return "?";
}

inline std::string to_string(EntryDist d) { return d == EntryDist::Gaussian ? "gaussian" : "uniform"; }
inline std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

inline std::string to_string(Ingredient i) {
  switch (i) {
    case Ingredient::Signs: return "signs";
    case Ingredient::Equispaced: return "equispaced";
    case Ingredient::Zero: return "zero";
  }
  return "?";
}

/// Tagged description of an ensemble. Only the fields relevant to `kind`
/// are read. For dimension scans, `aspect` (Wishart n/m) and `alpha`
/// (compression k/n) let one spec cover every size; see at_size().
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GUE;
  std::size_t n = 1;  // qubit count for QuantumSpinGlass
  std::size_t m = 0;  // Wishart rows, or HaarPower exponent
  double aspect = 0.0;
  Group group = Group::U;
  std::size_t k = 0;
  double alpha = 0.0;
  EntryDist entries = EntryDist::Gaussian;
  Field field = Field::Complex;
  Ingredient a = Ingredient::Signs;
  Ingredient b = Ingredient::Equispaced;
  bool paper_literal_goe = false;

  /// Stable identifier used to derive RNG substreams.
  std::string tag() const {
    std::string t = to_string(kind);
    if (kind == EnsembleKind::Haar || kind == EnsembleKind::HaarPower || kind == EnsembleKind::RandomizedSum ||
        kind == EnsembleKind::Compression)
      t += "-" + to_string(group);
    return t;
  }

  /// Resolves size-dependent parameters for dimension `size`.
  EnsembleSpec at_size(std::size_t size) const {
    EnsembleSpec s = *this;
    s.n = size;
    if (kind == EnsembleKind::Wishart && aspect > 0.0)
      s.m = static_cast<std::size_t>(std::llround(static_cast<double>(size) / aspect));
    if (kind == EnsembleKind::Compression && alpha > 0.0)
      s.k = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(alpha * static_cast<double>(size))));
    return s;
  }

  void validate() const {
    require(n >= 1, ErrorKind::InvalidSpec, "n must be >= 1");
    switch (kind) {
      case EnsembleKind::Wishart:
        require(m >= n, ErrorKind::InvalidSpec, "Wishart needs m >= n >= 1");
        break;
      case EnsembleKind::HaarPower:
        require(m >= 1 && m <= n, ErrorKind::InvalidSpec, "Haar power needs 1 <= m <= n");
        break;
      case EnsembleKind::Compression:
        require(k >= 1 && k <= n, ErrorKind::InvalidSpec, "compression needs 1 <= k <= n");
        break;
      case EnsembleKind::QuantumSpinGlass:
        require(n >= 3 && n <= 13, ErrorKind::InvalidSpec, "spin glass needs 3 <= qubits <= 13");
        break;
      default:
        break;
    }
  }

  /// Matrix dimension of one draw.
  std::size_t matrix_dim() const {
    if (kind == EnsembleKind::QuantumSpinGlass) return std::size_t{1} << n;
    if (kind == EnsembleKind::Compression) return k;
    if ((kind == EnsembleKind::Haar || kind == EnsembleKind::HaarPower) && group == Group::Sp) return 2 * n;
    return n;
  }

  /// Spectra of these kinds live on the real line.
  bool hermitian() const {
    switch (kind) {
      case EnsembleKind::Haar:
      case EnsembleKind::HaarPower:
      case EnsembleKind::Ginibre:
        return false;
      default:
        return true;
    }
  }
};

// ---------------------------------------------------------------- Wigner

namespace detail {

inline double unit_entry(RngStream& rng, EntryDist d) {
  if (d == EntryDist::Gaussian) return rng.normal();
  return std::sqrt(3.0) * rng.symmetric_uniform();
}

}  // namespace detail

/// GUE: diagonal N(0,1/n), off-diagonal real and imaginary parts N(0,1/(2n)).
/// GOE: diagonal N(0,2/n), off-diagonal N(0,1/n); with paper_literal_goe the
/// diagonal is N(0,1/n) and the off-diagonal variance is 1/(sqrt(2) n).
/// WignerGeneric: the configured unit-variance entry law on the GUE (complex
/// field) or GOE (real field) variance profile. Exploratory only: it does not
/// enforce four-moment matching.
inline HermitianView sample_wigner(const EnsembleSpec& spec, RngStream& rng) {
  spec.validate();
  require(spec.kind == EnsembleKind::GUE || spec.kind == EnsembleKind::GOE || spec.kind == EnsembleKind::WignerGeneric,
          ErrorKind::InvalidSpec, "sample_wigner needs a Wigner kind");
  const auto n = static_cast<Eigen::Index>(spec.n);
  const double nn = static_cast<double>(spec.n);
  const bool complex_field =
      spec.kind == EnsembleKind::GUE || (spec.kind == EnsembleKind::WignerGeneric && spec.field == Field::Complex);
  const EntryDist dist = spec.kind == EnsembleKind::WignerGeneric ? spec.entries : EntryDist::Gaussian;

  double diag_sd = 0.0, off_sd = 0.0;
  if (complex_field) {
    diag_sd = std::sqrt(1.0 / nn);
    off_sd = std::sqrt(1.0 / (2.0 * nn));
  } else if (spec.kind == EnsembleKind::GOE && spec.paper_literal_goe) {
    diag_sd = std::sqrt(1.0 / nn);
    off_sd = std::sqrt(1.0 / (std::numbers::sqrt2 * nn));
  } else {
    diag_sd = std::sqrt(2.0 / nn);
    off_sd = std::sqrt(1.0 / nn);
  }

  ComplexMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    m(j, j) = diag_sd * detail::unit_entry(rng, dist);
    for (Eigen::Index k = j + 1; k < n; ++k) {
      const double re = off_sd * detail::unit_entry(rng, dist);
      const double im = complex_field ? off_sd * detail::unit_entry(rng, dist) : 0.0;
      m(j, k) = {re, im};
      m(k, j) = {re, -im};
    }
  }
  return HermitianView(std::move(m));
}

// --------------------------------------------------------------- Wishart

struct WishartDraw {
  HermitianView s;
  ComplexMatrix x;
};

/// X is m x n with i.i.d. unit-variance (real or complex) Gaussian entries,
/// S = X* X / m.
inline WishartDraw sample_wishart(const EnsembleSpec& spec, RngStream& rng) {
  require(spec.kind == EnsembleKind::Wishart, ErrorKind::InvalidSpec, "sample_wishart needs kind Wishart");
  spec.validate();
  const auto m = static_cast<Eigen::Index>(spec.m), n = static_cast<Eigen::Index>(spec.n);
  ComplexMatrix x(m, n);
  for (Eigen::Index r = 0; r < m; ++r)
    for (Eigen::Index c = 0; c < n; ++c) x(r, c) = spec.field == Field::Complex ? rng.complex_normal() : cplx(rng.normal(), 0.0);
  ComplexMatrix s = (x.adjoint() * x) / static_cast<double>(m);
  return {HermitianView::hermitize(s), std::move(x)};
}

// ------------------------------------------------------------------ Haar

namespace detail {

/// Q from a Householder QR, with columns rephased by r_jj/|r_jj| so that the
/// result is exactly Haar when the input is Gaussian.
inline ComplexMatrix haar_qr(const ComplexMatrix& g) {
  const Eigen::Index n = g.rows();
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  const ComplexMatrix& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx r = packed(j, j);
    const double a = std::abs(r);
    if (a > 0.0) q.col(j) *= r / a;
  }
  return q;
}

/// Partner column of v under the quaternionic embedding q = a + b j ->
/// [[a, b], [-conj(b), conj(a)]]: pairs (x, y) map to (-conj(y), conj(x)).
inline Eigen::VectorXcd quaternion_partner(const Eigen::VectorXcd& v) {
  Eigen::VectorXcd w(v.size());
  for (Eigen::Index i = 0; i + 1 < v.size(); i += 2) {
    w(i) = -std::conj(v(i + 1));
    w(i + 1) = std::conj(v(i));
  }
  return w;
}

/// Unitary symplectic Haar draw: quaternionic Gram-Schmidt of a quaternionic
/// Gaussian matrix, carried out on the 2n x 2n complex embedding.
inline ComplexMatrix haar_symplectic(std::size_t n, RngStream& rng) {
  const auto dim = static_cast<Eigen::Index>(2 * n);
  ComplexMatrix g(dim, static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < g.cols(); ++c) g(r, c) = rng.complex_normal();
  ComplexMatrix u(dim, dim);
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    Eigen::VectorXcd v = g.col(c);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index p = 0; p < 2 * c; ++p) v -= u.col(p) * u.col(p).dot(v);
    v /= v.norm();
    u.col(2 * c) = v;
    u.col(2 * c + 1) = quaternion_partner(v);
  }
  return u;
}

}  // namespace detail

/// Haar-distributed element of O(n), SO(n), U(n), SU(n) or Sp(n) (returned as
/// a 2n x 2n complex unitary for Sp).
inline ComplexMatrix sample_haar(Group group, std::size_t n, RngStream& rng) {
  require(n >= 1, ErrorKind::InvalidSpec, "Haar sampler needs n >= 1");
  const auto nn = static_cast<Eigen::Index>(n);
  switch (group) {
    case Group::U:
    case Group::SU: {
      ComplexMatrix g(nn, nn);
      for (Eigen::Index r = 0; r < nn; ++r)
        for (Eigen::Index c = 0; c < nn; ++c) g(r, c) = rng.complex_normal();
      ComplexMatrix u = detail::haar_qr(g);
      if (group == Group::SU) {
        const cplx det = u.determinant();
        u *= std::polar(1.0, -std::arg(det) / static_cast<double>(n));
      }
      return u;
    }
    case Group::O:
    case Group::SO: {
      ComplexMatrix g(nn, nn);
      for (Eigen::Index r = 0; r < nn; ++r)
        for (Eigen::Index c = 0; c < nn; ++c) g(r, c) = {rng.normal(), 0.0};
      Eigen::MatrixXd q = detail::haar_qr(g).real();
      if (group == Group::SO && q.determinant() < 0.0) q.row(0) *= -1.0;
      return q.cast<cplx>();
    }
    case Group::Sp:
      return detail::haar_symplectic(n, rng);
  }
  fail(ErrorKind::InvalidSpec, "unknown group");
}

inline double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).norm();
}

/// M^m for a Haar draw M, by repeated multiplication.
inline ComplexMatrix sample_haar_power(Group group, std::size_t n, std::size_t m, RngStream& rng) {
  require(m >= 1 && m <= n, ErrorKind::InvalidSpec, "Haar power needs 1 <= m <= n");
  const ComplexMatrix base = sample_haar(group, n, rng);
  ComplexMatrix p = base;
  for (std::size_t i = 1; i < m; ++i) p = p * base;
  if (unitarity_defect(p) > 1e-8 * static_cast<double>(p.rows()))
    fail(ErrorKind::NonConvergence, "matrix power lost unitarity");
  return p;
}

// ------------------------------------------------- sums and compressions

/// U A U* + B, re-Hermitized.
inline HermitianView randomized_sum(const HermitianView& a, const HermitianView& b, const ComplexMatrix& u) {
  if (a.dim() != b.dim() || u.rows() != a.dim() || u.cols() != a.dim())
    fail(ErrorKind::ShapeMismatch, "randomized_sum operands must all be n x n");
  ComplexMatrix s = u * a.matrix() * u.adjoint() + b.matrix();
  return HermitianView::hermitize(s);
}

/// Top-left k x k block of U A U*.
inline HermitianView compress(const HermitianView& a, const ComplexMatrix& u, std::size_t k) {
  require(k >= 1 && static_cast<Eigen::Index>(k) <= a.dim(), ErrorKind::InvalidSpec, "compression needs 1 <= k <= n");
  if (u.rows() != a.dim() || u.cols() != a.dim()) fail(ErrorKind::ShapeMismatch, "compression operands");
  const auto kk = static_cast<Eigen::Index>(k);
  // only the first k rows of U contribute
  const ComplexMatrix top = u.topRows(kk);
  ComplexMatrix c = top * a.matrix() * top.adjoint();
  return HermitianView::hermitize(c);
}

/// Deterministic Hermitian ingredients for sums and compressions.
/// signs: diag(+1 x ceil(n/2), -1 x floor(n/2)); equispaced: diag of
/// linspace(-1, 1, n) (the single entry 0 when n = 1); zero: the zero matrix.
inline HermitianView ingredient_matrix(Ingredient tag, std::size_t n) {
  require(n >= 1, ErrorKind::InvalidSpec, "ingredient needs n >= 1");
  std::vector<double> d(n, 0.0);
  switch (tag) {
    case Ingredient::Signs:
      for (std::size_t j = 0; j < n; ++j) d[j] = j < (n + 1) / 2 ? 1.0 : -1.0;
      break;
    case Ingredient::Equispaced:
      if (n > 1)
        for (std::size_t j = 0; j < n; ++j) d[j] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n - 1);
      break;
    case Ingredient::Zero:
      break;
  }
  return HermitianView(diag_real(d));
}

// ------------------------------------------------------ quantum spin glass

namespace detail {
/// Phase picked up when sigma^(a) (a in 1..3) acts on a basis bit; the
/// caller flips the bit when a != 3.
inline cplx pauli_phase(int a, unsigned bit) {
  switch (a) {
    case 1: return {1.0, 0.0};
    case 2: return bit == 0 ? cplx(0.0, 1.0) : cplx(0.0, -1.0);
    default: return bit == 0 ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
  }
}
}  // namespace detail

/// Index of coefficient x_{a,b,j} (a, b in 1..3, j in 1..n) in lexicographic order.
inline std::size_t qsg_index(int a, int b, std::size_t j, std::size_t n) {
  return (static_cast<std::size_t>(a - 1) * 3 + static_cast<std::size_t>(b - 1)) * n + (j - 1);
}

/// H(x) = (1 / (3 sqrt n)) sum_{a,b,j} x_{a,b,j} sigma_j^(a) sigma_{j+1}^(b)
/// on n qubits arranged on a circle. Qubit 1 is the most significant bit of
/// the basis index. Each Pauli word has one nonzero per column, so the
/// matrix is accumulated word by word.
inline HermitianView qsg_hamiltonian(const std::vector<double>& x, std::size_t n_qubits) {
  require(n_qubits >= 3 && n_qubits <= 13, ErrorKind::InvalidSpec, "spin glass needs 3 <= qubits <= 13");
  require(x.size() == 9 * n_qubits, ErrorKind::ShapeMismatch, "spin glass needs 9n coefficients");
  const std::size_t dim = std::size_t{1} << n_qubits;
  const double scale = 1.0 / (3.0 * std::sqrt(static_cast<double>(n_qubits)));
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 1; j <= n_qubits; ++j) {
    const std::size_t j2 = j == n_qubits ? 1 : j + 1;
    const unsigned shift1 = static_cast<unsigned>(n_qubits - j), shift2 = static_cast<unsigned>(n_qubits - j2);
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        const double c = scale * x[qsg_index(a, b, j, n_qubits)];
        for (std::size_t s = 0; s < dim; ++s) {
          const unsigned bit1 = static_cast<unsigned>((s >> shift1) & 1U);
          const unsigned bit2 = static_cast<unsigned>((s >> shift2) & 1U);
          std::size_t t = s;
          if (a != 3) t ^= std::size_t{1} << shift1;
          if (b != 3) t ^= std::size_t{1} << shift2;
          h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) +=
              c * detail::pauli_phase(a, bit1) * detail::pauli_phase(b, bit2);
        }
      }
  }
  return HermitianView::hermitize(h);
}

/// Exact Lipschitz constant of x -> H(x) in HS norm: 2^{n/2} / (3 sqrt n).
inline double qsg_lipschitz_constant(std::size_t n_qubits) {
  return std::pow(2.0, 0.5 * static_cast<double>(n_qubits)) / (3.0 * std::sqrt(static_cast<double>(n_qubits)));
}

inline std::vector<double> sample_qsg_coefficients(std::size_t n_qubits, RngStream& rng) {
  std::vector<double> x(9 * n_qubits);
  for (double& v : x) v = rng.normal();
  return x;
}

inline HermitianView sample_qsg(std::size_t n_qubits, RngStream& rng) {
  require(n_qubits >= 3 && n_qubits <= 13, ErrorKind::InvalidSpec, "spin glass needs 3 <= qubits <= 13");
  return qsg_hamiltonian(sample_qsg_coefficients(n_qubits, rng), n_qubits);
}

// --------------------------------------------------------------- Ginibre

/// n x n with i.i.d. standard complex Gaussian entries (unnormalized).
inline ComplexMatrix sample_ginibre(std::size_t n, RngStream& rng) {
  require(n >= 1, ErrorKind::InvalidSpec, "Ginibre needs n >= 1");
  const auto nn = static_cast<Eigen::Index>(n);
  ComplexMatrix g(nn, nn);
  for (Eigen::Index r = 0; r < nn; ++r)
    for (Eigen::Index c = 0; c < nn; ++c) g(r, c) = rng.complex_normal();
  return g;
}

// ------------------------------------------------------- spectral measure

enum class SpectrumPath { Hermitian, General };

inline AtomicMeasure spectral_measure(const ComplexMatrix& m, SpectrumPath path) {
  if (path == SpectrumPath::Hermitian) return AtomicMeasure::from(hermitian_eigenvalues(HermitianView(m)));
  return AtomicMeasure::from(general_eigenvalues(m));
}

/// One draw of `spec` reduced to its matrix. Sums and compressions use a
/// Haar factor from `spec.group` and ingredients a (and b for sums). Ginibre
/// draws are scaled by 1/sqrt(n).
inline ComplexMatrix sample_matrix(const EnsembleSpec& spec, RngStream& rng) {
  spec.validate();
  switch (spec.kind) {
    case EnsembleKind::GUE:
    case EnsembleKind::GOE:
    case EnsembleKind::WignerGeneric:
      return sample_wigner(spec, rng).matrix();
    case EnsembleKind::Wishart:
      return sample_wishart(spec, rng).s.matrix();
    case EnsembleKind::Haar:
      return sample_haar(spec.group, spec.n, rng);
    case EnsembleKind::HaarPower:
      return sample_haar_power(spec.group, spec.n, spec.m, rng);
    case EnsembleKind::RandomizedSum: {
      const auto u = sample_haar(spec.group, spec.n, rng);
      return randomized_sum(ingredient_matrix(spec.a, spec.n), ingredient_matrix(spec.b, spec.n), u).matrix();
    }
    case EnsembleKind::Compression: {
      const auto u = sample_haar(spec.group, spec.n, rng);
      return compress(ingredient_matrix(spec.a, spec.n), u, spec.k).matrix();
    }
    case EnsembleKind::QuantumSpinGlass:
      return sample_qsg(spec.n, rng).matrix();
    case EnsembleKind::Ginibre:
      return sample_ginibre(spec.n, rng) / std::sqrt(static_cast<double>(spec.n));
  }
  fail(ErrorKind::InvalidSpec, "unknown ensemble");
}

inline AtomicMeasure sample_spectrum(const EnsembleSpec& spec, RngStream& rng) {
  return spectral_measure(sample_matrix(spec, rng), spec.hermitian() ? SpectrumPath::Hermitian : SpectrumPath::General);
}

/// The substream for one (spec, size, rep) cell of an experiment.
inline RngStream stream_for(std::uint64_t master_seed, const EnsembleSpec& spec, std::uint64_t rep) {
  return RngStream(master_seed, spec.tag(), spec.n, rep);
}

}  // namespace rmt
