// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// core.hpp: shared value types and the error type used by every module.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmt {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorKind {
  InvalidSpec,
  ShapeMismatch,
  SizeMismatch,
  NonHermitian,
  NonConvergence,
  NonFinite,
  UnsupportedLaw,
  OutOfRange,
  BudgetExceeded,
  QuadratureFailure,
  DegenerateFit,
  InsufficientReps,
  Overflow,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::UnsupportedLaw: return "UnsupportedLaw";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::InsufficientReps: return "InsufficientReps";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const char* what) {
  if (!cond) fail(kind, what);
}

/// Eigenvalues of a Hermitian matrix, sorted ascending.
class RealSpectrum {
 public:
  RealSpectrum() = default;
  explicit RealSpectrum(std::vector<double> values) : values_(std::move(values)) {
    for (double v : values_) require(std::isfinite(v), ErrorKind::NonFinite, "spectrum value");
    std::sort(values_.begin(), values_.end());
  }

  const std::vector<double>& values() const& noexcept { return values_; }
  std::vector<double> values() && noexcept { return std::move(values_); }
  std::size_t dim() const noexcept { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

/// Eigenvalues of a general square matrix, in solver order.
class ComplexSpectrum {
 public:
  ComplexSpectrum() = default;
  explicit ComplexSpectrum(std::vector<cplx> values) : values_(std::move(values)) {
    for (auto v : values_)
      require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorKind::NonFinite, "spectrum value");
  }

  const std::vector<cplx>& values() const& noexcept { return values_; }
  std::vector<cplx> values() && noexcept { return std::move(values_); }
  std::size_t dim() const noexcept { return values_.size(); }
  cplx operator[](std::size_t j) const { return values_[j]; }

 private:
  std::vector<cplx> values_;
};

/// Equal-weight point masses in the complex plane. Every atom carries
/// weight 1/size(); repeated atoms encode multiplicity.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::vector<cplx> atoms) : atoms_(std::move(atoms)) {
    require(!atoms_.empty(), ErrorKind::InvalidSpec, "atomic measure needs at least one atom");
    for (auto z : atoms_)
      require(std::isfinite(z.real()) && std::isfinite(z.imag()), ErrorKind::NonFinite, "atom");
  }
  static AtomicMeasure from_real(const std::vector<double>& xs) {
    std::vector<cplx> a(xs.begin(), xs.end());
    return AtomicMeasure(std::move(a));
  }
  static AtomicMeasure from(const RealSpectrum& s) { return from_real(s.values()); }
  static AtomicMeasure from(const ComplexSpectrum& s) { return AtomicMeasure(s.values()); }

  const std::vector<cplx>& atoms() const& noexcept { return atoms_; }
  std::vector<cplx> atoms() && noexcept { return std::move(atoms_); }
  std::size_t size() const noexcept { return atoms_.size(); }
  double weight() const noexcept { return 1.0 / static_cast<double>(atoms_.size()); }

  bool is_real(double tol = 0.0) const {
    return std::all_of(atoms_.begin(), atoms_.end(), [tol](cplx z) { return std::abs(z.imag()) <= tol; });
  }
  std::vector<double> real_parts() const {
    std::vector<double> r;
    r.reserve(atoms_.size());
    for (auto z : atoms_) r.push_back(z.real());
    return r;
  }

 private:
  std::vector<cplx> atoms_;
};

}  // namespace rmt
