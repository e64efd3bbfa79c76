// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// limits.hpp: limiting spectral laws, their n-point discretizations and the
// spiral order on the complex plane.
#pragma once

#include <compare>
#include <numeric>

#include "rmtlab/quadrature.hpp"

namespace rmt {

enum class LawTag { Semicircle, MarchenkoPastur, UniformCircle, UniformDisc, StdGaussian };

/// A limiting law. `rho` is only read for Marchenko-Pastur, 0 < rho <= 1.
struct LimitLaw {
  LawTag tag = LawTag::Semicircle;
  double rho = 1.0;

  static LimitLaw semicircle() { return {LawTag::Semicircle, 1.0}; }
  static LimitLaw marchenko_pastur(double rho) {
    require(rho > 0.0 && rho <= 1.0, ErrorKind::InvalidSpec, "Marchenko-Pastur needs 0 < rho <= 1");
    return {LawTag::MarchenkoPastur, rho};
  }
  static LimitLaw uniform_circle() { return {LawTag::UniformCircle, 1.0}; }
  static LimitLaw uniform_disc() { return {LawTag::UniformDisc, 1.0}; }
  static LimitLaw std_gaussian() { return {LawTag::StdGaussian, 1.0}; }

  bool scalar() const { return tag == LawTag::Semicircle || tag == LawTag::MarchenkoPastur || tag == LawTag::StdGaussian; }

  void validate() const {
    if (tag == LawTag::MarchenkoPastur)
      require(rho > 0.0 && rho <= 1.0, ErrorKind::InvalidSpec, "Marchenko-Pastur needs 0 < rho <= 1");
  }

  std::string name() const {
    switch (tag) {
      case LawTag::Semicircle: return "semicircle";
      case LawTag::MarchenkoPastur: return "mp";
      case LawTag::UniformCircle: return "circle";
      case LawTag::UniformDisc: return "disc";
      case LawTag::StdGaussian: return "gaussian";
    }
    return "?";
  }
};

struct Support {
  double lo;
  double hi;
};

/// a = (1 - sqrt rho)^2, b = (1 + sqrt rho)^2.
inline Support mp_edges(double rho) {
  const double s = std::sqrt(rho);
  return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

inline Support law_support(const LimitLaw& law) {
  switch (law.tag) {
    case LawTag::Semicircle: return {-2.0, 2.0};
    case LawTag::MarchenkoPastur: return mp_edges(law.rho);
    case LawTag::StdGaussian:
      return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    default: fail(ErrorKind::UnsupportedLaw, "planar law has no real support interval");
  }
}

/// Density with respect to Lebesgue measure on the line.
/// Marchenko-Pastur: sqrt((b-x)(x-a)) / (2 pi rho x) on (a,b), which has unit mass.
inline double law_density(const LimitLaw& law, double x) {
  law.validate();
  switch (law.tag) {
    case LawTag::Semicircle:
      return std::abs(x) >= 2.0 ? 0.0 : std::sqrt(4.0 - x * x) / kTwoPi;
    case LawTag::MarchenkoPastur: {
      const auto [a, b] = mp_edges(law.rho);
      if (x <= a || x >= b) return 0.0;
      return std::sqrt((b - x) * (x - a)) / (kTwoPi * law.rho * x);
    }
    case LawTag::StdGaussian:
      return std::exp(-0.5 * x * x) / std::sqrt(kTwoPi);
    default:
      fail(ErrorKind::UnsupportedLaw, "planar laws have no scalar density");
  }
}

/// Radial and angular densities of the planar laws: the disc has radial
/// density 2r on [0,1]; both planar laws have angular density 1/(2 pi).
inline double disc_radial_density(double r) { return (r < 0.0 || r > 1.0) ? 0.0 : 2.0 * r; }
inline double angular_density(double theta) { return (theta < 0.0 || theta > kTwoPi) ? 0.0 : 1.0 / kTwoPi; }

namespace detail {

/// x = c - r cos(phi) maps [0, pi] onto [a, b] and turns the square-root
/// edges of the Marchenko-Pastur density into a smooth integrand:
/// f(x) dx = r^2 sin^2(phi) / (2 pi rho x(phi)) dphi.
struct MpChart {
  double rho, a, b, c, r;
  explicit MpChart(double rho_) : rho(rho_) {
    const auto e = mp_edges(rho_);
    a = e.lo;
    b = e.hi;
    c = 0.5 * (a + b);
    r = 0.5 * (b - a);
  }
  double x_of(double phi) const {
    const double h = std::sin(0.5 * phi);
    return a + 2.0 * r * h * h;
  }
  double phi_of(double x) const { return std::acos(std::clamp((c - x) / r, -1.0, 1.0)); }
  double integrand(double phi) const {
    const double x = x_of(phi);
    const double s = std::sin(phi);
    if (x <= 0.0) return r / kPi;  // rho == 1, phi == 0 limit
    return r * r * s * s / (kTwoPi * rho * x);
  }
  double cdf_phi(double phi) const {
    if (phi <= 0.0) return 0.0;
    if (phi >= kPi) return 1.0;
    return quad::adaptive_simpson([this](double t) { return integrand(t); }, 0.0, phi, 1e-14);
  }
};

inline double semicircle_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + (x * std::sqrt(4.0 - x * x)) / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
}

inline double gaussian_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

/// Safeguarded Newton iteration for F(x) = u on a bracket where F is
/// nondecreasing.
template <class Cdf, class Pdf>
double invert_monotone(const Cdf& cdf, const Pdf& pdf, double u, double lo, double hi, double x0) {
  double x = std::clamp(x0, lo, hi);
  for (int it = 0; it < 400; ++it) {
    const double fx = cdf(x) - u;
    if (std::abs(fx) <= 1e-13) return x;
    if (fx < 0.0)
      lo = x;
    else
      hi = x;
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) return 0.5 * (lo + hi);
    const double d = pdf(x);
    double next = d > 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  return x;
}

}  // namespace detail

/// Cumulative distribution function of a scalar law. Marchenko-Pastur is
/// integrated by adaptive Simpson in the smoothing chart, tolerance 1e-14.
inline double law_cdf(const LimitLaw& law, double x) {
  law.validate();
  switch (law.tag) {
    case LawTag::Semicircle:
      return detail::semicircle_cdf(x);
    case LawTag::MarchenkoPastur: {
      const detail::MpChart chart(law.rho);
      if (x <= chart.a) return 0.0;
      if (x >= chart.b) return 1.0;
      return std::clamp(chart.cdf_phi(chart.phi_of(x)), 0.0, 1.0);
    }
    case LawTag::StdGaussian:
      return detail::gaussian_cdf(x);
    default:
      fail(ErrorKind::UnsupportedLaw, "law_cdf needs a scalar law");
  }
}

/// Quantile function Q(u) for 0 < u <= 1. Q(1) is the right support edge
/// (+infinity for the Gaussian).
inline double law_quantile(const LimitLaw& law, double u) {
  law.validate();
  if (!(u > 0.0 && u <= 1.0)) fail(ErrorKind::OutOfRange, "quantile level must be in (0,1]");
  switch (law.tag) {
    case LawTag::Semicircle: {
      if (u == 1.0) return 2.0;
      if (u == 0.5) return 0.0;
      return detail::invert_monotone(detail::semicircle_cdf, [](double x) { return law_density(LimitLaw::semicircle(), x); },
                                     u, -2.0, 2.0, 4.0 * u - 2.0);
    }
    case LawTag::StdGaussian: {
      if (u == 1.0) return std::numeric_limits<double>::infinity();
      if (u == 0.5) return 0.0;
      return detail::invert_monotone(detail::gaussian_cdf, [](double x) { return law_density(LimitLaw::std_gaussian(), x); },
                                     u, -40.0, 40.0, 0.0);
    }
    case LawTag::MarchenkoPastur: {
      const detail::MpChart chart(law.rho);
      if (u == 1.0) return chart.b;
      const double phi = detail::invert_monotone([&](double p) { return chart.cdf_phi(p); },
                                                 [&](double p) { return chart.integrand(p); }, u, 0.0, kPi, kPi * u);
      return chart.x_of(phi);
    }
    default:
      fail(ErrorKind::UnsupportedLaw, "law_quantile needs a scalar law");
  }
}

/// Argument in (0, 2 pi]; positive reals carry 2 pi. Zero maps to 2 pi too,
/// but callers treat zero separately.
inline double arg_2pi(cplx z) {
  double a = std::atan2(z.imag(), z.real());
  if (a <= 0.0) a += kTwoPi;
  return a;
}

/// Ring index floor(sqrt(n) |z|). Ring boundaries are closed to 1e-12
/// relative so that lattice points built at radius k/sqrt(n) land in ring k.
inline std::size_t spiral_ring(cplx z, std::size_t n) {
  const double s = std::sqrt(static_cast<double>(n)) * std::abs(z);
  return static_cast<std::size_t>(std::floor(s * (1.0 + 1e-12)));
}

/// The spiral order: 0 is initial; otherwise compare ring index, then
/// argument in (0, 2 pi] ascending, then modulus descending.
inline std::weak_ordering spiral_compare(cplx w, cplx z, std::size_t n) {
  const bool w0 = w == cplx(0.0, 0.0), z0 = z == cplx(0.0, 0.0);
  if (w0 || z0) {
    if (w0 && z0) return std::weak_ordering::equivalent;
    return w0 ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  const std::size_t rw = spiral_ring(w, n), rz = spiral_ring(z, n);
  if (rw != rz) return rw < rz ? std::weak_ordering::less : std::weak_ordering::greater;
  const double aw = arg_2pi(w), az = arg_2pi(z);
  if (aw != az) return aw < az ? std::weak_ordering::less : std::weak_ordering::greater;
  const double mw = std::abs(w), mz = std::abs(z);
  if (mw != mz) return mw > mz ? std::weak_ordering::less : std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

/// Stable sort under the spiral order; ties keep input order.
inline std::vector<cplx> spiral_sort(const std::vector<cplx>& pts, std::size_t n) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t i, std::size_t j) { return spiral_compare(pts[i], pts[j], n) < 0; });
  std::vector<cplx> out;
  out.reserve(pts.size());
  for (std::size_t i : idx) out.push_back(pts[i]);
  return out;
}

/// The spiral lattice: 0, then ring k >= 1 holding the 2k+1 points
/// (k / sqrt n) e^{2 pi i j / (2k+1)}, j = 1..2k+1, truncated to n points.
inline std::vector<cplx> spiral_lattice(std::size_t n) {
  std::vector<cplx> pts;
  pts.reserve(n);
  if (n == 0) return pts;
  pts.emplace_back(0.0, 0.0);
  const double sq = std::sqrt(static_cast<double>(n));
  for (std::size_t k = 1; pts.size() < n; ++k) {
    const std::size_t count = 2 * k + 1;
    const double r = static_cast<double>(k) / sq;
    for (std::size_t j = 1; j <= count && pts.size() < n; ++j) {
      // the closing point sits exactly on the positive axis, argument 2 pi
      if (j == count)
        pts.emplace_back(r, 0.0);
      else
        pts.push_back(std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(count)));
    }
  }
  return pts;
}

inline std::vector<cplx> roots_of_unity(std::size_t n) {
  std::vector<cplx> pts;
  pts.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    if (4 * j == n) pts.emplace_back(0.0, 1.0);
    else if (2 * j == n) pts.emplace_back(-1.0, 0.0);
    else if (4 * j == 3 * n) pts.emplace_back(0.0, -1.0);
    else if (j == n) pts.emplace_back(1.0, 0.0);
    else pts.push_back(std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
  }
  return pts;
}

/// Quantile level of the j-th atom (1-based) in discretize_law: j/n for the
/// compactly supported laws, (j - 1/2)/n for the Gaussian (whose j/n = 1
/// quantile is infinite).
inline double discretization_level(const LimitLaw& law, std::size_t j, std::size_t n) {
  const double jj = static_cast<double>(j), nn = static_cast<double>(n);
  return law.tag == LawTag::StdGaussian ? (jj - 0.5) / nn : jj / nn;
}

inline AtomicMeasure discretize_law(const LimitLaw& law, std::size_t n) {
  law.validate();
  require(n >= 1, ErrorKind::InvalidSpec, "discretization needs n >= 1");
  switch (law.tag) {
    case LawTag::UniformCircle:
      return AtomicMeasure(roots_of_unity(n));
    case LawTag::UniformDisc:
      return AtomicMeasure(spiral_lattice(n));
    default: {
      std::vector<double> xs(n);
      for (std::size_t j = 1; j <= n; ++j) xs[j - 1] = law_quantile(law, discretization_level(law, j, n));
      return AtomicMeasure::from_real(xs);
    }
  }
}

}  // namespace rmt
