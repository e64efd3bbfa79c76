// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// dpp.hpp: determinantal kernels of the GUE, the circular unitary ensemble
// and the Ginibre ensemble; counting-function mean and variance by
// quadrature; Bernstein tail envelopes.
//
// Native coordinates and reference measures:
//   HermiteGUE(n)   x on the line, Lebesgue. A GUE eigenvalue lambda of the
//                   1/n-variance normalization sits at x = lambda sqrt(n/2).
//   DysonCircle(n)  angle in [0, 2 pi), reference measure du / (2 pi).
//   Ginibre(n)      z in the plane, area measure. An eigenvalue w of
//                   G / sqrt(n) sits at z = sqrt(n) w. Counting statistics
//                   are taken over centred discs |z| <= r.
// All kernels sum n terms (j = 0..n-1), so each has total mass n.
#pragma once

#include "rmtlab/quadrature.hpp"

namespace rmt {

enum class KernelFamily { HermiteGUE, DysonCircle, Ginibre };

inline std::string to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::HermiteGUE: return "hermite";
    case KernelFamily::DysonCircle: return "dyson";
    case KernelFamily::Ginibre: return "ginibre";
  }
  return "?";
}

struct KernelSpec {
  KernelFamily family = KernelFamily::HermiteGUE;
  std::size_t n = 1;

  void validate() const { require(n >= 1, ErrorKind::InvalidSpec, "kernel needs n >= 1"); }
};

struct CountingStats {
  double x = 0.0;
  double mean = 0.0;
  double variance = 0.0;
};

// ------------------------------------------------------ Hermite functions

/// Orthonormal Hermite functions psi_0..psi_{count-1} at x, from
///   psi_{j+1} = x sqrt(2/(j+1)) psi_j - sqrt(j/(j+1)) psi_{j-1},
///   psi_0 = pi^{-1/4} e^{-x^2/2}.
/// The recurrence runs on rescaled values with a separate log scale so that
/// the Gaussian factor does not underflow before the polynomial part grows.
inline std::vector<double> hermite_functions(double x, std::size_t count) {
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;
  double log_scale = -0.5 * x * x - 0.25 * std::log(kPi);
  double prev = 0.0, cur = 1.0;
  constexpr double kBig = 1e150;
  const double log_big = std::log(kBig);
  for (std::size_t j = 0; j < count; ++j) {
    out[j] = log_scale < -745.0 ? 0.0 : cur * std::exp(log_scale);
    const double jj = static_cast<double>(j);
    const double next = x * std::sqrt(2.0 / (jj + 1.0)) * cur - std::sqrt(jj / (jj + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += log_big;
    }
  }
  return out;
}

/// Beyond this the Hermite kernel is below double precision and is returned
/// as 0 (flagged by hermite_outside_guard).
inline double hermite_guard(std::size_t n) { return std::sqrt(2.0 * static_cast<double>(n) + 1.0) + 40.0; }
inline bool hermite_outside_guard(std::size_t n, double x) { return std::abs(x) > hermite_guard(n); }

/// Sum_{j<n} psi_j(x) psi_j(y).
inline double hermite_kernel(std::size_t n, double x, double y) {
  if (hermite_outside_guard(n, x) || hermite_outside_guard(n, y)) return 0.0;
  const auto px = hermite_functions(x, n);
  const auto py = x == y ? px : hermite_functions(y, n);
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += px[j] * py[j];
  return s;
}

/// Christoffel-Darboux form sqrt(n/2) (psi_n(x) psi_{n-1}(y) - psi_{n-1}(x) psi_n(y)) / (x - y),
/// given the two top Hermite functions at each point; x != y.
inline double hermite_kernel_cd(std::size_t n, double x, double y, double pn_x, double pnm1_x, double pn_y, double pnm1_y) {
  return std::sqrt(0.5 * static_cast<double>(n)) * (pn_x * pnm1_y - pnm1_x * pn_y) / (x - y);
}

// ---------------------------------------------------------------- Dyson

/// sin(n t / 2) / sin(t / 2), t = x - y, with the removable singularities at
/// t in 2 pi Z filled in.
inline double dyson_kernel(std::size_t n, double x, double y) {
  const double nn = static_cast<double>(n);
  const double t = x - y;
  const double m = std::round(t / kTwoPi);
  const double eps = t - kTwoPi * m;
  const double sign = (static_cast<long long>(m) * static_cast<long long>(n - 1)) % 2 == 0 ? 1.0 : -1.0;
  if (std::abs(eps) < 1e-6) return sign * nn * (1.0 - (nn * nn - 1.0) * eps * eps / 24.0);
  return sign * std::sin(0.5 * nn * eps) / std::sin(0.5 * eps);
}

// -------------------------------------------------------------- Ginibre

/// (1/pi) e^{-(|z|^2 + |w|^2)/2} sum_{k<n} (z conj(w))^k / k!, each term
/// formed in log space so that no partial product overflows.
inline cplx ginibre_kernel(std::size_t n, cplx z, cplx w) {
  const double damp = -0.5 * (std::norm(z) + std::norm(w));
  const cplx zw = z * std::conj(w);
  if (zw == cplx(0.0, 0.0)) return std::exp(damp) / kPi;
  const double lr = std::log(std::abs(zw));
  const double th = std::arg(zw);
  cplx s = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double kk = static_cast<double>(k);
    const double lm = kk * lr - std::lgamma(kk + 1.0) + damp;
    if (lm < -745.0) continue;
    s += std::polar(std::exp(lm), kk * th);
  }
  return s / kPi;
}

/// Diagonal of the Ginibre kernel as a function of the radius.
inline double ginibre_diagonal(std::size_t n, double rho) {
  if (rho == 0.0) return 1.0 / kPi;
  const double l2 = 2.0 * std::log(rho);
  double s = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double kk = static_cast<double>(k);
    const double lm = kk * l2 - std::lgamma(kk + 1.0) - rho * rho;
    if (lm > -745.0) s += std::exp(lm);
  }
  return s / kPi;
}

/// Angle-averaged |K(z,w)|^2 kernel for the disc variance:
/// 4 rho sigma e^{-rho^2 - sigma^2} sum_{k<n} (rho sigma)^{2k} / (k!)^2, so that
/// Var N_r = int_0^r int_r^inf of it d sigma d rho.
inline double ginibre_radial_pair(std::size_t n, double rho, double sigma) {
  if (rho == 0.0 || sigma == 0.0) return 0.0;
  const double lp = 2.0 * std::log(rho * sigma);
  const double base = std::log(4.0 * rho * sigma) - rho * rho - sigma * sigma;
  double s = 0.0;
  for (std::size_t k = n; k-- > 0;) {
    const double kk = static_cast<double>(k);
    const double lm = base + kk * lp - 2.0 * std::lgamma(kk + 1.0);
    if (lm > -745.0) s += std::exp(lm);
  }
  return s;
}

inline double ginibre_outer_radius(std::size_t n) { return std::sqrt(static_cast<double>(n)) + 12.0; }

// ------------------------------------------------------------ evaluation

/// Kernel value in native coordinates. Real kernels are returned with zero
/// imaginary part. Throws Overflow for arguments far outside any bulk.
inline cplx kernel_eval(const KernelSpec& spec, cplx x, cplx y) {
  spec.validate();
  const double limit = 1e6 + 10.0 * static_cast<double>(spec.n);
  if (std::abs(x) > limit || std::abs(y) > limit) fail(ErrorKind::Overflow, "kernel argument far outside the bulk");
  switch (spec.family) {
    case KernelFamily::HermiteGUE:
      return hermite_kernel(spec.n, x.real(), y.real());
    case KernelFamily::DysonCircle:
      return dyson_kernel(spec.n, x.real(), y.real());
    case KernelFamily::Ginibre:
      return ginibre_kernel(spec.n, x, y);
  }
  fail(ErrorKind::InvalidSpec, "unknown kernel family");
}

namespace detail {

inline int panels_for(double length, double wavelength) {
  return std::max(4, static_cast<int>(std::ceil(length / wavelength)));
}

}  // namespace detail

/// E N_x: Hermite counts eigenvalues <= x; Dyson counts angles in [0, x];
/// Ginibre counts points with |z| <= x. Quadrature tolerance 1e-10.
inline double counting_mean(const KernelSpec& spec, double x) {
  spec.validate();
  const std::size_t n = spec.n;
  const double nn = static_cast<double>(n);
  switch (spec.family) {
    case KernelFamily::HermiteGUE: {
      const double lo = -(std::sqrt(2.0 * nn + 1.0) + 12.0);
      const double hi = std::min(x, -lo);
      if (hi <= lo) return 0.0;
      const int panels = detail::panels_for(hi - lo, 2.0 * kPi / std::sqrt(2.0 * nn + 1.0));
      return quad::refine_gauss([n](double u) { return hermite_kernel(n, u, u); }, lo, hi, 1e-10, panels);
    }
    case KernelFamily::DysonCircle: {
      const double hi = std::clamp(x, 0.0, kTwoPi);
      if (hi == 0.0) return 0.0;
      return quad::refine_gauss([n](double u) { return dyson_kernel(n, u, u); }, 0.0, hi, 1e-10) / kTwoPi;
    }
    case KernelFamily::Ginibre: {
      const double hi = std::min(x, ginibre_outer_radius(n));
      if (hi <= 0.0) return 0.0;
      return quad::refine_gauss([n](double r) { return kTwoPi * r * ginibre_diagonal(n, r); }, 0.0, hi, 1e-10,
                                detail::panels_for(hi, 1.0));
    }
  }
  fail(ErrorKind::InvalidSpec, "unknown kernel family");
}

namespace detail {

/// Double composite Gauss-Legendre of k(u, v) over [a0,a1] x [b0,b1]; the
/// panel counts double until successive estimates agree to tol.
template <class K>
double product_quadrature(const K& kfun, double a0, double a1, double b0, double b1, int panels_a, int panels_b,
                          double tol, int max_doublings = 5) {
  auto estimate = [&](int pa, int pb) {
    const auto na = quad::composite_nodes(a0, a1, pa), nb = quad::composite_nodes(b0, b1, pb);
    return kfun(na, nb);
  };
  double prev = estimate(panels_a, panels_b);
  for (int d = 1; d <= max_doublings; ++d) {
    panels_a *= 2;
    panels_b *= 2;
    const double cur = estimate(panels_a, panels_b);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  fail(ErrorKind::QuadratureFailure, "double quadrature did not settle");
}

}  // namespace detail

/// Var N_x = int_{below x} int_{above x} |K(u,v)|^2 (reference measures as
/// above). Hermite uses the Christoffel-Darboux form of K on precomputed
/// top Hermite functions; Dyson and Ginibre integrate the kernel directly.
/// Absolute tolerance 1e-7 between successive refinements.
inline double counting_variance(const KernelSpec& spec, double x) {
  spec.validate();
  const std::size_t n = spec.n;
  const double nn = static_cast<double>(n);
  constexpr double tol = 1e-7;
  switch (spec.family) {
    case KernelFamily::HermiteGUE: {
      const double edge = std::sqrt(2.0 * nn + 1.0) + 12.0;
      if (x <= -edge || x >= edge) return 0.0;
      const double wave = 2.0 * kPi / std::sqrt(2.0 * nn + 1.0);
      auto body = [n](const quad::NodeSet& a, const quad::NodeSet& b) {
        auto tops = [n](const quad::NodeSet& s) {
          std::vector<double> pn(s.x.size()), pm(s.x.size());
          for (std::size_t i = 0; i < s.x.size(); ++i) {
            const auto psi = hermite_functions(s.x[i], n + 1);
            pn[i] = psi[n];
            pm[i] = psi[n - 1];
          }
          return std::pair{pn, pm};
        };
        const auto [an, am] = tops(a);
        const auto [bn, bm] = tops(b);
        double sum = 0.0;
        for (std::size_t i = 0; i < a.x.size(); ++i) {
          double row = 0.0;
          for (std::size_t j = 0; j < b.x.size(); ++j) {
            const double k = hermite_kernel_cd(n, a.x[i], b.x[j], an[i], am[i], bn[j], bm[j]);
            row += b.w[j] * k * k;
          }
          sum += a.w[i] * row;
        }
        return sum;
      };
      return detail::product_quadrature(body, -edge, x, x, edge, detail::panels_for(x + edge, wave),
                                        detail::panels_for(edge - x, wave), tol);
    }
    case KernelFamily::DysonCircle: {
      if (x <= 0.0 || x >= kTwoPi) return 0.0;
      const double wave = kTwoPi / nn;
      auto body = [n](const quad::NodeSet& a, const quad::NodeSet& b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.x.size(); ++i) {
          double row = 0.0;
          for (std::size_t j = 0; j < b.x.size(); ++j) {
            const double k = dyson_kernel(n, a.x[i], b.x[j]);
            row += b.w[j] * k * k;
          }
          sum += a.w[i] * row;
        }
        return sum / (kTwoPi * kTwoPi);
      };
      return detail::product_quadrature(body, 0.0, x, x, kTwoPi, detail::panels_for(x, wave),
                                        detail::panels_for(kTwoPi - x, wave), tol);
    }
    case KernelFamily::Ginibre: {
      const double outer = ginibre_outer_radius(n);
      if (x <= 0.0 || x >= outer) return 0.0;
      auto body = [n](const quad::NodeSet& a, const quad::NodeSet& b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.x.size(); ++i) {
          double row = 0.0;
          for (std::size_t j = 0; j < b.x.size(); ++j) row += b.w[j] * ginibre_radial_pair(n, a.x[i], b.x[j]);
          sum += a.w[i] * row;
        }
        return sum;
      };
      return detail::product_quadrature(body, 0.0, x, x, outer, detail::panels_for(x, 0.5),
                                        detail::panels_for(outer - x, 0.5), tol);
    }
  }
  fail(ErrorKind::InvalidSpec, "unknown kernel family");
}

inline CountingStats counting_stats(const KernelSpec& spec, double x) {
  return {x, counting_mean(spec, x), counting_variance(spec, x)};
}

/// 2 exp(-t^2 / (2 variance + t)); equals 2 at t = 0.
inline double bernstein_tail(double variance, double t) {
  require(variance >= 0.0 && t >= 0.0, ErrorKind::OutOfRange, "bernstein_tail needs variance, t >= 0");
  if (t == 0.0) return 2.0;
  return 2.0 * std::exp(-t * t / (2.0 * variance + t));
}

/// lambda (GUE, entries of variance 1/n) -> x = lambda sqrt(n/2) (Hermite kernel).
inline double gue_coordinate_map(std::size_t n, double lambda) { return lambda * std::sqrt(0.5 * static_cast<double>(n)); }
inline double gue_coordinate_unmap(std::size_t n, double x) { return x / std::sqrt(0.5 * static_cast<double>(n)); }

}  // namespace rmt
