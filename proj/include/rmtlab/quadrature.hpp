// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// quadrature.hpp: adaptive Simpson and composite Gauss-Legendre rules.
#pragma once

#include <array>
#include <functional>
#include <mutex>

#include "rmtlab/core.hpp"

namespace rmt::quad {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth, int forced, bool& ok) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0) {
    ok = false;
    return left + right + diff / 15.0;
  }
  if (forced <= 0 &&
      (std::abs(diff) <= 15.0 * tol || (b - a) < 1e-15 * (std::abs(a) + std::abs(b) + 1e-300)))
    return left + right + diff / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, forced - 1, ok) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, forced - 1, ok);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The first `min_depth`
/// levels are always subdivided so that narrow features are not skipped.
/// Throws QuadratureFailure when the recursion depth is exhausted before the
/// local error test passes.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int min_depth = 2, int max_depth = 48) {
  if (a == b) return 0.0;
  if (b < a) return -adaptive_simpson(f, b, a, tol, min_depth, max_depth);
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  bool ok = true;
  const double r = detail::simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth, min_depth, ok);
  if (!ok) fail(ErrorKind::QuadratureFailure, "adaptive Simpson depth exhausted");
  return r;
}

/// Gauss-Legendre nodes and weights on [-1,1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline GaussRule make_gauss_legendre(int order) {
  require(order >= 1, ErrorKind::InvalidSpec, "Gauss rule order");
  GaussRule r;
  r.x.resize(static_cast<std::size_t>(order));
  r.w.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.x[static_cast<std::size_t>(i)] = -z;
    r.x[static_cast<std::size_t>(order - 1 - i)] = z;
    r.w[static_cast<std::size_t>(i)] = w;
    r.w[static_cast<std::size_t>(order - 1 - i)] = w;
  }
  return r;
}

/// Cached rules for the orders used across the library; initialized once.
inline const GaussRule& gauss_legendre(int order) {
  static std::mutex mu;
  static std::array<GaussRule, 65> cache;
  require(order >= 1 && order <= 64, ErrorKind::InvalidSpec, "cached Gauss rule order must be in 1..64");
  std::lock_guard<std::mutex> lock(mu);
  auto& r = cache[static_cast<std::size_t>(order)];
  if (r.x.empty()) r = make_gauss_legendre(order);
  return r;
}

/// Nodes and weights of a composite rule: `panels` equal panels on [a,b],
/// each with the given Gauss order.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;
};

inline NodeSet composite_nodes(double a, double b, int panels, int order = 16) {
  const GaussRule& g = gauss_legendre(order);
  NodeSet s;
  s.x.reserve(static_cast<std::size_t>(panels * order));
  s.w.reserve(static_cast<std::size_t>(panels * order));
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      s.x.push_back(lo + 0.5 * h * (g.x[i] + 1.0));
      s.w.push_back(0.5 * h * g.w[i]);
    }
  }
  return s;
}

template <class F>
double composite_gauss(const F& f, double a, double b, int panels, int order = 16) {
  const GaussRule& g = gauss_legendre(order);
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + h * p;
    double ps = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) ps += g.w[i] * f(lo + 0.5 * h * (g.x[i] + 1.0));
    sum += 0.5 * h * ps;
  }
  return sum;
}

/// Composite Gauss-Legendre, doubling the panel count until two successive
/// estimates agree to `tol`.
template <class F>
double refine_gauss(const F& f, double a, double b, double tol, int panels = 4, int max_panels = 1 << 14) {
  double prev = composite_gauss(f, a, b, panels);
  for (int p = 2 * panels; p <= max_panels; p *= 2) {
    const double cur = composite_gauss(f, a, b, p);
    if (std::abs(cur - prev) <= tol) return cur;
    prev = cur;
  }
  fail(ErrorKind::QuadratureFailure, "composite Gauss refinement did not settle");
}

}  // namespace rmt::quad
