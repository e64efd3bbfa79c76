// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// stats.hpp: small statistics kit for the experiments (moments, least
// squares, two-sample Kolmogorov-Smirnov, DKW bands).
#pragma once

#include <optional>

#include "rmtlab/core.hpp"

namespace rmt::stats {

struct Moments {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::size_t count = 0;

  double stderr_mean() const { return count > 0 ? std::sqrt(variance / static_cast<double>(count)) : 0.0; }
};

inline Moments moments(const std::vector<double>& xs) {
  Moments m;
  m.count = xs.size();
  if (xs.empty()) return m;
  double s = 0.0;
  for (double x : xs) s += x;
  m.mean = s / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double q = 0.0;
    for (double x : xs) q += (x - m.mean) * (x - m.mean);
    m.variance = q / static_cast<double>(xs.size() - 1);
  }
  return m;
}

/// Standard error of the sample variance, sqrt((m4 - s^4 (n-3)/(n-1)) / n).
inline double stderr_variance(const std::vector<double>& xs) {
  const auto m = moments(xs);
  const double n = static_cast<double>(xs.size());
  if (n < 4) return std::numeric_limits<double>::infinity();
  double m4 = 0.0;
  for (double x : xs) m4 += std::pow(x - m.mean, 4);
  m4 /= n;
  const double s2 = m.variance;
  return std::sqrt(std::max(0.0, (m4 - s2 * s2 * (n - 3.0) / (n - 1.0)) / n));
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r2 = 1.0;
};

/// Ordinary least squares y = intercept + slope x, exact normal equations.
inline LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size(), ErrorKind::SizeMismatch, "linear_fit needs paired samples");
  const std::size_t n = x.size();
  if (n < 2) fail(ErrorKind::DegenerateFit, "need at least two points");
  const double nn = static_cast<double>(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nn;
  my /= nn;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) fail(ErrorKind::DegenerateFit, "need at least two distinct abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - f.intercept - f.slope * x[i];
    sse += r * r;
  }
  f.stderr_slope = n > 2 ? std::sqrt(sse / (nn - 2.0) / sxx) : 0.0;
  // exact fits leave only rounding in sse
  if (f.stderr_slope < 1e-12 * std::max(1.0, std::abs(f.slope))) f.stderr_slope = 0.0;
  f.r2 = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return f;
}

/// Least squares on (ln n, ln d).
inline LinearFit fit_loglog_rate(const std::vector<double>& ns, const std::vector<double>& ds) {
  require(ns.size() == ds.size(), ErrorKind::SizeMismatch, "fit_loglog_rate needs paired samples");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] > 0.0) || !(ds[i] > 0.0)) fail(ErrorKind::DegenerateFit, "log-log fit needs positive values");
    lx.push_back(std::log(ns[i]));
    ly.push_back(std::log(ds[i]));
  }
  return linear_fit(lx, ly);
}

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - G_b|.
inline double ks_statistic(std::vector<double> a, std::vector<double> b) {
  require(!a.empty() && !b.empty(), ErrorKind::SizeMismatch, "KS needs nonempty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

/// Asymptotic two-sample KS critical value at level alpha:
/// sqrt(-ln(alpha/2)/2) sqrt((na+nb)/(na nb)).
inline double ks_critical(double alpha, std::size_t na, std::size_t nb) {
  const double a = static_cast<double>(na), b = static_cast<double>(nb);
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) * std::sqrt((a + b) / (a * b));
}

/// Dvoretzky-Kiefer-Wolfowitz band half-width: P(sup|F_n - F| > eps) <= alpha.
inline double dkw_epsilon(std::size_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace rmt::stats
