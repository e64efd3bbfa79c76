// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// checks.hpp: invariant and property suites with fixed seeds. Failures are
// reported in the returned ledger, never thrown.
#pragma once

#include <functional>
#include <sstream>

#include "rmtlab/experiments.hpp"

namespace rmt::checks {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  std::string detail;
};

using Ledger = std::vector<CheckResult>;

inline bool all_passed(const Ledger& l) {
  return std::all_of(l.begin(), l.end(), [](const CheckResult& c) { return c.passed; });
}

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

/// Runs one check, turning an escaped library error into a failed entry.
inline void run(Ledger& out, const std::string& suite, const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
  CheckResult r{suite, name, false, ""};
  try {
    auto [ok, detail] = f();
    r.passed = ok;
    r.detail = detail;
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(r);
}

inline std::vector<cplx> random_points(RngStream& rng, std::size_t n) {
  std::vector<cplx> z(n);
  for (auto& v : z) v = cplx(rng.symmetric_uniform(), rng.symmetric_uniform()) * 2.0;
  return z;
}

inline std::vector<double> random_reals(RngStream& rng, std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) v = 2.0 * rng.symmetric_uniform();
  return x;
}

}  // namespace detail

// ------------------------------------------------------------- transport

/// Assignment against brute force on `instances` planar instances
/// (n in 2..7), and 1D sorted formula against assignment on real atoms.
inline std::pair<bool, std::string> transport_exactness(std::uint64_t seed, std::size_t instances = 200) {
  double worst = 0.0;
  for (std::size_t c = 0; c < instances; ++c) {
    RngStream rng(seed, "check-bruteforce", 0, c);
    const std::size_t n = 2 + c % 6;
    const double p = c % 3 == 0 ? 1.0 : (c % 3 == 1 ? 2.0 : 1.5);
    const auto z = detail::random_points(rng, n), w = detail::random_points(rng, n);
    worst = std::max(worst, std::abs(wp_assignment_plane(z, w, p).distance - wp_bruteforce(z, w, p).distance));
  }
  double worst1d = 0.0;
  for (std::size_t c = 0; c < instances; ++c) {
    RngStream rng(seed, "check-1d", 0, c);
    const std::size_t n = 1 + c % 40;
    const double p = c % 2 == 0 ? 1.0 : 2.0;
    const auto x = detail::random_reals(rng, n), y = detail::random_reals(rng, n);
    const std::vector<cplx> zx(x.begin(), x.end()), zy(y.begin(), y.end());
    worst1d = std::max(worst1d, std::abs(wp_sorted_1d(x, y, p).distance - wp_assignment_plane(zx, zy, p).distance));
  }
  return {worst <= 1e-9 && worst1d <= 1e-9,
          "max |assignment - bruteforce| = " + detail::fmt(worst) + ", max |sorted - assignment| = " + detail::fmt(worst1d)};
}

inline Ledger transport_suite(std::uint64_t seed = 1) {
  Ledger out;
  const std::string s = "transport";
  detail::run(out, s, "assignment-vs-bruteforce-and-1d", [&] { return transport_exactness(seed); });
  detail::run(out, s, "metric-axioms", [&] {
    double worst_tri = 0.0, worst_sym = 0.0, worst_self = 0.0;
    for (std::size_t c = 0; c < 1000; ++c) {
      RngStream rng(seed, "check-metric", 0, c);
      const std::size_t n = 1 + c % 12;
      const double p = 1.0 + static_cast<double>(c % 5) / 4.0;
      const auto a = detail::random_points(rng, n), b = detail::random_points(rng, n), d = detail::random_points(rng, n);
      const double ab = wp_assignment_plane(a, b, p).distance, bd = wp_assignment_plane(b, d, p).distance;
      const double ad = wp_assignment_plane(a, d, p).distance;
      worst_tri = std::max(worst_tri, ad - ab - bd);
      worst_sym = std::max(worst_sym, std::abs(ab - wp_assignment_plane(b, a, p).distance));
      worst_self = std::max(worst_self, wp_assignment_plane(a, a, p).distance);
    }
    return std::pair{worst_tri <= 1e-9 && worst_sym <= 1e-12 && worst_self == 0.0,
                     "triangle excess " + detail::fmt(worst_tri) + ", asymmetry " + detail::fmt(worst_sym) +
                         ", self " + detail::fmt(worst_self)};
  });
  detail::run(out, s, "monotone-in-p", [&] {
    std::size_t bad = 0;
    for (std::size_t c = 0; c < 300; ++c) {
      RngStream rng(seed, "check-monotone-p", 0, c);
      const std::size_t n = 2 + c % 10;
      const auto a = detail::random_points(rng, n), b = detail::random_points(rng, n);
      double prev = 0.0;
      for (double p : {1.0, 1.25, 1.5, 2.0, 3.0}) {
        const double d = wp_assignment_plane(a, b, p).distance;
        if (d < prev - 1e-9) ++bad;
        prev = d;
      }
    }
    return std::pair{bad == 0, std::to_string(bad) + " decreases"};
  });
  detail::run(out, s, "dual-lower-bound", [&] {
    std::size_t bad = 0;
    double mean_gap = 0.0;
    for (std::size_t c = 0; c < 1000; ++c) {
      RngStream rng(seed, "check-dual", 0, c);
      const AtomicMeasure mu(detail::random_points(rng, 16)), nu(detail::random_points(rng, 16));
      const double lb = w1_dual_lower_bound(mu, nu, 64), w1 = wp_assignment_plane(mu, nu, 1.0).distance;
      if (lb > w1 + 1e-12) ++bad;
      mean_gap += (w1 - lb) / 1000.0;
    }
    return std::pair{bad == 0, std::to_string(bad) + " violations, mean gap " + detail::fmt(mean_gap)};
  });
  detail::run(out, s, "cyclic-shift-vs-exact", [&] {
    std::size_t bad = 0;
    double worst_rot = 0.0;
    for (std::size_t c = 0; c < 40; ++c) {
      RngStream rng(seed, "check-cyclic", 0, c);
      const std::size_t n = 4 + 6 * c;
      EnsembleSpec e;
      e.kind = EnsembleKind::Haar;
      e.n = n;
      const auto z = sample_spectrum(e, rng).atoms();
      const auto nu = roots_of_unity(n);
      const double exact = wp_assignment_plane(z, nu, 2.0).distance, cyc = wp_cyclic_shift(z, nu, 2.0).distance;
      if (cyc < exact - 1e-9) ++bad;
      // a rigid rotation of the roots is matched exactly by the heuristic
      std::vector<cplx> rot(nu);
      for (auto& v : rot) v *= std::polar(1.0, 0.3 / static_cast<double>(n));
      worst_rot = std::max(worst_rot, std::abs(wp_cyclic_shift(rot, nu, 2.0).distance - wp_assignment_plane(rot, nu, 2.0).distance));
    }
    return std::pair{bad == 0 && worst_rot <= 1e-9,
                     std::to_string(bad) + " below exact, rotation gap " + detail::fmt(worst_rot)};
  });
  detail::run(out, s, "cdf-difference-identity", [&] {
    double worst = 0.0;
    const auto law = LimitLaw::semicircle();
    for (std::size_t c = 0; c < 20; ++c) {
      RngStream rng(seed, "check-cdf-identity", 0, c);
      const std::size_t n = 1 + c;
      std::vector<double> xs = detail::random_reals(rng, n);
      for (auto& x : xs) x *= 1.5;
      std::sort(xs.begin(), xs.end());
      // int |F_n - F| over [min(xs,-2), max(xs,2)], split at the atoms
      std::vector<double> cuts{std::min(-2.0, xs.front()), std::max(2.0, xs.back())};
      cuts.insert(cuts.end(), xs.begin(), xs.end());
      std::sort(cuts.begin(), cuts.end());
      double integral = 0.0;
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (!(hi > lo)) continue;
        const double fn = static_cast<double>(count_upto(xs, 0.5 * (lo + hi))) / static_cast<double>(n);
        integral += quad::adaptive_simpson([&](double t) { return std::abs(fn - law_cdf(law, t)); }, lo, hi, 1e-13, 4);
      }
      worst = std::max(worst, std::abs(integral - wp_quantile_vs_law(xs, law, 1.0).distance));
    }
    return std::pair{worst <= 1e-8, "max deviation " + detail::fmt(worst)};
  });
  return out;
}

// ------------------------------------------------------------- lipschitz

inline Ledger lipschitz_checks(std::uint64_t seed = 1, std::size_t cases = 500) {
  Ledger out;
  for (const auto& l : lipschitz_suite(seed, cases)) {
    CheckResult r{"lipschitz", l.name, l.passed(), ""};
    r.detail = std::to_string(l.cases) + " cases, " + std::to_string(l.violations) + " violations, " +
               (l.equality ? "max |ratio - 1| " : "max ratio ") + detail::fmt(l.max_ratio);
    out.push_back(r);
  }
  return out;
}

// ----------------------------------------------------------------- matcore

/// Trace/HS identities and residual bounds on `cases` random matrices up to
/// n = 512, plus singular values against eigenvalues of X*X.
inline Ledger matcore_suite(std::uint64_t seed = 1, std::size_t cases = 200) {
  Ledger out;
  const std::string s = "matcore";
  auto size_of = [](std::size_t c) -> std::size_t {
    if (c % 40 == 39) return 512;
    if (c % 20 == 19) return 256;
    if (c % 10 == 9) return 128;
    return 2 + (c * 7) % 63;
  };
  detail::run(out, s, "hermitian-trace-hs-residual", [&] {
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < cases; ++c) {
      RngStream rng(seed, "check-hermitian", 0, c);
      const std::size_t n = size_of(c);
      const ComplexMatrix h = rmt::detail::random_hermitian(n, rng);
      const auto ev = hermitian_eigenvalues(HermitianView(h));
      const double op = std::max(std::abs(ev.min()), std::abs(ev.max()));
      const double tol = 1e-9 * static_cast<double>(n) * op;
      double sum = 0.0, sum2 = 0.0;
      for (double v : ev.values()) {
        sum += v;
        sum2 += v * v;
      }
      const double e1 = std::abs(sum - h.trace().real()), e2 = std::abs(sum2 - h.squaredNorm());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
      const double res = (h * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal()).norm();
      const double e3 = res / (1e-10 * static_cast<double>(n) * op);
      double e4 = 0.0;
      for (std::size_t j = 0; j < ev.dim(); ++j)
        e4 = std::max(e4, std::abs(ev[j] - es.eigenvalues()(static_cast<Eigen::Index>(j))));
      if (e1 > tol || e2 > tol || e3 > 1.0 || e4 > tol) ++bad;
      worst = std::max(worst, e3);
    }
    return std::pair{bad == 0, std::to_string(bad) + " failures, worst residual/bound " + detail::fmt(worst)};
  });
  detail::run(out, s, "general-trace-and-residual", [&] {
    std::size_t bad = 0;
    double worst = 0.0;
    for (std::size_t c = 0; c < cases; ++c) {
      RngStream rng(seed, "check-general", 0, c);
      const std::size_t n = size_of(c);
      const ComplexMatrix a = sample_ginibre(n, rng) / std::sqrt(static_cast<double>(n));
      const auto ev = general_eigenvalues(a);
      const double op = matrix_norms(a).op;
      cplx sum = 0.0;
      for (auto v : ev.values()) sum += v;
      const double r = std::abs(sum - a.trace()) / (1e-8 * static_cast<double>(n) * op);
      worst = std::max(worst, r);
      if (r > 1.0) ++bad;
      if (n <= 24) {
        // each computed eigenvalue leaves A - lambda I numerically singular
        for (auto v : ev.values()) {
          const ComplexMatrix shifted = a - v * ComplexMatrix::Identity(a.rows(), a.cols());
          Eigen::JacobiSVD<ComplexMatrix> svd(shifted);
          if (svd.singularValues().minCoeff() > 1e-10 * static_cast<double>(n) * op) ++bad;
        }
      }
    }
    return std::pair{bad == 0, std::to_string(bad) + " failures, worst trace error/bound " + detail::fmt(worst)};
  });
  detail::run(out, s, "singular-values-vs-gram", [&] {
    double worst = 0.0;
    for (std::size_t c = 0; c < cases; ++c) {
      RngStream rng(seed, "check-svd", 0, c);
      const std::size_t n = std::min<std::size_t>(size_of(c), 256);
      const std::size_t m = n + (c * 5) % 17;
      const ComplexMatrix x = rmt::detail::random_gaussian(m, n, rng);
      const auto sv = singular_values(x);
      const ComplexMatrix gram = x.adjoint() * x;
      const auto ev = hermitian_eigenvalues(HermitianView::hermitize(gram));
      const double scale = ev.max();
      for (std::size_t j = 0; j < sv.dim(); ++j)
        worst = std::max(worst, std::abs(sv[j] * sv[j] - ev[j]) / scale);
    }
    return std::pair{worst <= 1e-8, "max relative deviation " + detail::fmt(worst)};
  });
  detail::run(out, s, "unitary-spectrum-on-circle", [&] {
    double worst = 0.0;
    for (std::size_t c = 0; c < 50; ++c) {
      RngStream rng(seed, "check-unitary", 0, c);
      const Group g = static_cast<Group>(c % 5);
      const auto ev = general_eigenvalues(sample_haar(g, 2 + c % 30, rng));
      for (auto v : ev.values()) worst = std::max(worst, std::abs(std::abs(v) - 1.0));
    }
    return std::pair{worst <= 1e-8, "max ||lambda| - 1| " + detail::fmt(worst)};
  });
  return out;
}

// --------------------------------------------------------------------- dpp

inline Ledger dpp_suite() {
  Ledger out;
  const std::string s = "dpp";
  detail::run(out, s, "total-mass", [&] {
    double worst = 0.0;
    for (std::size_t n : {1, 5, 20, 50}) {
      for (auto fam : {KernelFamily::HermiteGUE, KernelFamily::DysonCircle, KernelFamily::Ginibre}) {
        const KernelSpec k{fam, n};
        const double right = fam == KernelFamily::HermiteGUE ? hermite_guard(n)
                                                              : (fam == KernelFamily::DysonCircle ? kTwoPi : ginibre_outer_radius(n));
        worst = std::max(worst, std::abs(counting_mean(k, right) - static_cast<double>(n)));
      }
    }
    return std::pair{worst <= 1e-6, "max |mass - n| " + detail::fmt(worst)};
  });
  detail::run(out, s, "dyson-mean-at-pi", [&] {
    double worst = 0.0;
    for (std::size_t n : {1, 2, 10, 25, 50}) worst = std::max(worst, std::abs(counting_mean({KernelFamily::DysonCircle, n}, kPi) - 0.5 * static_cast<double>(n)));
    return std::pair{worst <= 1e-8, "max |E N_pi - n/2| " + detail::fmt(worst)};
  });
  detail::run(out, s, "hermite-bulk-variance-log-growth", [&] {
    std::vector<double> ln, v;
    for (std::size_t n : {50, 100, 200, 400, 800}) {
      ln.push_back(std::log(static_cast<double>(n)));
      v.push_back(counting_variance({KernelFamily::HermiteGUE, n}, 0.0));
    }
    const auto f = stats::linear_fit(ln, v);
    return std::pair{f.r2 >= 0.95 && f.slope > 0.0, "b = " + detail::fmt(f.slope) + ", R^2 = " + detail::fmt(f.r2)};
  });
  detail::run(out, s, "reproducing-property", [&] {
    double worst = 0.0;
    for (std::size_t c = 0; c < 12; ++c) {
      RngStream rng(1, "check-reproducing", 0, c);
      const std::size_t n = 1 + (c * 7) % 30;
      const double g = std::sqrt(2.0 * static_cast<double>(n));
      const double x = g * rng.symmetric_uniform(), y = g * rng.symmetric_uniform();
      const double lim = hermite_guard(n);
      const double h = quad::refine_gauss([&](double u) { return hermite_kernel(n, x, u) * hermite_kernel(n, u, y); }, -lim, lim, 1e-9, 16);
      worst = std::max(worst, std::abs(h - hermite_kernel(n, x, y)));
      const double a = kTwoPi * rng.uniform(), b = kTwoPi * rng.uniform();
      const double d = quad::refine_gauss([&](double u) { return dyson_kernel(n, a, u) * dyson_kernel(n, u, b); }, 0.0, kTwoPi, 1e-9, 16) / kTwoPi;
      worst = std::max(worst, std::abs(d - dyson_kernel(n, a, b)));
    }
    return std::pair{worst <= 1e-6, "max deviation " + detail::fmt(worst)};
  });
  detail::run(out, s, "edge-counting-mean", [&] {
    const std::size_t n = 50;
    const double m = counting_mean({KernelFamily::HermiteGUE, n}, gue_coordinate_map(n, 2.0));
    return std::pair{std::abs(m - 50.0) <= 1e-3 * 50.0, "E N at mapped edge " + detail::fmt(m)};
  });
  detail::run(out, s, "variance-boundaries", [&] {
    const double v0 = counting_variance({KernelFamily::DysonCircle, 20}, kTwoPi);
    const double v1 = counting_variance({KernelFamily::HermiteGUE, 20}, -hermite_guard(20));
    return std::pair{std::abs(v0) <= 1e-6 && std::abs(v1) <= 1e-6, "Var at 2pi " + detail::fmt(v0) + ", at left guard " + detail::fmt(v1)};
  });
  return out;
}

// ------------------------------------------------------------------ limits

inline Ledger limits_suite(std::uint64_t seed = 1) {
  Ledger out;
  const std::string s = "limits";
  detail::run(out, s, "cdf-quantile-inverse", [&] {
    double worst = 0.0;
    for (const auto& law : {LimitLaw::semicircle(), LimitLaw::marchenko_pastur(1.0), LimitLaw::marchenko_pastur(0.5),
                            LimitLaw::marchenko_pastur(0.1), LimitLaw::std_gaussian()}) {
      RngStream rng(seed, "check-quantile-" + law.name(), 0, static_cast<std::uint64_t>(law.rho * 1000));
      for (int i = 0; i < 1000; ++i) {
        double u = rng.uniform();
        if (u <= 0.0) u = 0.5;
        worst = std::max(worst, std::abs(law_cdf(law, law_quantile(law, u)) - u));
      }
    }
    return std::pair{worst <= 1e-9, "max |F(Q(u)) - u| " + detail::fmt(worst)};
  });
  detail::run(out, s, "semicircle-discretization-rate", [&] {
    std::vector<double> ns, ds;
    for (std::size_t n = 16; n <= 1024; n *= 2) {
      ns.push_back(static_cast<double>(n));
      ds.push_back(wp_quantile_vs_law(discretize_law(LimitLaw::semicircle(), n).real_parts(), LimitLaw::semicircle(), 2.0).distance);
    }
    const auto f = stats::fit_loglog_rate(ns, ds);
    return std::pair{f.slope <= -0.95, "slope " + detail::fmt(f.slope)};
  });
  detail::run(out, s, "circle-discretization-rate", [&] {
    std::vector<double> ns, ds;
    for (std::size_t n = 16; n <= 1024; n *= 2) {
      ns.push_back(static_cast<double>(n));
      ds.push_back(planar_tail_bound(LimitLaw::uniform_circle(), n, 2.0));
    }
    const auto f = stats::fit_loglog_rate(ns, ds);
    return std::pair{f.slope <= -0.95, "slope " + detail::fmt(f.slope)};
  });
  detail::run(out, s, "disc-lattice-rate", [&] {
    std::vector<double> ns, ds;
    for (std::size_t n : {64, 256, 1024, 4096}) {
      ns.push_back(static_cast<double>(n));
      ds.push_back(planar_tail_bound(LimitLaw::uniform_disc(), n, 2.0));
    }
    const auto f = stats::fit_loglog_rate(ns, ds);
    return std::pair{f.slope <= -0.45, "slope " + detail::fmt(f.slope) + " (perfect-square sizes)"};
  });
  detail::run(out, s, "spiral-preorder", [&] {
    std::size_t bad = 0;
    auto pick = [](RngStream& rng) {
      // coarse grid values create ties in ring, argument and modulus
      const double r = std::floor(4.0 * rng.uniform()) / 4.0 + (rng.uniform() < 0.5 ? 0.0 : 0.1);
      const double t = kTwoPi * std::floor(8.0 * rng.uniform()) / 8.0;
      return std::polar(r, t);
    };
    for (std::size_t c = 0; c < 10000; ++c) {
      RngStream rng(seed, "check-spiral", 0, c);
      const std::size_t n = 1 + c % 16;
      const cplx a = pick(rng), b = pick(rng), d = pick(rng);
      const auto ab = spiral_compare(a, b, n), ba = spiral_compare(b, a, n), bd = spiral_compare(b, d, n),
                 ad = spiral_compare(a, d, n);
      if ((ab < 0) != (ba > 0) || (ab == 0) != (ba == 0)) ++bad;
      if (ab <= 0 && bd <= 0 && !(ad <= 0)) ++bad;
    }
    for (std::size_t n : {1, 2, 9, 10, 50, 100}) {
      const auto lat = spiral_lattice(n);
      if (spiral_sort(lat, n) != lat) ++bad;
    }
    return std::pair{bad == 0, std::to_string(bad) + " violations"};
  });
  return out;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"transport", "lipschitz", "dpp", "matcore", "limits"};
  return names;
}

inline Ledger run_suite(const std::string& name, std::uint64_t seed = 1) {
  if (name == "transport") return transport_suite(seed);
  if (name == "lipschitz") return lipschitz_checks(seed);
  if (name == "dpp") return dpp_suite();
  if (name == "matcore") return matcore_suite(seed);
  if (name == "limits") return limits_suite(seed);
  fail(ErrorKind::InvalidSpec, "unknown suite: " + name);
}

}  // namespace rmt::checks
