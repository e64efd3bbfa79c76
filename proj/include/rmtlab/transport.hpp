// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// transport.hpp: Wasserstein distances between equal-weight atomic measures,
// and from atomic measures to the limiting laws.
//
// Cost is always the planar |z - w|^p (chordal on the circle).
#pragma once

#include <limits>
#include <optional>

#include "rmtlab/limits.hpp"

namespace rmt {

enum class TransportMethod { Sorted1d, Assignment, CyclicShift, QuantileQuadrature, TriangleBound, BruteForce };

inline std::string to_string(TransportMethod m) {
  switch (m) {
    case TransportMethod::Sorted1d: return "sorted1d";
    case TransportMethod::Assignment: return "assignment";
    case TransportMethod::CyclicShift: return "cyclic-shift";
    case TransportMethod::QuantileQuadrature: return "quantile-quadrature";
    case TransportMethod::TriangleBound: return "triangle-bound";
    case TransportMethod::BruteForce: return "bruteforce";
  }
  return "?";
}

struct TransportResult {
  double distance = 0.0;
  /// matching[i] = index of the target atom paired with source atom i
  /// (indices into the inputs as given). Empty when no matching is produced.
  std::vector<std::size_t> matching;
  TransportMethod method = TransportMethod::Assignment;
};

inline constexpr std::size_t kAssignmentBudget = 4096;
inline constexpr std::size_t kBruteForceBudget = 8;

namespace detail {

inline void check_p(double p) { require(p >= 1.0 && std::isfinite(p), ErrorKind::InvalidSpec, "transport exponent p must be >= 1"); }

inline double pow_cost(double d, double p) { return p == 1.0 ? d : (p == 2.0 ? d * d : std::pow(d, p)); }

inline double root_p(double s, double p) { return p == 1.0 ? s : (p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p)); }

}  // namespace detail

// ------------------------------------------------------------ assignment

/// Minimum-cost perfect matching on a dense n x n cost matrix (row-major).
struct AssignmentSolution {
  double total = 0.0;
  std::vector<std::size_t> row_to_col;
  std::vector<double> u;  // row potentials
  std::vector<double> v;  // column potentials
  double min_reduced_cost = 0.0;
};

/// Shortest augmenting path with dual potentials (Jonker-Volgenant style
/// Hungarian method), O(n^3). Rows are inserted in index order; among equal
/// reduced costs the lowest column index wins, so the result is a pure
/// function of the cost matrix. On return the potentials satisfy
/// c_ij - u_i - v_j >= 0 up to rounding, with equality on the matching;
/// min_reduced_cost records the worst violation for certification.
inline AssignmentSolution solve_assignment(const std::vector<double>& cost, std::size_t n) {
  require(cost.size() == n * n, ErrorKind::SizeMismatch, "assignment cost matrix must be n x n");
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based working arrays; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      const double* row = cost.data() + (i0 - 1) * n;
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = row[j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  AssignmentSolution sol;
  sol.row_to_col.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) sol.row_to_col[p[j] - 1] = j - 1;
  sol.u.assign(u.begin() + 1, u.end());
  sol.v.assign(v.begin() + 1, v.end());
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += cost[i * n + sol.row_to_col[i]];
  sol.total = total;
  double worst = inf;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) worst = std::min(worst, cost[i * n + j] - sol.u[i] - sol.v[j]);
  sol.min_reduced_cost = n == 0 ? 0.0 : worst;
  return sol;
}

// ------------------------------------------------------------- 1D exact

/// Monotone coupling of two equal-size real samples.
inline TransportResult wp_sorted_1d(const std::vector<double>& xs, const std::vector<double>& ys, double p) {
  detail::check_p(p);
  if (xs.size() != ys.size()) fail(ErrorKind::SizeMismatch, "wp_sorted_1d needs equal sizes");
  require(!xs.empty(), ErrorKind::SizeMismatch, "wp_sorted_1d needs nonempty inputs");
  const std::size_t n = xs.size();
  std::vector<std::size_t> ix(n), iy(n);
  std::iota(ix.begin(), ix.end(), std::size_t{0});
  std::iota(iy.begin(), iy.end(), std::size_t{0});
  std::stable_sort(ix.begin(), ix.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::stable_sort(iy.begin(), iy.end(), [&](std::size_t a, std::size_t b) { return ys[a] < ys[b]; });
  TransportResult r;
  r.method = TransportMethod::Sorted1d;
  r.matching.assign(n, 0);
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    s += detail::pow_cost(std::abs(xs[ix[k]] - ys[iy[k]]), p);
    r.matching[ix[k]] = iy[k];
  }
  r.distance = detail::root_p(s / static_cast<double>(n), p);
  return r;
}

inline TransportResult wp_sorted_1d(const RealSpectrum& xs, const RealSpectrum& ys, double p) {
  return wp_sorted_1d(xs.values(), ys.values(), p);
}

/// W_p between two real samples of possibly different sizes (each atom of
/// a sample weighs 1/size), by merging the two quantile step functions.
inline double wp_quantile_1d(std::vector<double> xs, std::vector<double> ys, double p) {
  detail::check_p(p);
  require(!xs.empty() && !ys.empty(), ErrorKind::SizeMismatch, "wp_quantile_1d needs nonempty inputs");
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  const double nx = static_cast<double>(xs.size()), ny = static_cast<double>(ys.size());
  std::size_t i = 0, j = 0;
  double u = 0.0, s = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double ux = static_cast<double>(i + 1) / nx, uy = static_cast<double>(j + 1) / ny;
    const double next = std::min(ux, uy);
    s += (next - u) * detail::pow_cost(std::abs(xs[i] - ys[j]), p);
    u = next;
    if (ux <= next) ++i;
    if (uy <= next) ++j;
  }
  return detail::root_p(s, p);
}

// ----------------------------------------------------- planar, exact

namespace detail {

inline std::vector<double> cost_matrix(const std::vector<cplx>& zs, const std::vector<cplx>& ws, double p) {
  const std::size_t n = zs.size();
  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c[i * n + j] = pow_cost(std::abs(zs[i] - ws[j]), p);
  return c;
}

}  // namespace detail

/// Exact W_p between equal-size atomic measures in the plane via minimum-cost
/// perfect matching. Optimality is certified by dual feasibility (all reduced
/// costs >= -1e-9 relative to the largest cost); NonConvergence otherwise.
inline TransportResult wp_assignment_plane(const std::vector<cplx>& zs, const std::vector<cplx>& ws, double p) {
  detail::check_p(p);
  if (zs.size() != ws.size()) fail(ErrorKind::SizeMismatch, "wp_assignment_plane needs equal sizes");
  require(!zs.empty(), ErrorKind::SizeMismatch, "wp_assignment_plane needs nonempty inputs");
  if (zs.size() > kAssignmentBudget) fail(ErrorKind::BudgetExceeded, "assignment limited to 4096 atoms");
  const std::size_t n = zs.size();
  const auto cost = detail::cost_matrix(zs, ws, p);
  const auto sol = solve_assignment(cost, n);
  const double scale = std::max(1.0, *std::max_element(cost.begin(), cost.end()));
  if (sol.min_reduced_cost < -1e-9 * scale) fail(ErrorKind::NonConvergence, "assignment dual certificate failed");
  TransportResult r;
  r.method = TransportMethod::Assignment;
  r.matching = sol.row_to_col;
  r.distance = detail::root_p(std::max(0.0, sol.total) / static_cast<double>(n), p);
  return r;
}

inline TransportResult wp_assignment_plane(const AtomicMeasure& a, const AtomicMeasure& b, double p) {
  return wp_assignment_plane(a.atoms(), b.atoms(), p);
}

/// Exhaustive minimum over all n! pairings (n <= 8). Test oracle.
inline TransportResult wp_bruteforce(const std::vector<cplx>& zs, const std::vector<cplx>& ws, double p) {
  detail::check_p(p);
  if (zs.size() != ws.size()) fail(ErrorKind::SizeMismatch, "wp_bruteforce needs equal sizes");
  require(!zs.empty(), ErrorKind::SizeMismatch, "wp_bruteforce needs nonempty inputs");
  if (zs.size() > kBruteForceBudget) fail(ErrorKind::BudgetExceeded, "brute force limited to 8 atoms");
  const std::size_t n = zs.size();
  const auto cost = detail::cost_matrix(zs, ws, p);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> best_perm = perm;
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += cost[i * n + perm[i]];
    if (s < best) {
      best = s;
      best_perm = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  TransportResult r;
  r.method = TransportMethod::BruteForce;
  r.matching = best_perm;
  r.distance = detail::root_p(best / static_cast<double>(n), p);
  return r;
}

/// Best cyclic shift of the argument-sorted matching between two sets of
/// points on (or near) the unit circle. An upper bound on W_p in general,
/// intended for n beyond the assignment budget; O(n^2).
inline TransportResult wp_cyclic_shift(const std::vector<cplx>& zs, const std::vector<cplx>& ws, double p) {
  detail::check_p(p);
  if (zs.size() != ws.size()) fail(ErrorKind::SizeMismatch, "wp_cyclic_shift needs equal sizes");
  require(!zs.empty(), ErrorKind::SizeMismatch, "wp_cyclic_shift needs nonempty inputs");
  const std::size_t n = zs.size();
  auto by_arg = [](const std::vector<cplx>& pts) {
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return arg_2pi(pts[a]) < arg_2pi(pts[b]); });
    return idx;
  };
  const auto iz = by_arg(zs), iw = by_arg(ws);
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_shift = 0;
  for (std::size_t s = 0; s < n; ++s) {
    double c = 0.0;
    for (std::size_t i = 0; i < n && c < best; ++i) c += detail::pow_cost(std::abs(zs[iz[i]] - ws[iw[(i + s) % n]]), p);
    if (c < best) {
      best = c;
      best_shift = s;
    }
  }
  TransportResult r;
  r.method = TransportMethod::CyclicShift;
  r.matching.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) r.matching[iz[i]] = iw[(i + best_shift) % n];
  r.distance = detail::root_p(best / static_cast<double>(n), p);
  return r;
}

// -------------------------------------------- scalar laws, exact in 1D

/// A chart s -> x(s) with x(s) dF = weight(s) ds, chosen so that weight is
/// smooth (square-root edges of the compact laws are absorbed).
struct ScalarChart {
  LimitLaw law;
  double s_lo = 0.0, s_hi = 0.0;

  explicit ScalarChart(const LimitLaw& l) : law(l) {
    law.validate();
    require(law.scalar(), ErrorKind::UnsupportedLaw, "scalar chart needs a scalar law");
    if (law.tag == LawTag::StdGaussian) {
      s_lo = -40.0;
      s_hi = 40.0;
    } else {
      s_lo = 0.0;
      s_hi = kPi;
    }
  }

  double x_of(double s) const {
    switch (law.tag) {
      case LawTag::Semicircle: {
        const double h = std::sin(0.5 * s);
        return -2.0 + 4.0 * h * h;
      }
      case LawTag::MarchenkoPastur:
        return detail::MpChart(law.rho).x_of(s);
      default:
        return s;
    }
  }

  double s_of(double x) const {
    switch (law.tag) {
      case LawTag::Semicircle:
        return std::acos(std::clamp(-0.5 * x, -1.0, 1.0));
      case LawTag::MarchenkoPastur:
        return detail::MpChart(law.rho).phi_of(x);
      default:
        return std::clamp(x, s_lo, s_hi);
    }
  }

  double weight(double s) const {
    switch (law.tag) {
      case LawTag::Semicircle: {
        const double t = std::sin(s);
        return 2.0 / kPi * t * t;
      }
      case LawTag::MarchenkoPastur:
        return detail::MpChart(law.rho).integrand(s);
      default:
        return law_density(law, s);
    }
  }
};

/// Chart coordinates of the quantiles Q(j/n), j = 0..n, for one (law, n).
/// Building this is the expensive part of a distance-to-law evaluation, so
/// experiments build one table per size and share it across reps.
struct QuantileTable {
  LimitLaw law;
  std::size_t n = 0;
  std::vector<double> s;  // n + 1 breakpoints in chart coordinates
};

inline QuantileTable make_quantile_table(const LimitLaw& law, std::size_t n) {
  require(n >= 1, ErrorKind::InvalidSpec, "quantile table needs n >= 1");
  const ScalarChart chart(law);
  QuantileTable t{law, n, std::vector<double>(n + 1)};
  t.s[0] = chart.s_lo;
  t.s[n] = chart.s_hi;
  for (std::size_t j = 1; j < n; ++j) {
    const double u = static_cast<double>(j) / static_cast<double>(n);
    if (law.tag == LawTag::MarchenkoPastur) {
      const detail::MpChart mp(law.rho);
      t.s[j] = detail::invert_monotone([&](double q) { return mp.cdf_phi(q); }, [&](double q) { return mp.integrand(q); },
                                       u, 0.0, kPi, kPi * u);
    } else {
      t.s[j] = chart.s_of(law_quantile(law, u));
    }
  }
  return t;
}

/// W_p from the sorted sample xs to a scalar law by the monotone coupling:
///   W_p^p = sum_j int_{(j-1)/n}^{j/n} |x_(j) - Q(u)|^p du,
/// each term evaluated as an integral over the law's chart between the
/// breakpoints, split at x_(j), by adaptive Simpson (tolerance 1e-12 per term).
inline TransportResult wp_quantile_vs_law(const std::vector<double>& sample, const QuantileTable& table, double p) {
  detail::check_p(p);
  if (sample.size() != table.n) fail(ErrorKind::SizeMismatch, "quantile table size must match the sample");
  std::vector<double> xs = sample;
  std::sort(xs.begin(), xs.end());
  const ScalarChart chart(table.law);
  double total = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const double x = xs[j];
    const double lo = table.s[j], hi = table.s[j + 1];
    if (!(hi > lo)) continue;
    auto f = [&](double s) { return detail::pow_cost(std::abs(x - chart.x_of(s)), p) * chart.weight(s); };
    const double split = chart.s_of(x);
    // Gaussian tails span many units; subdivide so the bulk is not skipped.
    const int min_depth = table.law.tag == LawTag::StdGaussian ? 6 : 2;
    if (split > lo && split < hi)
      total += quad::adaptive_simpson(f, lo, split, 1e-12, min_depth) + quad::adaptive_simpson(f, split, hi, 1e-12, min_depth);
    else
      total += quad::adaptive_simpson(f, lo, hi, 1e-12, min_depth);
  }
  TransportResult r;
  r.method = TransportMethod::QuantileQuadrature;
  r.distance = detail::root_p(std::max(0.0, total), p);
  return r;
}

inline TransportResult wp_quantile_vs_law(const std::vector<double>& xs, const LimitLaw& law, double p) {
  require(law.scalar(), ErrorKind::UnsupportedLaw, "wp_quantile_vs_law needs a scalar law");
  return wp_quantile_vs_law(xs, make_quantile_table(law, xs.size()), p);
}

// ---------------------------------------------------- planar laws

namespace detail {

/// Mean of |z - atom|^p over the polar cell r in [r0,r1], theta in
/// [t0,t1], weighted by the uniform disc density 1/pi; Gauss-Legendre in
/// both directions, with the angular range split at the atom's argument.
inline double disc_cell_cost(double r0, double r1, double t0, double t1, cplx atom, double p) {
  const auto& g = quad::gauss_legendre(16);
  const double ta = std::arg(atom);
  auto angular = [&](double a0, double a1) {
    double s = 0.0;
    const double hr = 0.5 * (r1 - r0), ht = 0.5 * (a1 - a0);
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double r = r0 + hr * (g.x[i] + 1.0);
      for (std::size_t k = 0; k < g.x.size(); ++k) {
        const double t = a0 + ht * (g.x[k] + 1.0);
        s += g.w[i] * g.w[k] * pow_cost(std::abs(std::polar(r, t) - atom), p) * r;
      }
    }
    return s * hr * ht / kPi;
  };
  // place the atom's angle inside [t0, t1] when it is there modulo 2 pi
  double split = ta;
  while (split < t0) split += kTwoPi;
  while (split > t1) split -= kTwoPi;
  if (atom != cplx(0.0, 0.0) && split > t0 && split < t1) return angular(t0, split) + angular(split, t1);
  return angular(t0, t1);
}

}  // namespace detail

/// Upper bound on W_p(nu_n, law) for the roots-of-unity (circle) or spiral
/// lattice (disc) discretization, from an explicit coupling: each root of
/// unity takes the arc of width 2 pi / n centred on it; each lattice atom in
/// ring k takes an annular sector r in [k, k+1]/sqrt(n) of angular width
/// 2 pi / (2k+1) centred on it (ring 0 takes the inner disc); an incomplete
/// outer ring splits the annulus [K/sqrt(n), 1] into equal sectors taken in
/// argument order. Cell costs come from 64-point-per-cell Gauss rules.
inline double planar_tail_bound(const LimitLaw& law, std::size_t n, double p) {
  detail::check_p(p);
  require(n >= 1, ErrorKind::InvalidSpec, "planar tail bound needs n >= 1");
  const double nn = static_cast<double>(n);
  if (law.tag == LawTag::UniformCircle) {
    const auto& g = quad::gauss_legendre(32);
    const double h = kPi / nn;  // half arc
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) {
      const double t = 0.5 * h * (g.x[i] + 1.0);
      s += g.w[i] * detail::pow_cost(2.0 * std::sin(0.5 * t), p);
    }
    // two half arcs per atom, n atoms, density 1/(2 pi)
    const double per_atom = 2.0 * 0.5 * h * s / kTwoPi;
    return detail::root_p(nn * per_atom, p);
  }
  require(law.tag == LawTag::UniformDisc, ErrorKind::UnsupportedLaw, "planar tail bound needs circle or disc");
  const double sq = std::sqrt(nn);
  double total = detail::disc_cell_cost(0.0, 1.0 / sq, 0.0, kTwoPi, cplx(0.0, 0.0), p);
  std::size_t placed = 1;
  for (std::size_t k = 1; placed < n; ++k) {
    const std::size_t count = 2 * k + 1;
    const double rk = static_cast<double>(k) / sq;
    if (placed + count <= n) {
      // full ring: all cells congruent
      const double w = kTwoPi / static_cast<double>(count);
      const cplx atom = std::polar(rk, w);
      total += static_cast<double>(count) * detail::disc_cell_cost(rk, static_cast<double>(k + 1) / sq, 0.5 * w, 1.5 * w, atom, p);
      placed += count;
    } else {
      const std::size_t r = n - placed;
      const double w = kTwoPi / static_cast<double>(r);
      for (std::size_t j = 1; j <= r; ++j) {
        const cplx atom = std::polar(rk, kTwoPi * static_cast<double>(j) / static_cast<double>(count));
        total += detail::disc_cell_cost(rk, 1.0, w * static_cast<double>(j - 1), w * static_cast<double>(j), atom, p);
      }
      placed = n;
    }
  }
  return detail::root_p(total, p);
}

struct PlanarDistance {
  TransportResult exact_to_discretization;
  double analytic_tail = 0.0;
  double bound() const { return exact_to_discretization.distance + analytic_tail; }
};

/// Triangle-inequality route to a planar law: exact W_p to the n-point
/// discretization plus the coupling bound on W_p(nu_n, law).
inline PlanarDistance wp_to_planar_law(const std::vector<cplx>& zs, const LimitLaw& law, double p) {
  require(law.tag == LawTag::UniformCircle || law.tag == LawTag::UniformDisc, ErrorKind::UnsupportedLaw,
          "wp_to_planar_law needs circle or disc");
  const auto nu = discretize_law(law, zs.size());
  PlanarDistance d;
  d.exact_to_discretization = wp_assignment_plane(zs, nu.atoms(), p);
  d.analytic_tail = planar_tail_bound(law, zs.size(), p);
  return d;
}

// ------------------------------------------------------- dual bound

/// Kantorovich-Rubinstein lower bound on W_1: the best mean difference over
/// a family of 1-Lipschitz test functions, namely +-|z - c| for centres c at
/// every atom and on a trial_count-point grid over the bounding box, and the
/// linear functionals Re(e^{-i a} z) for 16 directions a.
inline double w1_dual_lower_bound(const AtomicMeasure& mu, const AtomicMeasure& nu, std::size_t trial_count) {
  std::vector<cplx> centres = mu.atoms();
  centres.insert(centres.end(), nu.atoms().begin(), nu.atoms().end());
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (auto z : centres) {
    xlo = std::min(xlo, z.real());
    xhi = std::max(xhi, z.real());
    ylo = std::min(ylo, z.imag());
    yhi = std::max(yhi, z.imag());
  }
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(trial_count))));
  for (std::size_t a = 0; a < side && centres.size() < mu.size() + nu.size() + trial_count; ++a)
    for (std::size_t b = 0; b < side; ++b) {
      const double fx = side > 1 ? static_cast<double>(a) / static_cast<double>(side - 1) : 0.5;
      const double fy = side > 1 ? static_cast<double>(b) / static_cast<double>(side - 1) : 0.5;
      centres.emplace_back(xlo + fx * (xhi - xlo), ylo + fy * (yhi - ylo));
    }
  auto mean_of = [](const AtomicMeasure& m, auto&& f) {
    double s = 0.0;
    for (auto z : m.atoms()) s += f(z);
    return s / static_cast<double>(m.size());
  };
  double best = 0.0;
  for (auto c : centres) {
    auto f = [c](cplx z) { return std::abs(z - c); };
    best = std::max(best, std::abs(mean_of(mu, f) - mean_of(nu, f)));
  }
  for (int k = 0; k < 16; ++k) {
    const cplx dir = std::polar(1.0, -kTwoPi * k / 16.0);
    auto f = [dir](cplx z) { return (dir * z).real(); };
    best = std::max(best, std::abs(mean_of(mu, f) - mean_of(nu, f)));
  }
  return best;
}

}  // namespace rmt
