// rmtlab - random matrix spectra, limiting laws and Wasserstein rates.
//
// experiments.hpp: seeded Monte Carlo orchestration. Every (size, rep) cell
// draws from its own substream, so results do not depend on thread count or
// scheduling; reductions run in rep order.
#pragma once

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "rmtlab/dpp.hpp"
#include "rmtlab/ensembles.hpp"
#include "rmtlab/limits.hpp"
#include "rmtlab/stats.hpp"
#include "rmtlab/transport.hpp"

namespace rmt {

// ------------------------------------------------------------ parallelism

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for i in [0, count). The exception from the lowest failing
/// index is rethrown after all workers finish.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr err;
  std::size_t err_index = count;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (i < err_index) {
          err_index = i;
          err = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------- configuration

enum class TargetKind { Auto, Law, Discretization, PooledMean };

inline std::string to_string(TargetKind t) {
  switch (t) {
    case TargetKind::Auto: return "auto";
    case TargetKind::Law: return "law";
    case TargetKind::Discretization: return "discretization";
    case TargetKind::PooledMean: return "pooled-mean";
  }
  return "?";
}

struct ExperimentConfig {
  EnsembleSpec ensemble;
  std::vector<std::size_t> sizes;
  std::size_t reps = 40;
  double p = 2.0;
  TargetKind target = TargetKind::Auto;
  std::optional<LimitLaw> law;  // required for Law / Discretization targets
  std::uint64_t seed = 1;
  unsigned threads = 0;         // 0 = available parallelism
  double budget_seconds = 0.0;  // 0 = unlimited
  std::size_t pool_reps = 200;  // pooled-mean estimator size

  void validate() const {
    require(!sizes.empty(), ErrorKind::InvalidSpec, "experiment needs at least one size");
    for (std::size_t i = 1; i < sizes.size(); ++i)
      require(sizes[i] > sizes[i - 1], ErrorKind::InvalidSpec, "sizes must be strictly increasing");
    require(reps >= 1, ErrorKind::InvalidSpec, "reps must be >= 1");
    require(p >= 1.0 && p <= 2.0, ErrorKind::InvalidSpec, "p must lie in [1, 2]");
    require(budget_seconds >= 0.0, ErrorKind::InvalidSpec, "budget must be >= 0");
    if (target == TargetKind::Law || target == TargetKind::Discretization)
      require(law.has_value(), ErrorKind::InvalidSpec, "law/discretization target needs a law");
    if (target == TargetKind::PooledMean)
      require(pool_reps >= 50 && pool_reps % 2 == 0, ErrorKind::InvalidSpec, "pool_reps must be even and >= 50");
    if (law) law->validate();
    for (auto n : sizes) ensemble.at_size(n).validate();
  }
};

/// Default limit law of an ensemble at a given size.
inline LimitLaw default_law(const EnsembleSpec& spec) {
  switch (spec.kind) {
    case EnsembleKind::GUE:
    case EnsembleKind::GOE:
    case EnsembleKind::WignerGeneric:
      return LimitLaw::semicircle();
    case EnsembleKind::Wishart:
      return LimitLaw::marchenko_pastur(static_cast<double>(spec.n) / static_cast<double>(spec.m));
    case EnsembleKind::Haar:
    case EnsembleKind::HaarPower:
      return LimitLaw::uniform_circle();
    case EnsembleKind::Ginibre:
      return LimitLaw::uniform_disc();
    case EnsembleKind::QuantumSpinGlass:
      return LimitLaw::std_gaussian();
    case EnsembleKind::RandomizedSum:
    case EnsembleKind::Compression:
      break;
  }
  fail(ErrorKind::UnsupportedLaw, "sums and compressions have no closed-form limit; use the pooled-mean target");
}

inline TargetKind resolve_target(const ExperimentConfig& cfg) {
  if (cfg.target != TargetKind::Auto) return cfg.target;
  if (cfg.ensemble.kind == EnsembleKind::RandomizedSum || cfg.ensemble.kind == EnsembleKind::Compression)
    return TargetKind::PooledMean;
  return TargetKind::Law;
}

// ------------------------------------------------------------ mean measure

struct MeanMeasure {
  std::vector<double> pooled;  // sorted, reps * dim atoms
  double split_half = 0.0;     // W_p between the two half pools
};

/// Pools the real spectra of `reps` draws (stream derived from `seed`) into
/// one equal-weight measure; the split-half distance is an error estimate.
inline MeanMeasure mean_measure_estimate(const EnsembleSpec& spec, std::size_t reps, std::uint64_t seed, double p = 2.0,
                                         unsigned threads = 0) {
  spec.validate();
  require(spec.hermitian(), ErrorKind::InvalidSpec, "mean measure needs a real spectrum");
  require(reps >= 50 && reps % 2 == 0, ErrorKind::InvalidSpec, "mean measure needs an even rep count >= 50");
  std::vector<std::vector<double>> draws(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    auto rng = stream_for(seed, spec, r);
    draws[r] = sample_spectrum(spec, rng).real_parts();
  });
  MeanMeasure m;
  std::vector<double> first, second;
  for (std::size_t r = 0; r < reps; ++r) {
    auto& half = r % 2 == 0 ? first : second;
    half.insert(half.end(), draws[r].begin(), draws[r].end());
  }
  m.split_half = wp_quantile_1d(first, second, p);
  m.pooled = std::move(first);
  m.pooled.insert(m.pooled.end(), second.begin(), second.end());
  std::sort(m.pooled.begin(), m.pooled.end());
  return m;
}

/// Seed of the pooled-mean stream, independent of the sampling stream.
inline std::uint64_t pooled_seed(std::uint64_t seed) { return mix64(seed ^ fnv1a64("pooled-mean")); }

// ------------------------------------------------------------ rate scans

struct RateRow {
  std::size_t n = 0;
  std::size_t rep = 0;
  double distance = 0.0;
  double tail_bound = 0.0;
  double runtime_ms = 0.0;
};

struct SizeSummary {
  std::size_t n = 0;
  std::size_t count = 0;
  double mean_distance = 0.0;
  double stderr_distance = 0.0;
  double mean_tail = 0.0;
  double target_error = 0.0;  // split-half error of a pooled target
};

struct RateReport {
  std::string ensemble;
  std::string target;
  double p = 2.0;
  std::vector<RateRow> rows;
  std::vector<SizeSummary> sizes;
  std::optional<stats::LinearFit> fit;  // absent for a single size
  bool budget_exhausted = false;
};

namespace detail {

/// Per-size state shared by all reps of one size.
struct PreparedTarget {
  TargetKind kind = TargetKind::Law;
  LimitLaw law;
  std::optional<QuantileTable> table;
  std::vector<double> reference;  // scalar discretization or pooled mean
  std::vector<cplx> planar;       // planar discretization
  double tail = 0.0;
  double target_error = 0.0;
};

inline PreparedTarget prepare_target(const ExperimentConfig& cfg, const EnsembleSpec& spec) {
  PreparedTarget t;
  t.kind = resolve_target(cfg);
  const std::size_t dim = spec.matrix_dim();
  if (t.kind == TargetKind::PooledMean) {
    const auto mm = mean_measure_estimate(spec, cfg.pool_reps, pooled_seed(cfg.seed), cfg.p, cfg.threads);
    t.reference = mm.pooled;
    t.target_error = mm.split_half;
    return t;
  }
  t.law = cfg.law ? *cfg.law : default_law(spec);
  if (t.kind == TargetKind::Law) {
    if (t.law.scalar()) {
      t.table = make_quantile_table(t.law, dim);
    } else {
      t.planar = discretize_law(t.law, dim).atoms();
      t.tail = planar_tail_bound(t.law, dim, cfg.p);
    }
  } else {
    const auto nu = discretize_law(t.law, dim);
    if (t.law.scalar())
      t.reference = nu.real_parts();
    else
      t.planar = nu.atoms();
  }
  return t;
}

inline double distance_to_target(const AtomicMeasure& mu, const PreparedTarget& t, double p) {
  if (t.kind == TargetKind::PooledMean) return wp_quantile_1d(mu.real_parts(), t.reference, p);
  if (!t.planar.empty()) return wp_assignment_plane(mu.atoms(), t.planar, p).distance;
  if (t.table) return wp_quantile_vs_law(mu.real_parts(), *t.table, p).distance;
  return wp_sorted_1d(mu.real_parts(), t.reference, p).distance;
}

}  // namespace detail

/// Samples every (size, rep) cell, measures the distance to the configured
/// target and fits log(mean distance) against log(size). For planar laws
/// `distance` is the exact distance to the discretization and `tail_bound`
/// the bound on its distance to the law; the fit uses `distance`.
inline RateReport run_distance_scan(const ExperimentConfig& cfg) {
  cfg.validate();
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  auto over_budget = [&] {
    return cfg.budget_seconds > 0.0 && std::chrono::duration<double>(clock::now() - start).count() > cfg.budget_seconds;
  };
  RateReport rep;
  rep.ensemble = cfg.ensemble.tag();
  rep.target = to_string(resolve_target(cfg));
  rep.p = cfg.p;
  for (std::size_t n : cfg.sizes) {
    if (over_budget()) {
      rep.budget_exhausted = true;
      break;
    }
    const EnsembleSpec spec = cfg.ensemble.at_size(n);
    const auto target = detail::prepare_target(cfg, spec);
    std::vector<std::optional<RateRow>> cells(cfg.reps);
    std::atomic<bool> skipped{false};
    parallel_for(cfg.reps, cfg.threads, [&](std::size_t r) {
      if (over_budget()) {
        skipped = true;
        return;
      }
      const auto t0 = clock::now();
      auto rng = stream_for(cfg.seed, spec, r);
      const auto mu = sample_spectrum(spec, rng);
      RateRow row;
      row.n = n;
      row.rep = r;
      row.distance = detail::distance_to_target(mu, target, cfg.p);
      row.tail_bound = target.tail;
      row.runtime_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
      cells[r] = row;
    });
    SizeSummary s;
    s.n = n;
    s.target_error = target.target_error;
    std::vector<double> ds;
    for (auto& c : cells)
      if (c) {
        rep.rows.push_back(*c);
        ds.push_back(c->distance);
        s.mean_tail += c->tail_bound;
      }
    if (skipped) rep.budget_exhausted = true;
    if (ds.empty()) break;
    const auto m = stats::moments(ds);
    s.count = ds.size();
    s.mean_distance = m.mean;
    s.stderr_distance = m.stderr_mean();
    s.mean_tail /= static_cast<double>(ds.size());
    rep.sizes.push_back(s);
    if (rep.budget_exhausted) break;
  }
  if (rep.sizes.size() >= 2) {
    std::vector<double> ns, ds;
    for (const auto& s : rep.sizes) {
      ns.push_back(static_cast<double>(s.n));
      ds.push_back(s.mean_distance);
    }
    rep.fit = stats::fit_loglog_rate(ns, ds);
  }
  return rep;
}

/// Mean exact W_p distance from the spectrum of M^m (M Haar in `group`,
/// size n) to the roots of unity, for each exponent m.
inline std::vector<SizeSummary> power_scan(Group group, std::size_t n, const std::vector<std::size_t>& ms,
                                           std::size_t reps, std::uint64_t seed, double p = 2.0, unsigned threads = 0) {
  std::vector<SizeSummary> out;
  for (std::size_t m : ms) {
    EnsembleSpec spec;
    spec.kind = EnsembleKind::HaarPower;
    spec.group = group;
    spec.n = n;
    spec.m = m;
    spec.validate();
    const auto nu = discretize_law(LimitLaw::uniform_circle(), spec.matrix_dim()).atoms();
    std::vector<double> ds(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
      // the exponent joins the stream path so that each m draws afresh
      auto rng = RngStream(seed, spec.tag() + "-m" + std::to_string(m), n, r);
      ds[r] = wp_assignment_plane(sample_spectrum(spec, rng).atoms(), nu, p).distance;
    });
    const auto mo = stats::moments(ds);
    SizeSummary s;
    s.n = m;
    s.count = reps;
    s.mean_distance = mo.mean;
    s.stderr_distance = mo.stderr_mean();
    out.push_back(s);
  }
  return out;
}

/// E|s - 1| for s = sqrt(chi^2_k / k), by Gauss-Legendre against the chi density.
inline double chi_abs_deviation(std::size_t k) {
  const double kk = static_cast<double>(k);
  const double hi = 1.0 + 14.0 / std::sqrt(kk);
  const double lognorm = std::log(2.0) + 0.5 * kk * std::log(0.5 * kk) - std::lgamma(0.5 * kk);
  double acc = 0.0;
  auto add = [&](double lo, double up) {
    const quad::NodeSet nodes = quad::composite_nodes(lo, up, 64);
    for (std::size_t i = 0; i < nodes.x.size(); ++i) {
      const double x = nodes.x[i];
      acc += nodes.w[i] * std::abs(x - 1.0) * std::exp(lognorm + (kk - 1.0) * std::log(x) - 0.5 * kk * x * x);
    }
  };
  add(0.0, 1.0);
  add(1.0, hi);
  return acc;
}

/// Mean W_p from the spin-glass spectrum to the standard Gaussian at one
/// qubit count. `mean_distance` is the plain Monte Carlo mean; `adjusted`
/// subtracts the scale control variate W_p(N(0,1), N(0,s^2)) with
/// s^2 = tr(H^2)/2^n = |x|^2/(9n) and adds back its exact mean.
struct QsgSummary {
  std::size_t qubits = 0;
  std::size_t count = 0;
  double mean_distance = 0.0;
  double stderr_distance = 0.0;
  double adjusted = 0.0;
  double stderr_adjusted = 0.0;
};

/// Rep r uses one coefficient pool for every size: coupling (j, a, b)
/// always reads the same normal, so differences between sizes are estimated
/// with common random numbers.
inline std::vector<QsgSummary> qsg_scan(const std::vector<std::size_t>& qubits, std::size_t reps, std::uint64_t seed,
                                        double p = 1.0, unsigned threads = 0) {
  require(!qubits.empty() && reps >= 2, ErrorKind::InvalidSpec, "qsg_scan needs sizes and reps >= 2");
  require(p >= 1.0 && p <= 2.0, ErrorKind::InvalidSpec, "p must lie in [1, 2]");
  const std::size_t top = *std::max_element(qubits.begin(), qubits.end());
  // (E|g|^p)^{1/p} for a standard normal g
  const double gp = std::pow(std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(kPi), 1.0 / p);
  std::vector<QsgSummary> out;
  for (std::size_t nq : qubits) {
    const auto table = make_quantile_table(LimitLaw::std_gaussian(), std::size_t{1} << nq);
    std::vector<double> ds(reps), adj(reps);
    parallel_for(reps, threads, [&](std::size_t r) {
      auto rng = RngStream(seed, "qsg-pool", top, r);
      std::vector<double> pool(9 * top);
      for (double& v : pool) v = rng.normal();
      std::vector<double> x(9 * nq);
      double sq = 0.0;
      for (std::size_t j = 1; j <= nq; ++j)
        for (int a = 1; a <= 3; ++a)
          for (int b = 1; b <= 3; ++b) {
            const double v = pool[(j - 1) * 9 + static_cast<std::size_t>(a - 1) * 3 + static_cast<std::size_t>(b - 1)];
            x[qsg_index(a, b, j, nq)] = v;
            sq += v * v;
          }
      ds[r] = wp_quantile_vs_law(hermitian_eigenvalues(qsg_hamiltonian(x, nq)).values(), table, p).distance;
      adj[r] = ds[r] - gp * std::abs(std::sqrt(sq / (9.0 * static_cast<double>(nq))) - 1.0);
    });
    const auto mo = stats::moments(ds);
    const auto ma = stats::moments(adj);
    QsgSummary s;
    s.qubits = nq;
    s.count = reps;
    s.mean_distance = mo.mean;
    s.stderr_distance = mo.stderr_mean();
    s.adjusted = ma.mean + gp * chi_abs_deviation(9 * nq);
    s.stderr_adjusted = ma.stderr_mean();
    out.push_back(s);
  }
  return out;
}

// --------------------------------------------------------------- rigidity

enum class RigidityEnsemble { GUE, HaarU };

struct RigidityProfile {
  std::vector<double> msd;  // msd[j-1] = mean |lambda_j - gamma_j|^2
  double bulk = 0.0;        // mean of msd over j in [n/4, 3n/4]
};

inline std::pair<std::size_t, std::size_t> bulk_range(std::size_t n) {
  const std::size_t lo = std::max<std::size_t>(1, (n + 3) / 4);
  const std::size_t hi = std::max(lo, (3 * n) / 4);
  return {lo, hi};
}

/// Mean squared deviation of each ordered eigenvalue from its predicted
/// location: semicircle quantiles j/n for GUE, angles 2 pi j/n for Haar U
/// (eigenangles sorted in (0, 2 pi]).
inline RigidityProfile rigidity_profile(RigidityEnsemble which, std::size_t n, std::size_t reps, std::uint64_t seed,
                                        unsigned threads = 0) {
  require(n >= 1 && n <= 1024, ErrorKind::InvalidSpec, "rigidity needs 1 <= n <= 1024");
  require(reps >= 1, ErrorKind::InvalidSpec, "rigidity needs reps >= 1");
  EnsembleSpec spec;
  spec.kind = which == RigidityEnsemble::GUE ? EnsembleKind::GUE : EnsembleKind::Haar;
  spec.group = Group::U;
  spec.n = n;
  std::vector<double> gamma(n);
  for (std::size_t j = 1; j <= n; ++j)
    gamma[j - 1] = which == RigidityEnsemble::GUE ? law_quantile(LimitLaw::semicircle(), static_cast<double>(j) / n)
                                                  : kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  std::vector<std::vector<double>> dev(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    auto rng = stream_for(seed, spec, r);
    const auto mu = sample_spectrum(spec, rng);
    std::vector<double> v;
    if (which == RigidityEnsemble::GUE) {
      v = mu.real_parts();
    } else {
      for (auto z : mu.atoms()) v.push_back(arg_2pi(z));
    }
    std::sort(v.begin(), v.end());
    dev[r].resize(n);
    for (std::size_t j = 0; j < n; ++j) dev[r][j] = (v[j] - gamma[j]) * (v[j] - gamma[j]);
  });
  RigidityProfile prof;
  prof.msd.assign(n, 0.0);
  for (const auto& d : dev)
    for (std::size_t j = 0; j < n; ++j) prof.msd[j] += d[j];
  for (double& m : prof.msd) m /= static_cast<double>(reps);
  const auto [lo, hi] = bulk_range(n);
  for (std::size_t j = lo; j <= hi; ++j) prof.bulk += prof.msd[j - 1];
  prof.bulk /= static_cast<double>(hi - lo + 1);
  return prof;
}

// ------------------------------------------------------ counting functions

inline std::size_t count_upto(const std::vector<double>& sorted, double x) {
  return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin());
}

/// Eigenangles in (0, 2 pi], sorted.
inline std::vector<double> eigenangles(const AtomicMeasure& mu) {
  std::vector<double> a;
  a.reserve(mu.size());
  for (auto z : mu.atoms()) a.push_back(arg_2pi(z));
  std::sort(a.begin(), a.end());
  return a;
}

struct TailPoint {
  double t = 0.0;
  double exceedance = 0.0;
  double envelope = 0.0;
};

struct CountingTailReport {
  double x = 0.0;
  std::size_t reps = 0;
  double kernel_mean = 0.0, kernel_variance = 0.0;
  double empirical_mean = 0.0, empirical_variance = 0.0;
  double se_mean = 0.0, se_variance = 0.0;
  std::vector<TailPoint> tail;
  std::size_t violations = 0;

  double mean_z() const { return se_mean > 0 ? std::abs(empirical_mean - kernel_mean) / se_mean : (empirical_mean == kernel_mean ? 0.0 : INFINITY); }
  double variance_z() const {
    return se_variance > 0 ? std::abs(empirical_variance - kernel_variance) / se_variance
                           : (std::abs(empirical_variance - kernel_variance) < 1e-9 ? 0.0 : INFINITY);
  }
};

/// Empirical law of N_x over `reps` draws against the kernel's mean and
/// variance and the Bernstein envelope 2 exp(-t^2/(2 Var + t)). x is the
/// normalized eigenvalue for GUE and the angle in (0, 2 pi] for Haar U.
inline CountingTailReport counting_tail_experiment(RigidityEnsemble which, std::size_t n, double x, std::size_t reps,
                                                   std::uint64_t seed, unsigned threads = 0) {
  require(reps >= 2, ErrorKind::InsufficientReps, "counting tail needs reps >= 2");
  EnsembleSpec spec;
  spec.kind = which == RigidityEnsemble::GUE ? EnsembleKind::GUE : EnsembleKind::Haar;
  spec.group = Group::U;
  spec.n = n;
  KernelSpec ks;
  ks.n = n;
  double kx = x;
  if (which == RigidityEnsemble::GUE) {
    ks.family = KernelFamily::HermiteGUE;
    kx = gue_coordinate_map(n, x);
  } else {
    ks.family = KernelFamily::DysonCircle;
    require(x > 0.0 && x <= kTwoPi, ErrorKind::OutOfRange, "arc endpoint must lie in (0, 2 pi]");
  }
  CountingTailReport rep;
  rep.x = x;
  rep.reps = reps;
  rep.kernel_mean = counting_mean(ks, kx);
  rep.kernel_variance = std::max(0.0, counting_variance(ks, kx));
  std::vector<double> counts(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    auto rng = stream_for(seed, spec, r);
    const auto mu = sample_spectrum(spec, rng);
    std::vector<double> v = which == RigidityEnsemble::GUE ? mu.real_parts() : eigenangles(mu);
    std::sort(v.begin(), v.end());
    counts[r] = static_cast<double>(count_upto(v, x));
  });
  const auto m = stats::moments(counts);
  rep.empirical_mean = m.mean;
  rep.empirical_variance = m.variance;
  rep.se_mean = m.stderr_mean();
  rep.se_variance = stats::stderr_variance(counts);
  for (double t = 0.5;; t += 0.5) {
    std::size_t exceed = 0;
    for (double c : counts)
      if (std::abs(c - rep.kernel_mean) > t) ++exceed;
    TailPoint pt{t, static_cast<double>(exceed) / static_cast<double>(reps), bernstein_tail(rep.kernel_variance, t)};
    if (pt.exceedance > pt.envelope) ++rep.violations;
    rep.tail.push_back(pt);
    if (exceed == 0) break;
  }
  return rep;
}

// ---------------------------------------------------------------- Rains

/// Sizes of the independent blocks: (n mod m) blocks of ceil(n/m), the
/// rest floor(n/m).
inline std::vector<std::size_t> rains_block_sizes(std::size_t n, std::size_t m) {
  require(m >= 1 && m <= n, ErrorKind::InvalidSpec, "Rains blocks need 1 <= m <= n");
  std::vector<std::size_t> s;
  const std::size_t q = n / m, r = n % m;
  for (std::size_t i = 0; i < m; ++i) s.push_back(i < r ? q + 1 : q);
  return s;
}

struct RainsArc {
  double x = 0.0;
  double statistic = 0.0;
  double threshold = 0.0;
  bool rejected = false;
};

struct RainsReport {
  std::size_t n = 0, m = 0, reps = 0;
  double level = 0.01;
  std::vector<RainsArc> arcs;
  bool passed() const {
    return std::none_of(arcs.begin(), arcs.end(), [](const RainsArc& a) { return a.rejected; });
  }
};

/// Two-sample KS test per arc between counting functions of M^m (M Haar
/// U(n)) and of a direct sum of independent Haar unitaries with the block
/// sizes above; Bonferroni-adjusted at `level`.
inline RainsReport rains_test(std::size_t n, std::size_t m, std::size_t reps, const std::vector<double>& arcs,
                              std::uint64_t seed, double level = 0.01, unsigned threads = 0) {
  require(!arcs.empty(), ErrorKind::InvalidSpec, "Rains test needs at least one arc");
  for (double x : arcs) require(x > 0.0 && x <= kTwoPi, ErrorKind::OutOfRange, "arc endpoint must lie in (0, 2 pi]");
  require(reps >= 2, ErrorKind::InsufficientReps, "Rains test needs reps >= 2");
  const auto blocks = rains_block_sizes(n, m);
  EnsembleSpec power;
  power.kind = EnsembleKind::HaarPower;
  power.group = Group::U;
  power.n = n;
  power.m = m;
  power.validate();
  std::vector<std::vector<double>> a(arcs.size(), std::vector<double>(reps)), b = a;
  parallel_for(reps, threads, [&](std::size_t r) {
    auto rng = RngStream(seed, "rains-power-m" + std::to_string(m), n, r);
    const auto ang = eigenangles(sample_spectrum(power, rng));
    for (std::size_t i = 0; i < arcs.size(); ++i) a[i][r] = static_cast<double>(count_upto(ang, arcs[i]));
    auto brng = RngStream(seed, "rains-blocks-m" + std::to_string(m), n, r);
    std::vector<double> all;
    for (std::size_t s : blocks) {
      const auto u = sample_haar(Group::U, s, brng);
      const auto e = eigenangles(AtomicMeasure::from(general_eigenvalues(u)));
      all.insert(all.end(), e.begin(), e.end());
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < arcs.size(); ++i) b[i][r] = static_cast<double>(count_upto(all, arcs[i]));
  });
  RainsReport rep;
  rep.n = n;
  rep.m = m;
  rep.reps = reps;
  rep.level = level;
  const double adjusted = level / static_cast<double>(arcs.size());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    RainsArc arc;
    arc.x = arcs[i];
    arc.statistic = stats::ks_statistic(a[i], b[i]);
    arc.threshold = stats::ks_critical(adjusted, reps, reps);
    arc.rejected = arc.statistic > arc.threshold;
    rep.arcs.push_back(arc);
  }
  return rep;
}

// --------------------------------------------------------- concentration

enum class Functional { WpToTarget, Trace, MaxEigenvalue };

inline std::string to_string(Functional f) {
  switch (f) {
    case Functional::WpToTarget: return "wp";
    case Functional::Trace: return "trace";
    case Functional::MaxEigenvalue: return "max-eigenvalue";
  }
  return "?";
}

struct TailEstimate {
  std::vector<double> t;
  std::vector<double> exceedance;  // P[|F - mean F| > t]
  double scale = 1.0;              // n^a
  double c = 0.0;                  // fitted rate in exp(-c n^a t^2)
  double curvature = 0.0;          // quadratic coefficient of log exceedance in n^a t^2
  double curvature_se = 0.0;
  std::vector<double> values;      // the functional per rep
  double mean = 0.0, sd = 0.0;

  bool monotone() const {
    for (std::size_t i = 1; i < exceedance.size(); ++i)
      if (exceedance[i] > exceedance[i - 1]) return false;
    return true;
  }
  /// No significant convexity of log exceedance as a function of t^2.
  bool log_concave() const { return curvature <= 2.0 * curvature_se; }
};

namespace detail {

/// Least squares y = b0 + b1 s + b2 s^2; returns (b1, b2, se(b2)).
inline std::array<double, 3> quadratic_fit(const std::vector<double>& s, const std::vector<double>& y) {
  const std::size_t n = s.size();
  if (n < 4) fail(ErrorKind::DegenerateFit, "quadratic fit needs at least four points");
  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), 3);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    x(r, 0) = 1.0;
    x(r, 1) = s[i];
    x(r, 2) = s[i] * s[i];
    v(r) = y[i];
  }
  const Eigen::MatrixXd xtx = x.transpose() * x;
  const Eigen::Vector3d beta = xtx.ldlt().solve(x.transpose() * v);
  const double sse = (v - x * beta).squaredNorm();
  const Eigen::Matrix3d cov = xtx.inverse() * (sse / static_cast<double>(n - 3));
  return {beta(1), beta(2), std::sqrt(std::max(0.0, cov(2, 2)))};
}

}  // namespace detail

/// Empirical exceedance P[|F - mean F| > t] on a grid t_k = k sd/4 (kept
/// while at least 10 reps exceed), with the Gaussian-regime rate c fitted
/// as -slope of log exceedance against n^a t^2.
inline TailEstimate concentration_tail_experiment(const EnsembleSpec& base, Functional f, std::size_t n,
                                                  std::size_t reps, std::uint64_t seed, double a = 2.0, double p = 2.0,
                                                  unsigned threads = 0) {
  require(reps >= 1000, ErrorKind::InsufficientReps, "tail estimation needs reps >= 1000");
  const EnsembleSpec spec = base.at_size(n);
  spec.validate();
  std::optional<QuantileTable> table;
  if (f == Functional::WpToTarget) {
    const auto law = default_law(spec);
    require(law.scalar(), ErrorKind::UnsupportedLaw, "W_p functional needs a scalar limit law");
    table = make_quantile_table(law, spec.matrix_dim());
  }
  TailEstimate te;
  te.values.resize(reps);
  parallel_for(reps, threads, [&](std::size_t r) {
    auto rng = stream_for(seed, spec, r);
    const ComplexMatrix mat = sample_matrix(spec, rng);
    if (f == Functional::Trace) {
      te.values[r] = mat.trace().real();
      return;
    }
    const auto mu = spectral_measure(mat, spec.hermitian() ? SpectrumPath::Hermitian : SpectrumPath::General);
    const auto xs = mu.real_parts();
    te.values[r] = f == Functional::MaxEigenvalue ? *std::max_element(xs.begin(), xs.end())
                                                  : wp_quantile_vs_law(xs, *table, p).distance;
  });
  const auto m = stats::moments(te.values);
  te.mean = m.mean;
  te.sd = std::sqrt(m.variance);
  te.scale = std::pow(static_cast<double>(n), a);
  std::vector<double> s, y;
  for (int k = 0;; ++k) {
    const double t = 0.25 * k * te.sd;
    std::size_t exceed = 0;
    for (double v : te.values)
      if (std::abs(v - te.mean) > t) ++exceed;
    if (k > 0 && exceed < 10) break;
    te.t.push_back(t);
    te.exceedance.push_back(static_cast<double>(exceed) / static_cast<double>(reps));
    if (k > 0) {
      s.push_back(te.scale * t * t);
      y.push_back(std::log(te.exceedance.back()));
    }
    if (te.sd == 0.0) break;
  }
  if (s.size() >= 2) te.c = -stats::linear_fit(s, y).slope;
  if (s.size() >= 4) {
    const auto q = detail::quadratic_fit(s, y);
    te.curvature = q[1];
    te.curvature_se = q[2];
  }
  return te;
}

/// sup_t |F_emp(t) - (2 Phi(t) - 1)| for the sample |values|: the one-sample
/// KS distance of |X| from the folded standard normal.
inline double folded_normal_ks(const std::vector<double>& values) {
  std::vector<double> a;
  for (double v : values) a.push_back(std::abs(v));
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = 2.0 * stats::normal_cdf(a[i]) - 1.0;
    d = std::max({d, std::abs(static_cast<double>(i + 1) / n - f), std::abs(static_cast<double>(i) / n - f)});
  }
  return d;
}

// --------------------------------------------------------- Lipschitz suite

struct InequalityLedger {
  std::string name;
  std::size_t cases = 0;
  double max_ratio = 0.0;  // lhs / rhs (for equalities |ratio - 1|)
  std::size_t violations = 0;
  bool equality = false;
  bool passed() const { return violations == 0; }
};

namespace detail {

inline ComplexMatrix random_hermitian(std::size_t n, RngStream& rng) {
  EnsembleSpec s;
  s.kind = EnsembleKind::GUE;
  s.n = n;
  return sample_wigner(s, rng).matrix();
}

inline ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols, RngStream& rng) {
  ComplexMatrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = rng.complex_normal() * std::numbers::sqrt2;
  return x;
}

}  // namespace detail

/// Hoffman-Wielandt: W_2(mu_A, mu_B) <= n^{-1/2} ||A - B||_HS + 1e-9.
/// Half of the pairs are independent, half are small perturbations.
inline InequalityLedger hoffman_wielandt_check(std::uint64_t seed, std::size_t cases, std::size_t n_max = 32) {
  InequalityLedger l{"hoffman-wielandt", cases};
  for (std::size_t c = 0; c < cases; ++c) {
    RngStream rng(seed, "lipschitz-hw", 0, c);
    const std::size_t n = 2 + static_cast<std::size_t>(rng() % (n_max - 1));
    const ComplexMatrix a = detail::random_hermitian(n, rng);
    ComplexMatrix b = detail::random_hermitian(n, rng);
    if (c % 2 == 1) b = a + 1e-3 * b;
    const double lhs = wp_sorted_1d(hermitian_eigenvalues(HermitianView(a)), hermitian_eigenvalues(HermitianView(b)), 2.0).distance;
    const double rhs = hs_distance(a, b) / std::sqrt(static_cast<double>(n));
    if (lhs > rhs + 1e-9) ++l.violations;
    if (rhs > 0) l.max_ratio = std::max(l.max_ratio, lhs / rhs);
  }
  return l;
}

/// ||X*X/m - Y*Y/m||_HS <= (||X||_op + ||Y||_op) ||X - Y||_HS / m + 1e-9.
inline InequalityLedger wishart_lipschitz_check(std::uint64_t seed, std::size_t cases) {
  InequalityLedger l{"wishart-local-lipschitz", cases};
  for (std::size_t c = 0; c < cases; ++c) {
    RngStream rng(seed, "lipschitz-wishart", 0, c);
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 12);
    const std::size_t m = n + static_cast<std::size_t>(rng() % 12);
    const ComplexMatrix x = detail::random_gaussian(m, n, rng);
    ComplexMatrix y = detail::random_gaussian(m, n, rng);
    if (c % 2 == 1) y = x + 1e-2 * y;
    const double md = static_cast<double>(m);
    const double lhs = hs_distance(ComplexMatrix(x.adjoint() * x / md), ComplexMatrix(y.adjoint() * y / md));
    const double rhs = (matrix_norms(x).op + matrix_norms(y).op) * hs_distance(x, y) / md;
    if (lhs > rhs + 1e-9) ++l.violations;
    if (rhs > 0) l.max_ratio = std::max(l.max_ratio, lhs / rhs);
  }
  return l;
}

/// ||(U A U* + B) - (V A V* + B)||_HS <= 2 ||A||_op ||U - V||_HS + 1e-9.
inline InequalityLedger sums_lipschitz_check(std::uint64_t seed, std::size_t cases) {
  InequalityLedger l{"randomized-sum-lipschitz", cases};
  for (std::size_t c = 0; c < cases; ++c) {
    RngStream rng(seed, "lipschitz-sums", 0, c);
    const std::size_t n = 1 + static_cast<std::size_t>(rng() % 16);
    // every tenth case uses A = 0, where both sides vanish
    const ComplexMatrix a = c % 10 == 0 ? ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))
                                        : detail::random_hermitian(n, rng);
    const ComplexMatrix b = detail::random_hermitian(n, rng);
    const ComplexMatrix u = sample_haar(Group::U, n, rng);
    ComplexMatrix v = sample_haar(Group::U, n, rng);
    if (c % 2 == 1) {
      // a nearby unitary: U exp(i eps H)
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(detail::random_hermitian(n, rng));
      const Eigen::VectorXcd ph = (cplx(0.0, 1e-2) * es.eigenvalues().cast<cplx>()).array().exp();
      v = u * es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
    }
    const ComplexMatrix lhs_m =
        randomized_sum(HermitianView::hermitize(a), HermitianView::hermitize(b), u).matrix() -
        randomized_sum(HermitianView::hermitize(a), HermitianView::hermitize(b), v).matrix();
    const double lhs = hs_norm(lhs_m);
    const double rhs = 2.0 * matrix_norms(a).op * hs_distance(u, v);
    if (lhs > rhs + 1e-9) ++l.violations;
    if (rhs > 0) l.max_ratio = std::max(l.max_ratio, lhs / rhs);
  }
  return l;
}

/// ||H(x) - H(y)||_HS = 2^{n/2}/(3 sqrt n) ||x - y||_2 to 1e-12 relative.
inline InequalityLedger qsg_lipschitz_check(std::uint64_t seed, std::size_t cases, std::size_t q_lo = 3,
                                            std::size_t q_hi = 8) {
  InequalityLedger l{"qsg-lipschitz-equality", cases};
  l.equality = true;
  for (std::size_t c = 0; c < cases; ++c) {
    const std::size_t q = q_lo + c % (q_hi - q_lo + 1);
    RngStream rng(seed, "lipschitz-qsg", q, c);
    const auto x = sample_qsg_coefficients(q, rng);
    const auto y = sample_qsg_coefficients(q, rng);
    double dxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) dxy += (x[i] - y[i]) * (x[i] - y[i]);
    const double lhs = hs_distance(qsg_hamiltonian(x, q).matrix(), qsg_hamiltonian(y, q).matrix());
    const double rhs = qsg_lipschitz_constant(q) * std::sqrt(dxy);
    const double dev = std::abs(lhs / rhs - 1.0);
    if (dev > 1e-12) ++l.violations;
    l.max_ratio = std::max(l.max_ratio, dev);
  }
  return l;
}

inline std::vector<InequalityLedger> lipschitz_suite(std::uint64_t seed, std::size_t cases) {
  require(cases >= 100, ErrorKind::InvalidSpec, "lipschitz suite needs >= 100 cases per inequality");
  return {hoffman_wielandt_check(seed, cases), wishart_lipschitz_check(seed, cases), sums_lipschitz_check(seed, cases),
          qsg_lipschitz_check(seed, cases)};
}

}  // namespace rmt
