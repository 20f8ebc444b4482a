#ifndef GEOTHRESH_EXPERIMENTS_HPP
#define GEOTHRESH_EXPERIMENTS_HPP

// Replicated Monte Carlo runs. Replication r draws from
// replication_stream(seed, r), so records depend on (config, seed) only and
// never on the number of worker threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "geothresh/density.hpp"
#include "geothresh/errors.hpp"
#include "geothresh/expectation.hpp"
#include "geothresh/geometry.hpp"
#include "geothresh/parallel.hpp"
#include "geothresh/rng.hpp"
#include "geothresh/spatial.hpp"
#include "geothresh/stats.hpp"
#include "geothresh/theory.hpp"
#include "geothresh/thresholds.hpp"

namespace geothresh {

enum class Model { poisson, binomial };
enum class Statistic { L, M, both };
enum class XiRadius { solved, explicit_centring };

inline constexpr double kMaxConnectivityN = 5e4;

struct ExperimentConfig {
  Domain domain = Domain::disk(1.0);
  Density density = Density::uniform(Domain::disk(1.0));
  Model model = Model::poisson;
  double n = 1000.0;
  int k = 1;
  std::size_t replications = 1;
  std::uint64_t seed = 0;
  Statistic statistic = Statistic::L;
  Centring centring = Centring::explicit_uniform;
  std::optional<double> record_xi_at;  // beta
  XiRadius xi_radius = XiRadius::solved;
  Correction correction = Correction::standard;
  bool compare_limit = true;
  unsigned threads = 1;
  bool progress = false;
};

struct ExperimentRecord {
  std::size_t rep_id = 0;
  std::size_t n_realised = 0;
  std::optional<double> L;
  std::optional<double> M;
  std::optional<bool> coincide;
  std::optional<std::size_t> xi;
  double transformed = 0.0;
};

inline bool wants_L(Statistic s) noexcept { return s != Statistic::M; }
inline bool wants_M(Statistic s) noexcept { return s != Statistic::L; }

/// Throws InfeasibleError for configurations the harness refuses.
inline void validate(const ExperimentConfig& c) {
  if (c.replications < 1) throw InfeasibleError("replications must be at least 1");
  if (c.k < 1 || c.k > 10) throw InfeasibleError("k must be in 1..10");
  if (!(c.n >= c.k + 2.0)) throw InfeasibleError("n must be at least k+2");
  if (c.model == Model::binomial && c.n != std::floor(c.n))
    throw InfeasibleError("binomial model needs an integer n");
  if (wants_M(c.statistic) && c.k >= 2 && c.n > kMaxConnectivityN)
    throw InfeasibleError("statistic M with k >= 2 is limited to n <= 5e4; use statistic L");
  if (c.density.domain().kind() != c.domain.kind() ||
      c.density.domain().dimension() != c.domain.dimension())
    throw InfeasibleError("density is defined on a different domain");
  if (c.centring == Centring::explicit_uniform && c.density.kind() != DensityKind::uniform)
    throw InfeasibleError("explicit centring requires the uniform density; use empirical-median");
  if (c.centring == Centring::empirical_median && c.replications < 2)
    throw InfeasibleError("empirical-median centring needs at least 2 replications");
  if (c.centring == Centring::empirical_median && c.compare_limit &&
      regime(c.density, c.domain.dimension()) == Regime::critical)
    throw InfeasibleError(
        "critical regime f1 = f0(2-2/d): the median-centred statistic is only tight, no limit law "
        "to compare against; set compare_limit to false for tightness diagnostics");
}

/// Radius at which xi is recorded.
inline double xi_radius(const ExperimentConfig& c) {
  const double beta = *c.record_xi_at;
  if (c.xi_radius == XiRadius::solved) return solve_rn(c.density, c.n, c.k, beta);
  if (c.density.kind() != DensityKind::uniform)
    throw InfeasibleError("explicit xi radius requires the uniform density");
  return centring_radius(c.domain.dimension(), c.k, c.n, c.density.f0(), beta);
}

inline std::vector<Point> sample_points(const Density& f, std::size_t count, Rng& rng) {
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) pts.push_back(sample(f, rng));
  return pts;
}

inline PointSet build_point_set(std::vector<Point> pts, const Domain& a) {
  const double cell = default_cell_size(pts.size(), a.volume(), a.dimension());
  return PointSet::build(std::move(pts), cell, a.dimension());
}

/// One replication. `xi_r` is the precomputed xi radius, if any.
inline ExperimentRecord run_replication(const ExperimentConfig& c, std::size_t rep,
                                        std::optional<double> xi_r) {
  Rng rng = replication_stream(c.seed, rep);
  ExperimentRecord rec;
  rec.rep_id = rep;
  rec.n_realised = c.model == Model::poisson ? static_cast<std::size_t>(poisson(rng, c.n))
                                             : static_cast<std::size_t>(c.n);
  const PointSet ps = build_point_set(sample_points(c.density, rec.n_realised, rng), c.domain);
  const auto k = static_cast<std::size_t>(c.k);
  if (wants_M(c.statistic)) {
    // A Poisson draw may fall below k+2 points, where M is undefined.
    if (ps.size() >= k + 2) {
      const auto t = compute_thresholds(ps, c.k);
      rec.M = t.M;
      rec.coincide = t.coincide;
      if (wants_L(c.statistic)) rec.L = t.L;
    } else if (wants_L(c.statistic)) {
      rec.L = largest_knn_link(ps, c.k);
    }
  } else {
    rec.L = largest_knn_link(ps, c.k);
  }
  if (xi_r) rec.xi = isolated_count(ps, *xi_r, c.k);
  return rec;
}

inline double explicit_value(const ExperimentConfig& c, double v) {
  return explicit_transform(c.domain.dimension(), c.k, c.n, c.density.f0(), v);
}

/// Fills `transformed` (from M when present, else L). Median centring uses
/// the lower empirical median over the records that carry the value.
inline void transform_records(const ExperimentConfig& c, std::vector<ExperimentRecord>& recs) {
  auto value = [](const ExperimentRecord& r) { return r.M ? *r.M : r.L ? *r.L : 0.0; };
  if (c.centring == Centring::explicit_uniform) {
    for (auto& r : recs) r.transformed = explicit_value(c, value(r));
    return;
  }
  std::vector<double> v;
  for (const auto& r : recs) v.push_back(value(r));
  const double med = lower_median(v);
  const int d = c.domain.dimension();
  for (auto& r : recs) r.transformed = c.n * (std::pow(value(r), d) - std::pow(med, d));
}

/// All replications, sorted by rep_id, with `transformed` filled in.
inline std::vector<ExperimentRecord> run(const ExperimentConfig& c) {
  validate(c);
  std::optional<double> xi_r;
  if (c.record_xi_at) xi_r = xi_radius(c);
  std::vector<ExperimentRecord> recs(c.replications);
  std::mutex progress_mutex;
  std::size_t done = 0;
  parallel_for(c.replications, c.threads, [&](std::size_t rep) {
    recs[rep] = run_replication(c, rep, xi_r);
    if (c.progress) {
      std::lock_guard lock(progress_mutex);
      ++done;
      if (done % std::max<std::size_t>(1, c.replications / 10) == 0 || done == c.replications)
        std::cerr << "replications " << done << "/" << c.replications << "\n";
    }
  });
  transform_records(c, recs);
  return recs;
}

/// Fraction of records with L = M (records without M are ignored).
inline double coincidence_rate(const std::vector<ExperimentRecord>& recs) {
  std::size_t total = 0, hits = 0;
  for (const auto& r : recs)
    if (r.coincide) {
      ++total;
      if (*r.coincide) ++hits;
    }
  if (total == 0) throw std::invalid_argument("coincidence_rate: no record carries both L and M");
  return static_cast<double>(hits) / static_cast<double>(total);
}

struct ExperimentSummary {
  std::optional<double> ks_L, ks_M;
  std::optional<double> tv_estimate, xi_mean, xi_expected, xi_radius;
  std::optional<double> coincidence_rate;
  std::optional<double> median_L, median_M;
  std::optional<double> iqr_L, iqr_M;  // of the centred statistics
  LimitSpec spec;
};

/// Centred statistic per record for the chosen value (L or M).
inline std::vector<double> centred_values(const ExperimentConfig& c,
                                          const std::vector<ExperimentRecord>& recs, bool use_M,
                                          double* median_out = nullptr) {
  std::vector<double> v;
  for (const auto& r : recs) {
    const auto& x = use_M ? r.M : r.L;
    if (x) v.push_back(*x);
  }
  if (v.empty()) return v;
  if (c.centring == Centring::explicit_uniform) {
    for (double& x : v) x = explicit_value(c, x);
    return v;
  }
  if (v.size() < 2) return {};
  auto mc = median_centre(v, c.n, c.domain.dimension());
  if (median_out) *median_out = mc.median;
  return mc.centred;
}

inline ExperimentSummary summarise(const ExperimentConfig& c, const std::vector<ExperimentRecord>& recs) {
  ExperimentSummary s;
  s.spec = make_limit_spec(c.density, c.k, c.centring);
  std::function<double(double)> cdf;
  if (c.compare_limit && s.spec.law_available) {
    if (c.centring == Centring::explicit_uniform)
      cdf = [&](double b) { return limit_cdf(s.spec, b, c.n, c.correction); };
    else
      cdf = [&](double z) { return nonuniform_limit_cdf(s.spec, z); };
  }
  for (bool use_M : {false, true}) {
    double med = 0.0;
    const auto v = centred_values(c, recs, use_M, &med);
    if (v.empty()) continue;
    auto& ks = use_M ? s.ks_M : s.ks_L;
    auto& iqr = use_M ? s.iqr_M : s.iqr_L;
    if (cdf) ks = ks_statistic(v, cdf);
    iqr = interquartile_range(v);
    if (c.centring == Centring::empirical_median) (use_M ? s.median_M : s.median_L) = med;
  }
  std::vector<double> xi;
  for (const auto& r : recs)
    if (r.xi) xi.push_back(static_cast<double>(*r.xi));
  if (!xi.empty()) {
    const double r = xi_radius(c);
    s.xi_radius = r;
    s.xi_expected = expected_isolated(c.density, c.n, r, c.k).value;
    double m = 0.0;
    for (double x : xi) m += x;
    s.xi_mean = m / xi.size();
    s.tv_estimate = tv_poisson_estimate(xi, *s.xi_expected);
  }
  bool any_m = false;
  for (const auto& r : recs) any_m = any_m || r.coincide.has_value();
  if (any_m) s.coincidence_rate = coincidence_rate(recs);
  return s;
}

}  // namespace geothresh

#endif  // GEOTHRESH_EXPERIMENTS_HPP
