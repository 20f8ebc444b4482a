#ifndef GEOTHRESH_STATS_HPP
#define GEOTHRESH_STATS_HPP

// Aggregations over replicated samples: Kolmogorov-Smirnov distance,
// total-variation distance to a Poisson law, empirical medians.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace geothresh {

/// sup_x |ECDF(x) - cdf(x)|, evaluated on both sides of every jump.
inline double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return std::clamp(d, 0.0, 1.0);
}

/// (1/2) sum_j |p_hat(j) - Po(mean)(j)| over j <= max observed, plus the
/// Poisson tail mass above it.
inline double tv_poisson_estimate(const std::vector<double>& samples, double mean) {
  if (!(mean > 0.0)) throw std::invalid_argument("tv_poisson_estimate: mean must be positive");
  if (samples.empty()) throw std::invalid_argument("tv_poisson_estimate: empty sample");
  std::size_t top = 0;
  for (double s : samples) {
    if (s < 0.0 || s != std::floor(s)) throw std::invalid_argument("tv_poisson_estimate: counts must be nonnegative integers");
    top = std::max(top, static_cast<std::size_t>(s));
  }
  std::vector<double> hist(top + 1, 0.0);
  for (double s : samples) hist[static_cast<std::size_t>(s)] += 1.0;
  double sum = 0.0, mass = 0.0;
  double pmf = std::exp(-mean);
  for (std::size_t j = 0; j <= top; ++j) {
    if (j > 0) pmf *= mean / static_cast<double>(j);
    sum += std::fabs(hist[j] / samples.size() - pmf);
    mass += pmf;
  }
  return 0.5 * (sum + std::max(0.0, 1.0 - mass));
}

/// Lower empirical median x_(ceil(R/2)).
inline double lower_median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("lower_median: empty sample");
  const std::size_t idx = (v.size() + 1) / 2 - 1;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(idx), v.end());
  return v[idx];
}

inline double quantile(std::vector<double> v, double p) {
  if (v.empty()) throw std::invalid_argument("quantile: empty sample");
  std::sort(v.begin(), v.end());
  const double h = p * (v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - lo) * (v[hi] - v[lo]);
}

inline double interquartile_range(const std::vector<double>& v) { return quantile(v, 0.75) - quantile(v, 0.25); }

struct MedianCentred {
  std::vector<double> centred;
  double median = 0.0;  // empirical median of V
};

/// n (V^d - med^d), with med the lower empirical median of V.
inline MedianCentred median_centre(const std::vector<double>& values, double n, int d) {
  if (values.size() < 2) throw std::invalid_argument("median_centre: need at least 2 values");
  MedianCentred out;
  out.median = lower_median(values);
  const double md = std::pow(out.median, d);
  out.centred.reserve(values.size());
  for (double v : values) out.centred.push_back(n * (std::pow(v, d) - md));
  return out;
}

}  // namespace geothresh

#endif  // GEOTHRESH_STATS_HPP
