#include "qenc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qenc/encoders.hpp"  // quantile()

namespace qenc {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

void check_finite(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("empty sample");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
  }
}

// Average ranks of |diffs|, doubled so ties stay integral (ranks with
// averaging are multiples of 1/2).
std::vector<std::int64_t> doubled_abs_ranks(std::span<const double> diffs) {
  const std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(diffs[a]) < std::abs(diffs[b]);
  });
  std::vector<std::int64_t> rank2(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n &&
           std::abs(diffs[order[j + 1]]) == std::abs(diffs[order[i]])) {
      ++j;
    }
    // average of ranks i+1 .. j+1, doubled: (i+1) + (j+1)
    const std::int64_t r2 = static_cast<std::int64_t>(i + j + 2);
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    i = j + 1;
  }
  return rank2;
}

// Two-sided exact p over all 2^n equally likely sign assignments: the count
// of assignments whose positive-rank sum T satisfies T <= min(W+, W-) or
// T >= max(W+, W-), computed by subset-sum DP over the doubled ranks.
double exact_two_sided_p(const std::vector<std::int64_t>& rank2,
                         std::int64_t w_plus2, std::int64_t w_minus2) {
  std::int64_t total2 = 0;
  for (std::int64_t r : rank2) total2 += r;
  const std::int64_t lo = std::min(w_plus2, w_minus2);
  const std::int64_t hi = std::max(w_plus2, w_minus2);

  std::vector<double> counts(static_cast<std::size_t>(total2) + 1, 0.0);
  counts[0] = 1.0;
  std::int64_t reach = 0;
  for (std::int64_t r : rank2) {
    reach += r;
    for (std::int64_t t = reach; t >= r; --t) {
      counts[static_cast<std::size_t>(t)] +=
          counts[static_cast<std::size_t>(t - r)];
    }
  }
  double tail = 0.0;
  for (std::int64_t t = 0; t <= total2; ++t) {
    if (t <= lo || t >= hi) tail += counts[static_cast<std::size_t>(t)];
  }
  const double p = tail / std::ldexp(1.0, static_cast<int>(rank2.size()));
  return std::min(p, 1.0);
}

double normal_two_sided_p(const std::vector<std::int64_t>& rank2,
                          double w_min) {
  const double n = static_cast<double>(rank2.size());
  const double mu = n * (n + 1.0) / 4.0;

  // Tie correction: sum of (t^3 - t) over tie group sizes.
  std::vector<std::int64_t> sorted(rank2);
  std::sort(sorted.begin(), sorted.end());
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }
  const double sigma2 =
      n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  const double sigma = std::sqrt(sigma2);
  const double z = (w_min - mu + 0.5) / sigma;  // continuity correction
  return std::min(2.0 * normal_cdf(z), 1.0);
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs,
                                    WilcoxonMethod method) {
  check_finite(diffs);
  std::vector<double> nonzero;
  nonzero.reserve(diffs.size());
  for (double d : diffs) {
    if (d != 0.0) nonzero.push_back(d);
  }

  WilcoxonResult result;
  if (nonzero.empty()) {
    result.degenerate = true;
    result.exact = true;
    result.p_value = 1.0;
    return result;
  }
  result.n_used = nonzero.size();

  const std::vector<std::int64_t> rank2 = doubled_abs_ranks(nonzero);
  std::int64_t w_plus2 = 0;
  std::int64_t w_minus2 = 0;
  for (std::size_t i = 0; i < nonzero.size(); ++i) {
    (nonzero[i] > 0.0 ? w_plus2 : w_minus2) += rank2[i];
  }
  result.statistic = 0.5 * static_cast<double>(std::min(w_plus2, w_minus2));

  const bool use_exact =
      method == WilcoxonMethod::exact ||
      (method == WilcoxonMethod::automatic &&
       nonzero.size() <= kWilcoxonExactLimit);
  if (use_exact) {
    result.exact = true;
    result.p_value = exact_two_sided_p(rank2, w_plus2, w_minus2);
  } else {
    result.exact = false;
    result.p_value = normal_two_sided_p(rank2, result.statistic);
  }
  return result;
}

double outperformance_probability(std::span<const double> diffs) {
  check_finite(diffs);
  const std::size_t n = diffs.size();

  const auto sign_indicator = [&]() {
    const double v = diffs[0];
    if (v < 0.0) return 1.0;
    if (v > 0.0) return 0.0;
    return 0.5;
  };
  if (n == 1) return sign_indicator();

  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double iqr = quantile(diffs, 0.75) - quantile(diffs, 0.25);

  double sigma_hat = std::numeric_limits<double>::infinity();
  if (sd > 0.0) sigma_hat = std::min(sigma_hat, sd);
  if (iqr > 0.0) sigma_hat = std::min(sigma_hat, iqr / 1.349);
  if (!std::isfinite(sigma_hat)) return sign_indicator();  // zero spread

  const double h = sigma_hat * std::pow(static_cast<double>(n), -0.2);
  double p = 0.0;
  for (double d : diffs) p += normal_cdf((0.0 - d) / h);
  return p / static_cast<double>(n);
}

}  // namespace qenc
