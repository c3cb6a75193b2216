#ifndef QENC_STATS_HPP_
#define QENC_STATS_HPP_

#include <cstddef>
#include <span>

namespace qenc {

double normal_cdf(double z);

enum class WilcoxonMethod {
  automatic,      // exact for n <= kWilcoxonExactLimit, else normal
  exact,
  normal_approx,
};

inline constexpr std::size_t kWilcoxonExactLimit = 25;

struct WilcoxonResult {
  double statistic = 0.0;  // W = min(sum of positive ranks, sum of negative)
  double p_value = 1.0;    // two-sided
  std::size_t n_used = 0;  // diffs after dropping exact zeros
  bool degenerate = false; // all diffs were zero
  bool exact = false;      // p from full sign enumeration
};

// Paired signed-rank test on score differences. Zero diffs are dropped;
// absolute ties get average ranks. The exact two-sided p enumerates all 2^n
// sign assignments (tie-aware, via a subset-sum count over doubled ranks);
// the large-sample path uses the normal approximation with tie and
// continuity corrections.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> diffs,
                                    WilcoxonMethod method = WilcoxonMethod::automatic);

// Probability that side A outperforms side B given diffs = score_A - score_B
// (smaller score is better): the mass below zero of a Gaussian KDE over the
// diffs with Scott bandwidth h = min(sd, IQR/1.349) * n^(-1/5), evaluated as
// the mixture CDF at 0. Zero-spread samples degenerate to the sign indicator.
double outperformance_probability(std::span<const double> diffs);

}  // namespace qenc

#endif  // QENC_STATS_HPP_
