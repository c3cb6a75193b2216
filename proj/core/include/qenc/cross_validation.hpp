#ifndef QENC_CROSS_VALIDATION_HPP_
#define QENC_CROSS_VALIDATION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "qenc/dataset.hpp"
#include "qenc/elastic_net.hpp"
#include "qenc/encoders.hpp"
#include "qenc/metrics.hpp"

namespace qenc {

struct CvPlan {
  std::size_t n_folds = 4;
  std::size_t n_repeats = 3;
  std::uint64_t seed = 0;
  Metric metric = Metric::mae;
};

struct FoldSplit {
  std::size_t repeat = 0;
  std::size_t fold = 0;
  std::vector<std::size_t> train_indices;  // ascending
  std::vector<std::size_t> test_indices;   // ascending
};

// Per repeat, a seeded shuffle partitions 0..n-1 into n_folds test sets whose
// sizes differ by at most one. Deterministic given plan.seed.
std::vector<FoldSplit> make_folds(std::size_t n, const CvPlan& plan);

struct GridSpec {
  std::vector<double> m_values;
  std::vector<double> p_values;  // quantile levels; the whole list is one
                                 // config for the summary kind
};

struct EncoderFamily {
  EncoderKind kind = EncoderKind::quantile;
  GridSpec grid;
};

// Paper-default grids: quantile m in {0,1,10,50} x p in {0.25,0.5,0.75};
// summary m in {0,1,10,50} with levels {0.25,0.5,0.75}; m_estimate_mean
// m in {0,1,10,50}; target_mean and ordinal have a single config.
EncoderFamily default_family(EncoderKind kind);

struct EncoderConfig {
  double m = 0.0;
  std::vector<double> quantiles;  // empty for mean/ordinal kinds
  std::string id;                 // e.g. "m=1;p=0.5", "m=100;q=0.4|0.5|0.6"
};

std::vector<EncoderConfig> expand_configs(const EncoderFamily& family);

struct SplitScore {
  std::size_t config = 0;
  std::size_t repeat = 0;
  std::size_t fold = 0;
  double score = 0.0;
  bool ok = false;
  std::string error;
};

struct ConfigResult {
  EncoderConfig config;
  std::vector<SplitScore> scores;  // ordered by (repeat, fold)
  double mean_score = 0.0;         // over ok splits; NaN if none
  std::size_t failures = 0;
};

struct CvReport {
  std::string encoder_id;
  std::string dataset_id;
  CvPlan plan;
  std::vector<ConfigResult> configs;
  std::optional<std::size_t> best_config;  // min mean score; unset if all failed
  std::size_t failed_splits = 0;

  // Scores of the best config aligned by (repeat, fold); empty if all failed.
  std::vector<double> best_scores() const;
};

struct SplitEval {
  bool ok = false;
  std::string error;
  double score = 0.0;
  FittedEncoder encoder;
  LinearModel model;
};

// One leakage-safe evaluation: encoder fit on train only, both sides
// transformed, model fit on encoded train, metric on test. Exceptions are
// captured into the result rather than thrown.
SplitEval evaluate_split(const Dataset& train, const Dataset& test,
                         EncoderKind kind, const EncoderConfig& config,
                         const ElasticNetSpec& model_spec, Metric metric);

CvReport run_cv(const Dataset& data, const EncoderFamily& family,
                const ElasticNetSpec& model_spec, const CvPlan& plan,
                std::string dataset_id = "");

// JSON document (sorted keys, stable across runs).
std::string cv_report_to_json(const CvReport& report, int indent = 2);

// Flat rows `encoder,config,repeat,fold,score` (header included once);
// failed splits write NA.
void write_scores_csv(std::ostream& out, std::span<const CvReport> reports);

}  // namespace qenc

#endif  // QENC_CROSS_VALIDATION_HPP_
