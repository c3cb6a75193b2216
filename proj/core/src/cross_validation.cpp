#include "qenc/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "qenc/format.hpp"
#include "qenc/rng.hpp"

namespace qenc {

std::vector<FoldSplit> make_folds(std::size_t n, const CvPlan& plan) {
  if (plan.n_folds < 2) throw std::invalid_argument("n_folds must be >= 2");
  if (plan.n_repeats < 1) throw std::invalid_argument("n_repeats must be >= 1");
  if (n < plan.n_folds) {
    throw std::invalid_argument("fewer rows than folds");
  }
  std::vector<FoldSplit> splits;
  splits.reserve(plan.n_repeats * plan.n_folds);
  for (std::size_t r = 0; r < plan.n_repeats; ++r) {
    SplitMix64 rng(derive_seed(plan.seed, r));
    const std::vector<std::size_t> order = shuffled_indices(n, rng);
    const std::size_t base = n / plan.n_folds;
    const std::size_t extra = n % plan.n_folds;
    std::size_t offset = 0;
    for (std::size_t f = 0; f < plan.n_folds; ++f) {
      const std::size_t size = base + (f < extra ? 1 : 0);
      FoldSplit split;
      split.repeat = r;
      split.fold = f;
      split.test_indices.assign(order.begin() + offset,
                                order.begin() + offset + size);
      std::sort(split.test_indices.begin(), split.test_indices.end());
      split.train_indices.reserve(n - size);
      std::vector<bool> in_test(n, false);
      for (std::size_t i : split.test_indices) in_test[i] = true;
      for (std::size_t i = 0; i < n; ++i) {
        if (!in_test[i]) split.train_indices.push_back(i);
      }
      splits.push_back(std::move(split));
      offset += size;
    }
  }
  return splits;
}

EncoderFamily default_family(EncoderKind kind) {
  EncoderFamily family;
  family.kind = kind;
  switch (kind) {
    case EncoderKind::quantile:
    case EncoderKind::summary:
      family.grid.m_values = {0.0, 1.0, 10.0, 50.0};
      family.grid.p_values = {0.25, 0.5, 0.75};
      break;
    case EncoderKind::m_estimate_mean:
      family.grid.m_values = {0.0, 1.0, 10.0, 50.0};
      break;
    case EncoderKind::target_mean:
      family.grid.m_values = {0.0};
      break;
    case EncoderKind::ordinal:
      break;
  }
  return family;
}

std::vector<EncoderConfig> expand_configs(const EncoderFamily& family) {
  std::vector<EncoderConfig> configs;
  switch (family.kind) {
    case EncoderKind::quantile: {
      if (family.grid.m_values.empty() || family.grid.p_values.empty()) {
        throw std::invalid_argument("empty grid");
      }
      for (double m : family.grid.m_values) {
        for (double p : family.grid.p_values) {
          EncoderConfig cfg;
          cfg.m = m;
          cfg.quantiles = {p};
          cfg.id = "m=" + format_double(m) + ";p=" + format_double(p);
          configs.push_back(std::move(cfg));
        }
      }
      break;
    }
    case EncoderKind::summary: {
      if (family.grid.m_values.empty() || family.grid.p_values.empty()) {
        throw std::invalid_argument("empty grid");
      }
      for (double m : family.grid.m_values) {
        EncoderConfig cfg;
        cfg.m = m;
        cfg.quantiles = family.grid.p_values;
        cfg.id = "m=" + format_double(m) + ";q=";
        for (std::size_t i = 0; i < cfg.quantiles.size(); ++i) {
          if (i > 0) cfg.id += '|';
          cfg.id += format_double(cfg.quantiles[i]);
        }
        configs.push_back(std::move(cfg));
      }
      break;
    }
    case EncoderKind::target_mean: {
      EncoderConfig cfg;
      cfg.m = 0.0;
      cfg.id = "m=0";
      configs.push_back(std::move(cfg));
      break;
    }
    case EncoderKind::m_estimate_mean: {
      if (family.grid.m_values.empty()) {
        throw std::invalid_argument("empty grid");
      }
      for (double m : family.grid.m_values) {
        EncoderConfig cfg;
        cfg.m = m;
        cfg.id = "m=" + format_double(m);
        configs.push_back(std::move(cfg));
      }
      break;
    }
    case EncoderKind::ordinal: {
      EncoderConfig cfg;
      cfg.id = "default";
      configs.push_back(std::move(cfg));
      break;
    }
  }
  return configs;
}

namespace {

FittedEncoder fit_for_config(const Dataset& train, EncoderKind kind,
                             const EncoderConfig& config) {
  const std::vector<std::string>& columns = train.cat_names;
  switch (kind) {
    case EncoderKind::quantile: {
      if (config.quantiles.size() != 1) {
        throw std::invalid_argument("quantile config needs exactly one level");
      }
      return fit_quantile_encoder(train, columns,
                                  QuantileSpec{config.quantiles[0], config.m});
    }
    case EncoderKind::summary:
      return fit_summary_encoder(train, columns,
                                 SummarySpec{config.quantiles, config.m});
    case EncoderKind::target_mean:
    case EncoderKind::m_estimate_mean:
      return fit_target_mean_encoder(train, columns, config.m);
    case EncoderKind::ordinal:
      return fit_ordinal_encoder(train, columns);
  }
  throw std::logic_error("unreachable encoder kind");
}

}  // namespace

SplitEval evaluate_split(const Dataset& train, const Dataset& test,
                         EncoderKind kind, const EncoderConfig& config,
                         const ElasticNetSpec& model_spec, Metric metric) {
  SplitEval eval;
  try {
    eval.encoder = fit_for_config(train, kind, config);
    const Dataset encoded_train = transform(eval.encoder, train);
    const Dataset encoded_test = transform(eval.encoder, test);
    eval.model =
        fit_elastic_net(encoded_train.num_cols, encoded_train.target, model_spec);
    const std::vector<double> predictions =
        predict(eval.model, encoded_test.num_cols);
    eval.score = score(metric, encoded_test.target, predictions);
    eval.ok = true;
  } catch (const std::exception& e) {
    eval.ok = false;
    eval.error = e.what();
  }
  return eval;
}

std::vector<double> CvReport::best_scores() const {
  if (!best_config) return {};
  std::vector<double> out;
  for (const SplitScore& s : configs[*best_config].scores) {
    if (s.ok) out.push_back(s.score);
  }
  return out;
}

CvReport run_cv(const Dataset& data, const EncoderFamily& family,
                const ElasticNetSpec& model_spec, const CvPlan& plan,
                std::string dataset_id) {
  data.validate();
  const std::vector<FoldSplit> folds = make_folds(data.rows(), plan);
  const std::vector<EncoderConfig> configs = expand_configs(family);

  std::vector<Dataset> train_slices;
  std::vector<Dataset> test_slices;
  train_slices.reserve(folds.size());
  test_slices.reserve(folds.size());
  for (const FoldSplit& split : folds) {
    train_slices.push_back(slice(data, split.train_indices));
    test_slices.push_back(slice(data, split.test_indices));
  }

  CvReport report;
  report.encoder_id = std::string(to_string(family.kind));
  report.dataset_id = std::move(dataset_id);
  report.plan = plan;
  report.configs.reserve(configs.size());

  for (std::size_t c = 0; c < configs.size(); ++c) {
    ConfigResult result;
    result.config = configs[c];
    double sum = 0.0;
    std::size_t ok_count = 0;
    for (std::size_t s = 0; s < folds.size(); ++s) {
      const SplitEval eval =
          evaluate_split(train_slices[s], test_slices[s], family.kind,
                         configs[c], model_spec, plan.metric);
      SplitScore entry;
      entry.config = c;
      entry.repeat = folds[s].repeat;
      entry.fold = folds[s].fold;
      entry.ok = eval.ok;
      entry.score = eval.score;
      entry.error = eval.error;
      if (eval.ok) {
        sum += eval.score;
        ++ok_count;
      } else {
        ++result.failures;
        ++report.failed_splits;
      }
      result.scores.push_back(std::move(entry));
    }
    result.mean_score = ok_count > 0
                            ? sum / static_cast<double>(ok_count)
                            : std::numeric_limits<double>::quiet_NaN();
    report.configs.push_back(std::move(result));
  }

  for (std::size_t c = 0; c < report.configs.size(); ++c) {
    const ConfigResult& result = report.configs[c];
    if (std::isnan(result.mean_score)) continue;
    if (!report.best_config ||
        result.mean_score < report.configs[*report.best_config].mean_score) {
      report.best_config = c;
    }
  }
  return report;
}

std::string cv_report_to_json(const CvReport& report, int indent) {
  nlohmann::json doc;
  doc["encoder"] = report.encoder_id;
  doc["dataset_id"] = report.dataset_id;
  doc["plan"] = {{"folds", report.plan.n_folds},
                 {"repeats", report.plan.n_repeats},
                 {"seed", report.plan.seed},
                 {"metric", std::string(to_string(report.plan.metric))}};
  nlohmann::json configs = nlohmann::json::array();
  for (const ConfigResult& result : report.configs) {
    nlohmann::json scores = nlohmann::json::array();
    for (const SplitScore& s : result.scores) {
      nlohmann::json entry = {{"repeat", s.repeat}, {"fold", s.fold}, {"ok", s.ok}};
      if (s.ok) {
        entry["score"] = s.score;
      } else {
        entry["error"] = s.error;
      }
      scores.push_back(std::move(entry));
    }
    nlohmann::json cfg = {{"id", result.config.id},
                          {"m", result.config.m},
                          {"quantiles", result.config.quantiles},
                          {"failures", result.failures},
                          {"scores", std::move(scores)}};
    if (!std::isnan(result.mean_score)) cfg["mean_score"] = result.mean_score;
    configs.push_back(std::move(cfg));
  }
  doc["configs"] = std::move(configs);
  if (report.best_config) {
    doc["best_config"] = report.configs[*report.best_config].config.id;
    doc["best_mean_score"] = report.configs[*report.best_config].mean_score;
  }
  doc["failed_splits"] = report.failed_splits;
  return doc.dump(indent);
}

void write_scores_csv(std::ostream& out, std::span<const CvReport> reports) {
  out << "encoder,config,repeat,fold,score\n";
  for (const CvReport& report : reports) {
    for (const ConfigResult& result : report.configs) {
      for (const SplitScore& s : result.scores) {
        out << report.encoder_id << ',' << result.config.id << ',' << s.repeat
            << ',' << s.fold << ','
            << (s.ok ? format_double(s.score) : std::string("NA")) << '\n';
      }
    }
  }
}

}  // namespace qenc
