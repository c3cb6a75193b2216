// Command-line driver: synthetic data generation, encoder fit/apply and the
// cross-validated encoder benchmark with paired significance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qenc/cross_validation.hpp"
#include "qenc/csv.hpp"
#include "qenc/dataset.hpp"
#include "qenc/elastic_net.hpp"
#include "qenc/encoders.hpp"
#include "qenc/format.hpp"
#include "qenc/metrics.hpp"
#include "qenc/rng.hpp"
#include "qenc/stats.hpp"
#include "qenc/synthetic.hpp"
#include "qenc/version.hpp"

namespace {

using nlohmann::json;

struct DatasetSource {
  bool synthetic = false;
  qenc::CauchyConfig cauchy;
  bool cauchy_seed_set = false;
  std::string csv_path;
  qenc::CsvSchema schema;
};

struct EncoderEntry {
  qenc::EncoderKind kind = qenc::EncoderKind::quantile;
  qenc::GridSpec grid;
};

struct RunConfig {
  std::uint64_t seed = 0;
  DatasetSource source;
  bool source_set = false;
  std::vector<EncoderEntry> encoders;
  std::string reference = "target_mean";
  qenc::ElasticNetSpec model;
  std::vector<double> alpha_grid;  // empty: fixed model.alpha
  qenc::CvPlan plan;
  std::string out_json = "qenc_report.json";
  std::string out_csv;  // default: out_json with .csv extension
};

qenc::EncoderKind kind_or_throw(const std::string& name) {
  const auto kind = qenc::encoder_kind_from(name);
  if (!kind) throw std::invalid_argument("unknown encoder '" + name + "'");
  return *kind;
}

EncoderEntry entry_with_defaults(qenc::EncoderKind kind) {
  const qenc::EncoderFamily family = qenc::default_family(kind);
  return EncoderEntry{family.kind, family.grid};
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  json doc;
  in >> doc;

  RunConfig config;
  config.seed = doc.value("seed", std::uint64_t{0});
  if (doc.contains("dataset")) {
    const json& ds = doc.at("dataset");
    config.source_set = true;
    if (ds.contains("synthetic") == ds.contains("csv")) {
      throw std::invalid_argument("dataset: need exactly one of csv/synthetic");
    }
    if (ds.contains("synthetic")) {
      const json& sy = ds.at("synthetic");
      config.source.synthetic = true;
      auto& c = config.source.cauchy;
      c.n_rows = sy.value("n", std::size_t{1000});
      c.center_low = sy.value("center_low", 0.0);
      c.center_high = sy.value("center_high", 100.0);
      c.scale1 = sy.value("scale1", 1.0);
      c.scale2 = sy.value("scale2", 2.0);
      c.noise_sigma = sy.value("noise_sigma", 1.0);
      if (sy.contains("rounding_decimals")) {
        c.rounding_decimals = sy.at("rounding_decimals").get<int>();
      }
      if (sy.contains("seed")) {
        c.seed = sy.at("seed").get<std::uint64_t>();
        config.source.cauchy_seed_set = true;
      }
    } else {
      config.source.csv_path = ds.at("csv").get<std::string>();
      config.source.schema.categorical =
          ds.value("categorical", std::vector<std::string>{});
      config.source.schema.numeric =
          ds.value("numeric", std::vector<std::string>{});
      config.source.schema.target = ds.value("target", std::string{});
    }
  }
  if (doc.contains("encoders")) {
    for (const json& e : doc.at("encoders")) {
      EncoderEntry entry =
          entry_with_defaults(kind_or_throw(e.at("name").get<std::string>()));
      if (e.contains("m")) {
        entry.grid.m_values = e.at("m").get<std::vector<double>>();
      }
      if (e.contains("p")) {
        entry.grid.p_values = e.at("p").get<std::vector<double>>();
      }
      config.encoders.push_back(std::move(entry));
    }
  }
  config.reference = doc.value("reference", config.reference);
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    config.model.alpha = m.value("alpha", config.model.alpha);
    config.model.l1_ratio = m.value("l1_ratio", config.model.l1_ratio);
    config.model.max_iter = m.value("max_iter", config.model.max_iter);
    config.model.tol = m.value("tol", config.model.tol);
    config.model.standardize = m.value("standardize", config.model.standardize);
    if (m.contains("alpha_grid") && !m.at("alpha_grid").is_null()) {
      config.alpha_grid = m.at("alpha_grid").get<std::vector<double>>();
    }
  }
  if (doc.contains("cv")) {
    const json& cv = doc.at("cv");
    config.plan.n_folds = cv.value("folds", config.plan.n_folds);
    config.plan.n_repeats = cv.value("repeats", config.plan.n_repeats);
    if (cv.contains("metric")) {
      const auto metric = qenc::metric_from(cv.at("metric").get<std::string>());
      if (!metric) throw std::invalid_argument("unknown metric in config");
      config.plan.metric = *metric;
    }
  }
  if (doc.contains("output")) {
    config.out_json = doc.at("output").value("json", config.out_json);
    config.out_csv = doc.at("output").value("csv", config.out_csv);
  }
  return config;
}

std::string dataset_id_of(const RunConfig& config) {
  if (config.source.synthetic) {
    const auto& c = config.source.cauchy;
    std::string id = "cauchy(n=" + std::to_string(c.n_rows) +
                     ",seed=" + std::to_string(c.seed);
    if (c.rounding_decimals) {
      id += ",round=" + std::to_string(*c.rounding_decimals);
    }
    return id + ")";
  }
  return std::filesystem::path(config.source.csv_path).stem().string();
}

json config_to_json(const RunConfig& config) {
  json dataset;
  if (config.source.synthetic) {
    const auto& c = config.source.cauchy;
    json synthetic = {{"n", c.n_rows},
                      {"center_low", c.center_low},
                      {"center_high", c.center_high},
                      {"scale1", c.scale1},
                      {"scale2", c.scale2},
                      {"noise_sigma", c.noise_sigma},
                      {"seed", c.seed}};
    if (c.rounding_decimals) {
      synthetic["rounding_decimals"] = *c.rounding_decimals;
    }
    dataset["synthetic"] = std::move(synthetic);
  } else {
    dataset = {{"csv", config.source.csv_path},
               {"categorical", config.source.schema.categorical},
               {"numeric", config.source.schema.numeric},
               {"target", config.source.schema.target}};
  }
  json encoders = json::array();
  for (const EncoderEntry& e : config.encoders) {
    encoders.push_back({{"name", std::string(qenc::to_string(e.kind))},
                        {"m", e.grid.m_values},
                        {"p", e.grid.p_values}});
  }
  json model = {{"alpha", config.model.alpha},
                {"l1_ratio", config.model.l1_ratio},
                {"max_iter", config.model.max_iter},
                {"tol", config.model.tol},
                {"standardize", config.model.standardize}};
  if (!config.alpha_grid.empty()) model["alpha_grid"] = config.alpha_grid;
  return json{{"seed", config.seed},
              {"dataset", std::move(dataset)},
              {"encoders", std::move(encoders)},
              {"reference", config.reference},
              {"model", std::move(model)},
              {"cv",
               {{"folds", config.plan.n_folds},
                {"repeats", config.plan.n_repeats},
                {"metric", std::string(qenc::to_string(config.plan.metric))}}},
              {"output", {{"json", config.out_json}, {"csv", config.out_csv}}}};
}

struct FamilyOutcome {
  EncoderEntry entry;
  qenc::CvReport report;  // winning alpha when a grid is searched
  double alpha = 1.0;
  json alpha_candidates = json::array();
};

FamilyOutcome evaluate_family(const qenc::Dataset& data,
                              const EncoderEntry& entry,
                              const RunConfig& config,
                              const std::string& dataset_id) {
  FamilyOutcome outcome;
  outcome.entry = entry;
  std::vector<double> alphas = config.alpha_grid;
  if (alphas.empty()) alphas = {config.model.alpha};

  double best_mean = std::numeric_limits<double>::quiet_NaN();
  bool have_report = false;
  for (double alpha : alphas) {
    qenc::ElasticNetSpec spec = config.model;
    spec.alpha = alpha;
    qenc::CvReport report = qenc::run_cv(data, {entry.kind, entry.grid}, spec,
                                         config.plan, dataset_id);
    const double mean = report.best_config
                            ? report.configs[*report.best_config].mean_score
                            : std::numeric_limits<double>::quiet_NaN();
    if (!config.alpha_grid.empty()) {
      json candidate = {{"alpha", alpha}};
      if (!std::isnan(mean)) candidate["best_mean_score"] = mean;
      outcome.alpha_candidates.push_back(std::move(candidate));
    }
    const bool take =
        !have_report ||
        (!std::isnan(mean) && (std::isnan(best_mean) || mean < best_mean));
    if (take) {
      outcome.report = std::move(report);
      outcome.alpha = alpha;
      best_mean = mean;
      have_report = true;
    }
  }
  return outcome;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output '" + path + "'");
  out << text;
}

int cmd_synth(const qenc::CauchyConfig& cfg, const std::string& out_path) {
  const qenc::Dataset data = qenc::generate_cauchy_dataset(cfg);
  qenc::write_csv(std::filesystem::path(out_path), data);
  std::cout << "wrote " << data.rows() << " rows to " << out_path << "\n";
  for (const auto& name : data.cat_names) {
    std::cout << "cardinality " << name << " = "
              << qenc::cardinality(data, name) << "\n";
  }
  return 0;
}

struct EncodeArgs {
  std::string train_path;
  std::string apply_path;
  std::string out_path;
  std::string dump_path;
  qenc::CsvSchema schema;
  std::string encoder = "quantile";
  double p = 0.5;
  std::vector<double> quantiles;
  double m = 0.0;
  bool m_set = false;
  std::optional<std::uint64_t> seed;
};

int cmd_encode(const EncodeArgs& args) {
  const qenc::Dataset train = qenc::load_csv(args.train_path, args.schema);
  const qenc::Dataset apply = qenc::load_csv(args.apply_path, args.schema);
  const qenc::EncoderKind kind = kind_or_throw(args.encoder);

  qenc::FittedEncoder enc;
  const auto& columns = args.schema.categorical;
  switch (kind) {
    case qenc::EncoderKind::quantile:
      enc = qenc::fit_quantile_encoder(
          train, columns, qenc::QuantileSpec{args.p, args.m_set ? args.m : 1.0});
      break;
    case qenc::EncoderKind::summary: {
      qenc::SummarySpec spec;
      if (!args.quantiles.empty()) spec.quantiles = args.quantiles;
      if (args.m_set) spec.m = args.m;
      enc = qenc::fit_summary_encoder(train, columns, spec);
      break;
    }
    case qenc::EncoderKind::target_mean:
      enc = qenc::fit_target_mean_encoder(train, columns, 0.0);
      break;
    case qenc::EncoderKind::m_estimate_mean:
      enc = qenc::fit_target_mean_encoder(train, columns,
                                          args.m_set ? args.m : 1.0);
      break;
    case qenc::EncoderKind::ordinal:
      enc = qenc::fit_ordinal_encoder(train, columns, args.seed);
      break;
  }

  qenc::TransformStats stats;
  const qenc::Dataset encoded = qenc::transform(enc, apply, &stats);
  qenc::write_csv(std::filesystem::path(args.out_path), encoded);
  if (!args.dump_path.empty()) {
    write_text_file(args.dump_path, qenc::encoder_to_json(enc) + "\n");
  }
  std::cout << "encoded " << encoded.rows() << " rows to " << args.out_path
            << " (" << enc.output_names.size() << " encoded columns)\n";
  if (stats.unseen > 0) {
    std::cout << "warning: " << stats.unseen
              << " cells had categories unseen at fit time\n";
  }
  return 0;
}

std::string mean_std_display(const std::vector<double>& scores) {
  if (scores.empty()) return "n/a";
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sd = scores.size() > 1
                        ? std::sqrt(ss / static_cast<double>(scores.size() - 1))
                        : 0.0;
  std::ostringstream out;
  out << std::setprecision(6) << mean << " +/- " << std::setprecision(4) << sd;
  return out.str();
}

int cmd_benchmark(RunConfig config) {
  if (!config.source_set) throw std::invalid_argument("no dataset source given");
  if (config.encoders.empty()) throw std::invalid_argument("no encoders given");
  for (std::size_t i = 0; i < config.encoders.size(); ++i) {
    for (std::size_t j = i + 1; j < config.encoders.size(); ++j) {
      if (config.encoders[i].kind == config.encoders[j].kind) {
        throw std::invalid_argument(
            "duplicate encoder '" +
            std::string(qenc::to_string(config.encoders[i].kind)) + "'");
      }
    }
  }
  const bool has_reference =
      std::any_of(config.encoders.begin(), config.encoders.end(),
                  [&](const EncoderEntry& e) {
                    return qenc::to_string(e.kind) == config.reference;
                  });
  if (config.encoders.size() > 1 && !has_reference) {
    throw std::invalid_argument("reference encoder '" + config.reference +
                                "' is not in the encoder list");
  }
  if (!config.source.synthetic && config.source.schema.target.empty()) {
    throw std::invalid_argument("csv dataset needs a target column");
  }
  if (config.source.synthetic && !config.source.cauchy_seed_set) {
    config.source.cauchy.seed = config.seed;
  }
  config.plan.seed = config.seed;
  if (config.out_csv.empty()) {
    config.out_csv = std::filesystem::path(config.out_json)
                         .replace_extension(".csv")
                         .string();
  }

  const qenc::Dataset data =
      config.source.synthetic
          ? qenc::generate_cauchy_dataset(config.source.cauchy)
          : qenc::load_csv(config.source.csv_path, config.source.schema);
  data.validate();
  const std::string dataset_id = dataset_id_of(config);

  std::vector<FamilyOutcome> outcomes;
  outcomes.reserve(config.encoders.size());
  for (const EncoderEntry& entry : config.encoders) {
    outcomes.push_back(evaluate_family(data, entry, config, dataset_id));
  }

  const FamilyOutcome* reference = nullptr;
  for (const FamilyOutcome& outcome : outcomes) {
    if (qenc::to_string(outcome.entry.kind) == config.reference) {
      reference = &outcome;
    }
  }

  // Paired comparisons on the best config of each family, aligned by
  // (repeat, fold), both sides ok.
  json comparisons = json::array();
  struct ComparisonRow {
    std::string encoder;
    double p_value;
    double p_q;
  };
  std::vector<ComparisonRow> rows;
  if (reference != nullptr && reference->report.best_config) {
    const auto& ref_scores =
        reference->report.configs[*reference->report.best_config].scores;
    for (const FamilyOutcome& outcome : outcomes) {
      if (&outcome == reference || !outcome.report.best_config) continue;
      const auto& enc_scores =
          outcome.report.configs[*outcome.report.best_config].scores;
      std::vector<double> diffs;
      for (std::size_t i = 0; i < enc_scores.size(); ++i) {
        if (enc_scores[i].ok && ref_scores[i].ok) {
          diffs.push_back(enc_scores[i].score - ref_scores[i].score);
        }
      }
      if (diffs.empty()) continue;
      const qenc::WilcoxonResult test = qenc::wilcoxon_signed_rank(diffs);
      const double p_q = qenc::outperformance_probability(diffs);
      comparisons.push_back(
          {{"encoder", outcome.report.encoder_id},
           {"reference", reference->report.encoder_id},
           {"n_pairs", diffs.size()},
           {"w_statistic", test.statistic},
           {"p_value", test.p_value},
           {"exact", test.exact},
           {"degenerate", test.degenerate},
           {"outperformance_probability", p_q}});
      rows.push_back({outcome.report.encoder_id, test.p_value, p_q});
    }
  }

  json dataset_info = {{"id", dataset_id}, {"rows", data.rows()}};
  json cardinalities = json::object();
  for (const auto& name : data.cat_names) {
    cardinalities[name] = qenc::cardinality(data, name);
  }
  dataset_info["cardinality"] = std::move(cardinalities);

  std::size_t failed_splits = 0;
  json encoder_reports = json::array();
  std::vector<qenc::CvReport> raw_reports;
  for (const FamilyOutcome& outcome : outcomes) {
    failed_splits += outcome.report.failed_splits;
    json entry = json::parse(qenc::cv_report_to_json(outcome.report, 0));
    entry["alpha"] = outcome.alpha;
    if (!outcome.alpha_candidates.empty()) {
      entry["alpha_candidates"] = outcome.alpha_candidates;
    }
    encoder_reports.push_back(std::move(entry));
    raw_reports.push_back(outcome.report);
  }

  const json report = {{"tool",
                        {{"name", qenc::kToolName},
                         {"version", qenc::kToolVersion},
                         {"prng", qenc::kRngVersion}}},
                       {"config", config_to_json(config)},
                       {"dataset", std::move(dataset_info)},
                       {"encoders", std::move(encoder_reports)},
                       {"comparisons", comparisons},
                       {"warnings", {{"failed_splits", failed_splits}}}};
  write_text_file(config.out_json, report.dump(2) + "\n");
  {
    std::ofstream csv_out(config.out_csv, std::ios::binary);
    if (!csv_out) {
      throw std::runtime_error("cannot open output '" + config.out_csv + "'");
    }
    qenc::write_scores_csv(csv_out, raw_reports);
  }

  std::cout << "dataset: " << dataset_id << " rows=" << data.rows() << "\n";
  for (const auto& name : data.cat_names) {
    std::cout << "cardinality " << name << " = "
              << qenc::cardinality(data, name) << "\n";
  }
  const std::string metric_name(qenc::to_string(config.plan.metric));
  std::cout << "\nencoder scores (" << metric_name << ", best config):\n";
  for (const FamilyOutcome& outcome : outcomes) {
    std::cout << "  " << std::left << std::setw(16)
              << outcome.report.encoder_id;
    if (outcome.report.best_config) {
      const auto& best = outcome.report.configs[*outcome.report.best_config];
      std::cout << std::setw(22) << best.config.id
                << mean_std_display(outcome.report.best_scores());
      if (!config.alpha_grid.empty()) {
        std::cout << "  (alpha=" << outcome.alpha << ")";
      }
    } else {
      std::cout << "all splits failed";
    }
    std::cout << "\n";
  }
  if (!rows.empty()) {
    std::cout << "\ndataset,encoder,p-value,P_Q\n";
    for (const ComparisonRow& row : rows) {
      std::cout << dataset_id << ',' << row.encoder << ','
                << std::setprecision(4) << row.p_value << ','
                << std::setprecision(3) << row.p_q << "\n";
    }
  }
  if (failed_splits > 0) {
    std::cout << "\nwarning: " << failed_splits << " failed splits recorded\n";
  }
  std::cout << "\nreport: " << config.out_json << "\nscores:  " << config.out_csv
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantile-based target encoding toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version",
                       std::string(qenc::kToolName) + " " + qenc::kToolVersion);

  // --- synth ---
  auto* synth = app.add_subcommand(
      "synth", "generate the long-tailed synthetic dataset as CSV");
  std::uint64_t synth_n = 0;
  std::string synth_out;
  qenc::CauchyConfig synth_cfg;
  int synth_round = 0;
  synth->add_option("--n", synth_n, "number of rows")->required();
  synth->add_option("--out", synth_out, "output CSV path")->required();
  synth->add_option("--seed", synth_cfg.seed, "generator seed");
  synth->add_option("--low", synth_cfg.center_low, "center range low");
  synth->add_option("--high", synth_cfg.center_high, "center range high");
  synth->add_option("--scale1", synth_cfg.scale1, "x1 scale");
  synth->add_option("--scale2", synth_cfg.scale2, "x2 scale");
  synth->add_option("--noise", synth_cfg.noise_sigma, "gaussian noise sigma");
  auto* round_opt = synth->add_option(
      "--round", synth_round, "label rounding decimals (omit for full precision)");
  synth->callback([&] {
    synth_cfg.n_rows = static_cast<std::size_t>(synth_n);
    if (round_opt->count() > 0) synth_cfg.rounding_decimals = synth_round;
    cmd_synth(synth_cfg, synth_out);
  });

  // --- encode ---
  auto* encode = app.add_subcommand(
      "encode", "fit an encoder on a training CSV and apply it to another");
  EncodeArgs enc_args;
  std::uint64_t enc_seed = 0;
  encode->add_option("--train", enc_args.train_path, "training CSV")->required();
  encode->add_option("--apply", enc_args.apply_path, "CSV to transform")
      ->required();
  encode->add_option("--out", enc_args.out_path, "encoded output CSV")
      ->required();
  encode->add_option("--cat", enc_args.schema.categorical,
                     "categorical columns")
      ->required()
      ->delimiter(',');
  encode->add_option("--num", enc_args.schema.numeric, "numeric columns")
      ->delimiter(',');
  encode->add_option("--target", enc_args.schema.target, "target column")
      ->required();
  encode->add_option("--encoder", enc_args.encoder,
                     "quantile|summary|target_mean|m_estimate_mean|ordinal");
  encode->add_option("--p", enc_args.p, "quantile level (quantile encoder)");
  encode->add_option("--quantiles", enc_args.quantiles,
                     "levels for the summary encoder")
      ->delimiter(',');
  auto* m_opt = encode->add_option("--m", enc_args.m, "regularization strength");
  auto* enc_seed_opt =
      encode->add_option("--seed", enc_seed, "seed (ordinal shuffling)");
  encode->add_option("--dump-encoder", enc_args.dump_path,
                     "write the fitted encoder as JSON");
  encode->callback([&] {
    enc_args.m_set = m_opt->count() > 0;
    if (enc_seed_opt->count() > 0) enc_args.seed = enc_seed;
    cmd_encode(enc_args);
  });

  // --- benchmark ---
  auto* bench = app.add_subcommand(
      "benchmark", "cross-validated encoder comparison with Wilcoxon and P_Q");
  std::string config_path;
  std::string data_path;
  std::uint64_t bench_synth_n = 0;
  int bench_round = 0;
  std::vector<std::string> cat_cols;
  std::vector<std::string> num_cols;
  std::string target_col;
  std::vector<std::string> encoder_names;
  std::string reference;
  std::string metric_name;
  std::uint64_t folds = 0;
  std::uint64_t repeats = 0;
  std::uint64_t seed = 0;
  std::vector<double> grid_m;
  std::vector<double> grid_p;
  double alpha = 0.0;
  double l1_ratio = 0.0;
  std::string out_json;
  std::string out_csv;

  auto* config_opt =
      bench->add_option("--config", config_path, "JSON run configuration");
  auto* data_opt = bench->add_option("--data", data_path, "dataset CSV path");
  auto* synth_n_opt = bench->add_option("--synth-n", bench_synth_n,
                                        "rows of synthetic data instead of --data");
  auto* round_opt2 =
      bench->add_option("--synth-round", bench_round, "synthetic label rounding");
  auto* cat_opt =
      bench->add_option("--cat", cat_cols, "categorical columns")->delimiter(',');
  auto* num_opt =
      bench->add_option("--num", num_cols, "numeric columns")->delimiter(',');
  auto* target_opt = bench->add_option("--target", target_col, "target column");
  auto* encoder_opt = bench->add_option("--encoder", encoder_names,
                                        "encoders to compare (comma list)")
                          ->delimiter(',');
  auto* reference_opt =
      bench->add_option("--reference", reference, "reference encoder");
  auto* metric_opt = bench->add_option("--metric", metric_name, "mae|mse");
  auto* folds_opt = bench->add_option("--folds", folds, "CV folds");
  auto* repeats_opt = bench->add_option("--repeats", repeats, "CV repeats");
  auto* seed_opt = bench->add_option("--seed", seed, "run seed");
  auto* grid_m_opt =
      bench->add_option("--grid-m", grid_m, "m grid override")->delimiter(',');
  auto* grid_p_opt =
      bench->add_option("--grid-p", grid_p, "quantile grid override")
          ->delimiter(',');
  auto* alpha_opt = bench->add_option("--alpha", alpha, "elastic-net alpha");
  auto* l1_opt = bench->add_option("--l1-ratio", l1_ratio, "elastic-net l1 ratio");
  auto* out_opt = bench->add_option("--out", out_json, "report JSON path");
  auto* out_csv_opt =
      bench->add_option("--out-csv", out_csv, "flat score CSV path");

  bench->callback([&] {
    RunConfig config;
    if (config_opt->count() > 0) config = load_config_file(config_path);

    if (data_opt->count() > 0) {
      config.source_set = true;
      config.source.synthetic = false;
      config.source.csv_path = data_path;
    }
    if (synth_n_opt->count() > 0) {
      if (data_opt->count() > 0) {
        throw std::invalid_argument("use either --data or --synth-n");
      }
      config.source_set = true;
      config.source.synthetic = true;
      config.source.cauchy.n_rows = static_cast<std::size_t>(bench_synth_n);
    }
    if (round_opt2->count() > 0) {
      config.source.cauchy.rounding_decimals = bench_round;
    }
    if (cat_opt->count() > 0) config.source.schema.categorical = cat_cols;
    if (num_opt->count() > 0) config.source.schema.numeric = num_cols;
    if (target_opt->count() > 0) config.source.schema.target = target_col;
    if (encoder_opt->count() > 0) {
      config.encoders.clear();
      for (const std::string& name : encoder_names) {
        config.encoders.push_back(entry_with_defaults(kind_or_throw(name)));
      }
    }
    if (config.encoders.empty()) {
      // paper comparison pair by default
      config.encoders.push_back(
          entry_with_defaults(qenc::EncoderKind::quantile));
      config.encoders.push_back(
          entry_with_defaults(qenc::EncoderKind::target_mean));
    }
    if (grid_m_opt->count() > 0 || grid_p_opt->count() > 0) {
      for (EncoderEntry& entry : config.encoders) {
        const bool uses_p = entry.kind == qenc::EncoderKind::quantile ||
                            entry.kind == qenc::EncoderKind::summary;
        const bool uses_m = uses_p ||
                            entry.kind == qenc::EncoderKind::m_estimate_mean;
        if (grid_m_opt->count() > 0 && uses_m) entry.grid.m_values = grid_m;
        if (grid_p_opt->count() > 0 && uses_p) entry.grid.p_values = grid_p;
      }
    }
    if (reference_opt->count() > 0) config.reference = reference;
    if (metric_opt->count() > 0) {
      const auto metric = qenc::metric_from(metric_name);
      if (!metric) throw std::invalid_argument("unknown metric '" + metric_name + "'");
      config.plan.metric = *metric;
    }
    if (folds_opt->count() > 0) config.plan.n_folds = folds;
    if (repeats_opt->count() > 0) config.plan.n_repeats = repeats;
    if (seed_opt->count() > 0) config.seed = seed;
    if (alpha_opt->count() > 0) {
      config.model.alpha = alpha;
      config.alpha_grid.clear();
    }
    if (l1_opt->count() > 0) config.model.l1_ratio = l1_ratio;
    if (out_opt->count() > 0) config.out_json = out_json;
    if (out_csv_opt->count() > 0) config.out_csv = out_csv;

    cmd_benchmark(std::move(config));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
