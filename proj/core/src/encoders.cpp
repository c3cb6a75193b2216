#include "qenc/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "qenc/format.hpp"
#include "qenc/rng.hpp"

namespace qenc {
namespace {

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("invalid probability");
}

void check_regularization(double m) {
  if (!(m >= 0.0) || !std::isfinite(m)) {
    throw std::invalid_argument("invalid regularization strength");
  }
}

// Group row indices by category label, preserving first-appearance order of
// the groups.
std::vector<std::pair<std::string_view, std::vector<std::size_t>>> group_by_label(
    const std::vector<std::string>& column) {
  std::vector<std::pair<std::string_view, std::vector<std::size_t>>> groups;
  std::unordered_map<std::string_view, std::size_t> where;
  where.reserve(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    const std::string_view label = category_label(column[i]);
    auto [it, inserted] = where.try_emplace(label, groups.size());
    if (inserted) groups.emplace_back(label, std::vector<std::size_t>{});
    groups[it->second].second.push_back(i);
  }
  return groups;
}

const std::vector<std::string>& column_or_throw(const Dataset& data,
                                                const std::string& name) {
  const auto* col = data.find_cat(name);
  if (col == nullptr) throw std::invalid_argument("unknown column '" + name + "'");
  return *col;
}

void check_fit_inputs(const Dataset& train, std::span<const std::string> columns) {
  train.validate();
  if (train.rows() == 0) throw std::invalid_argument("empty dataset");
  if (columns.empty()) throw std::invalid_argument("no columns to encode");
  for (const auto& name : columns) column_or_throw(train, name);
}

std::vector<double> stats_of(std::span<const double> sorted_targets,
                             std::span<const double> levels, bool use_mean) {
  if (use_mean) {
    double sum = 0.0;
    for (double y : sorted_targets) sum += y;
    return {sum / static_cast<double>(sorted_targets.size())};
  }
  std::vector<double> out;
  out.reserve(levels.size());
  for (double p : levels) out.push_back(quantile_sorted(sorted_targets, p));
  return out;
}

// Shared fit path for quantile, summary and mean kinds. `levels` is empty for
// the mean kinds.
FittedEncoder fit_statistic_encoder(const Dataset& train,
                                    std::span<const std::string> columns,
                                    EncoderKind kind,
                                    std::span<const double> levels, double m) {
  check_fit_inputs(train, columns);
  const bool use_mean =
      kind == EncoderKind::target_mean || kind == EncoderKind::m_estimate_mean;

  std::vector<double> sorted_all(train.target);
  std::sort(sorted_all.begin(), sorted_all.end());
  const std::vector<double> global = stats_of(sorted_all, levels, use_mean);

  FittedEncoder enc;
  enc.kind = kind;
  enc.m = m;
  enc.quantiles.assign(levels.begin(), levels.end());
  enc.columns.assign(columns.begin(), columns.end());

  for (const auto& name : columns) {
    const auto& col = column_or_throw(train, name);
    CategoryTable table;
    table.total_count = train.rows();
    table.global_stats = global;
    for (const auto& [label, rows] : group_by_label(col)) {
      std::vector<double> ys;
      ys.reserve(rows.size());
      for (std::size_t i : rows) ys.push_back(train.target[i]);
      std::sort(ys.begin(), ys.end());
      CategoryTable::Entry entry;
      entry.count = rows.size();
      entry.local_stats = stats_of(ys, levels, use_mean);
      table.entries.emplace(std::string(label), std::move(entry));
    }
    enc.tables.emplace(name, std::move(table));

    if (kind == EncoderKind::summary) {
      for (double p : levels) {
        enc.output_names.push_back(name + "__q" + format_double(p));
      }
    } else {
      enc.output_names.push_back(name);
    }
  }
  return enc;
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  check_probability(p);
  const std::size_t n = sorted.size();
  const double h = static_cast<double>(n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  const double v = sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
  return std::clamp(v, sorted[lo], sorted[lo + 1]);
}

double quantile(std::span<const double> values, double p) {
  if (values.empty()) throw std::invalid_argument("empty sample");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
  }
  check_probability(p);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return quantile_sorted(sorted, p);
}

double m_estimate_blend(double local, std::uint64_t n_i, double global,
                        double m) {
  check_regularization(m);
  if (n_i == 0 && m == 0.0) throw std::invalid_argument("degenerate blend");
  if (m == 0.0) return local;
  if (n_i == 0) return global;
  const double n = static_cast<double>(n_i);
  const double v = (local * n + global * m) / (n + m);
  return std::clamp(v, std::min(local, global), std::max(local, global));
}

std::string_view to_string(EncoderKind kind) {
  switch (kind) {
    case EncoderKind::quantile: return "quantile";
    case EncoderKind::summary: return "summary";
    case EncoderKind::target_mean: return "target_mean";
    case EncoderKind::m_estimate_mean: return "m_estimate_mean";
    case EncoderKind::ordinal: return "ordinal";
  }
  return "unknown";
}

std::optional<EncoderKind> encoder_kind_from(std::string_view name) {
  if (name == "quantile") return EncoderKind::quantile;
  if (name == "summary") return EncoderKind::summary;
  if (name == "target_mean") return EncoderKind::target_mean;
  if (name == "m_estimate_mean") return EncoderKind::m_estimate_mean;
  if (name == "ordinal") return EncoderKind::ordinal;
  return std::nullopt;
}

FittedEncoder fit_quantile_encoder(const Dataset& train,
                                   std::span<const std::string> columns,
                                   const QuantileSpec& spec) {
  check_probability(spec.p);
  check_regularization(spec.m);
  const double levels[] = {spec.p};
  return fit_statistic_encoder(train, columns, EncoderKind::quantile, levels,
                               spec.m);
}

FittedEncoder fit_summary_encoder(const Dataset& train,
                                  std::span<const std::string> columns,
                                  const SummarySpec& spec) {
  if (spec.quantiles.empty()) throw std::invalid_argument("empty quantile list");
  for (double p : spec.quantiles) check_probability(p);
  for (std::size_t i = 1; i < spec.quantiles.size(); ++i) {
    if (!(spec.quantiles[i] > spec.quantiles[i - 1])) {
      throw std::invalid_argument("quantile levels must be strictly increasing");
    }
  }
  check_regularization(spec.m);
  return fit_statistic_encoder(train, columns, EncoderKind::summary,
                               spec.quantiles, spec.m);
}

FittedEncoder fit_target_mean_encoder(const Dataset& train,
                                      std::span<const std::string> columns,
                                      double m) {
  check_regularization(m);
  const EncoderKind kind =
      m == 0.0 ? EncoderKind::target_mean : EncoderKind::m_estimate_mean;
  return fit_statistic_encoder(train, columns, kind, {}, m);
}

FittedEncoder fit_ordinal_encoder(const Dataset& train,
                                  std::span<const std::string> columns,
                                  std::optional<std::uint64_t> seed) {
  check_fit_inputs(train, columns);
  FittedEncoder enc;
  enc.kind = EncoderKind::ordinal;
  enc.columns.assign(columns.begin(), columns.end());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const auto& col = column_or_throw(train, columns[c]);
    const auto groups = group_by_label(col);
    std::vector<std::int64_t> assigned(groups.size());
    std::iota(assigned.begin(), assigned.end(), std::int64_t{0});
    if (seed) {
      SplitMix64 rng(derive_seed(*seed, c));
      shuffle(std::span<std::int64_t>(assigned), rng);
    }
    std::map<std::string, std::int64_t, std::less<>> code_map;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      code_map.emplace(std::string(groups[g].first), assigned[g]);
    }
    enc.codes.emplace(columns[c], std::move(code_map));
    enc.output_names.push_back(columns[c]);
  }
  return enc;
}

std::vector<double> encoded_values(const FittedEncoder& enc,
                                   std::string_view column,
                                   std::string_view label) {
  const std::string_view norm = category_label(label);
  if (enc.kind == EncoderKind::ordinal) {
    const auto col_it = enc.codes.find(column);
    if (col_it == enc.codes.end()) {
      throw std::invalid_argument("unknown column '" + std::string(column) + "'");
    }
    const auto it = col_it->second.find(norm);
    return {it == col_it->second.end() ? -1.0
                                       : static_cast<double>(it->second)};
  }
  const auto col_it = enc.tables.find(column);
  if (col_it == enc.tables.end()) {
    throw std::invalid_argument("unknown column '" + std::string(column) + "'");
  }
  const CategoryTable& table = col_it->second;
  const auto it = table.entries.find(norm);
  if (it == table.entries.end()) return table.global_stats;  // unseen label
  const CategoryTable::Entry& entry = it->second;
  std::vector<double> out(entry.local_stats.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = m_estimate_blend(entry.local_stats[k], entry.count,
                              table.global_stats[k], enc.m);
  }
  return out;
}

Dataset transform(const FittedEncoder& enc, const Dataset& data,
                  TransformStats* stats) {
  data.validate();
  TransformStats local_stats;
  TransformStats& st = stats != nullptr ? *stats : local_stats;
  st.unseen = 0;

  const std::size_t n = data.rows();
  Dataset out;
  out.target_name = data.target_name;
  out.target = data.target;

  // Categorical columns not covered by the encoder pass through.
  for (std::size_t i = 0; i < data.cat_names.size(); ++i) {
    const bool encoded =
        std::find(enc.columns.begin(), enc.columns.end(), data.cat_names[i]) !=
        enc.columns.end();
    if (!encoded) out.add_cat(data.cat_names[i], data.cat_cols[i]);
  }

  for (const auto& name : enc.columns) {
    const auto& col = column_or_throw(data, name);
    if (enc.kind == EncoderKind::ordinal) {
      const auto& code_map = enc.codes.at(name);
      std::vector<double> values(n);
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = code_map.find(category_label(col[i]));
        if (it == code_map.end()) {
          values[i] = -1.0;
          ++st.unseen;
        } else {
          values[i] = static_cast<double>(it->second);
        }
      }
      out.add_num(name, std::move(values));
      continue;
    }

    const CategoryTable& table = enc.tables.at(name);
    const std::size_t width = table.global_stats.size();
    std::vector<std::vector<double>> outputs(width, std::vector<double>(n));
    // Blend once per distinct label, then fan out to rows.
    std::unordered_map<std::string_view, std::vector<double>> cache;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string_view label = category_label(col[i]);
      if (table.entries.find(label) == table.entries.end()) ++st.unseen;
      auto [it, inserted] = cache.try_emplace(label);
      if (inserted) it->second = encoded_values(enc, name, label);
      for (std::size_t k = 0; k < width; ++k) outputs[k][i] = it->second[k];
    }
    if (enc.kind == EncoderKind::summary) {
      for (std::size_t k = 0; k < width; ++k) {
        out.add_num(name + "__q" + format_double(enc.quantiles[k]),
                    std::move(outputs[k]));
      }
    } else {
      out.add_num(name, std::move(outputs[0]));
    }
  }

  for (std::size_t i = 0; i < data.num_names.size(); ++i) {
    out.add_num(data.num_names[i], data.num_cols[i]);
  }
  return out;
}

}  // namespace qenc
