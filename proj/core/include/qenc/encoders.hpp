#ifndef QENC_ENCODERS_HPP_
#define QENC_ENCODERS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qenc/dataset.hpp"

namespace qenc {

// Linearly interpolated quantile of `values` at probability p: with the
// sorted sample v_0..v_{n-1} and h = (n-1)*p, returns
// v_floor(h) + frac(h) * (v_floor(h)+1 - v_floor(h)).
// Throws: "empty sample", "non-finite input", "invalid probability".
double quantile(std::span<const double> values, double p);

// Same, but `sorted` must already be ascending (not re-checked).
double quantile_sorted(std::span<const double> sorted, double p);

// Additive-smoothing blend (local*n_i + global*m) / (n_i + m). The result is
// clamped between local and global; m == 0 returns local exactly and n_i == 0
// returns global exactly. Throws "degenerate blend" when n_i + m == 0.
double m_estimate_blend(double local, std::uint64_t n_i, double global,
                        double m);

struct QuantileSpec {
  double p = 0.5;
  double m = 1.0;
};

struct SummarySpec {
  std::vector<double> quantiles{0.4, 0.5, 0.6};  // strictly increasing
  double m = 100.0;
};

enum class EncoderKind { quantile, summary, target_mean, m_estimate_mean, ordinal };

std::string_view to_string(EncoderKind kind);
std::optional<EncoderKind> encoder_kind_from(std::string_view name);

// Per-category statistics for one categorical column. local_stats holds one
// value per requested statistic (one quantile level each, or the mean);
// global_stats is the same statistic over all training targets.
struct CategoryTable {
  struct Entry {
    std::uint64_t count = 0;
    std::vector<double> local_stats;
    bool operator==(const Entry&) const = default;
  };
  std::map<std::string, Entry, std::less<>> entries;
  std::vector<double> global_stats;
  std::uint64_t total_count = 0;
  bool operator==(const CategoryTable&) const = default;
};

// A trained encoder. transform() is a pure function of this state; it never
// reads targets of the data being transformed.
struct FittedEncoder {
  EncoderKind kind = EncoderKind::quantile;
  double m = 0.0;
  std::vector<double> quantiles;      // statistic levels; empty for mean/ordinal
  std::vector<std::string> columns;   // categorical columns fit on
  std::map<std::string, CategoryTable, std::less<>> tables;
  std::map<std::string, std::map<std::string, std::int64_t, std::less<>>,
           std::less<>>
      codes;                          // ordinal only
  std::vector<std::string> output_names;
  bool operator==(const FittedEncoder&) const = default;
};

FittedEncoder fit_quantile_encoder(const Dataset& train,
                                   std::span<const std::string> columns,
                                   const QuantileSpec& spec);

// One output column per quantile level, named `<col>__q<p>`.
FittedEncoder fit_summary_encoder(const Dataset& train,
                                  std::span<const std::string> columns,
                                  const SummarySpec& spec);

// m == 0 is the classical target (mean) encoder, m > 0 its M-estimate form.
FittedEncoder fit_target_mean_encoder(const Dataset& train,
                                      std::span<const std::string> columns,
                                      double m);

// Distinct categories to distinct integers, first-appearance order; with a
// seed the codes are a seeded permutation instead.
FittedEncoder fit_ordinal_encoder(const Dataset& train,
                                  std::span<const std::string> columns,
                                  std::optional<std::uint64_t> seed = {});

// Blended statistic(s) the label maps to at transform time. Unseen labels get
// the global statistics (ordinal: -1).
std::vector<double> encoded_values(const FittedEncoder& enc,
                                   std::string_view column,
                                   std::string_view label);

struct TransformStats {
  std::size_t unseen = 0;  // row-occurrences of labels absent at fit time
};

// Replaces the fitted categorical columns with the encoder's numeric output
// columns (encoded outputs first, then pass-through numeric columns).
// Remaining categorical columns and the target pass through unchanged.
Dataset transform(const FittedEncoder& enc, const Dataset& data,
                  TransformStats* stats = nullptr);

// JSON document with sorted keys; stable for golden tests.
std::string encoder_to_json(const FittedEncoder& enc, int indent = 2);
FittedEncoder encoder_from_json(std::string_view json_text);

}  // namespace qenc

#endif  // QENC_ENCODERS_HPP_
