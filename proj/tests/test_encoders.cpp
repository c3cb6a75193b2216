#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qenc/encoders.hpp"
#include "qenc/rng.hpp"
#include "support/test_helpers.hpp"

using namespace qenc;
using namespace qenc::testing;

namespace {

const std::vector<std::string> kCatColumn{"cat"};

Dataset toy4() {
  return one_column_dataset({"a", "a", "a", "b"}, {1, 2, 9, 5});
}

}  // namespace

TEST_CASE("quantile: interpolation and edge probabilities") {
  CHECK(quantile(std::vector<double>{5}, 0.7) == 5);
  CHECK(quantile(std::vector<double>{1, 2, 3}, 0.0) == 1);
  CHECK(quantile(std::vector<double>{1, 2, 3}, 1.0) == 3);
  CHECK(quantile(std::vector<double>{1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile(std::vector<double>{9, 1, 5}, 0.5) == 5);  // unsorted input
}

TEST_CASE("quantile: error cases") {
  CHECK_THROWS_WITH(quantile(std::vector<double>{}, 0.5), "empty sample");
  CHECK_THROWS_WITH(quantile(std::vector<double>{1, std::nan("")}, 0.5),
                    "non-finite input");
  CHECK_THROWS_WITH(quantile(std::vector<double>{1, 2}, 1.5),
                    "invalid probability");
  CHECK_THROWS_WITH(quantile(std::vector<double>{1, 2}, -0.1),
                    "invalid probability");
}

TEST_CASE("quantile: monotone in p and matches the brute-force oracle") {
  SplitMix64 rng(2024);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> values(1 + rng.below(40));
    for (double& v : values) v = rng.uniform(-50.0, 50.0);
    double prev = -1e300;
    for (double p : {0.0, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 1.0}) {
      const double q = quantile(values, p);
      CHECK(q >= prev);
      CHECK(q == doctest::Approx(brute_quantile(values, p)).epsilon(1e-13));
      prev = q;
    }
  }
}

TEST_CASE("m_estimate_blend: spec arithmetic") {
  CHECK(m_estimate_blend(10, 0, 4, 1) == 4);
  CHECK(m_estimate_blend(10, 5, 4, 0) == 10);
  CHECK(m_estimate_blend(10, 1, 4, 1) == 7);
  CHECK_THROWS_WITH(m_estimate_blend(10, 0, 4, 0), "degenerate blend");
}

TEST_CASE("m_estimate_blend: always between local and global") {
  SplitMix64 rng(5);
  for (int rep = 0; rep < 500; ++rep) {
    const double local = rng.uniform(-100, 100);
    const double global = rng.uniform(-100, 100);
    const double m = rng.uniform(0, 200);
    const auto n_i = rng.below(50);
    if (n_i == 0 && m == 0.0) continue;
    const double v = m_estimate_blend(local, n_i, global, m);
    CHECK(v >= std::min(local, global));
    CHECK(v <= std::max(local, global));
  }
}

TEST_CASE("fit_quantile_encoder: per-category medians and global fallback") {
  const Dataset train = toy4();
  const FittedEncoder plain =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});
  const CategoryTable& table = plain.tables.at("cat");
  CHECK(table.entries.at("a").local_stats == std::vector<double>{2});
  CHECK(table.entries.at("a").count == 3);
  CHECK(table.entries.at("b").local_stats == std::vector<double>{5});
  CHECK(table.global_stats == std::vector<double>{3.5});
  CHECK(table.total_count == 4);

  const FittedEncoder smoothed =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 1.0});
  CHECK(encoded_values(smoothed, "cat", "a")[0] == doctest::Approx(2.375));
  CHECK(encoded_values(smoothed, "cat", "b")[0] == doctest::Approx(4.25));
}

TEST_CASE("fit_quantile_encoder: single category equals the global quantile") {
  const Dataset train = one_column_dataset({"only", "only", "only"}, {3, 8, 1});
  for (double p : {0.0, 0.3, 0.5, 1.0}) {
    const FittedEncoder enc =
        fit_quantile_encoder(train, kCatColumn, QuantileSpec{p, 0.0});
    const CategoryTable& table = enc.tables.at("cat");
    CHECK(encoded_values(enc, "cat", "only") == table.global_stats);
  }
}

TEST_CASE("fit_quantile_encoder: error cases") {
  const Dataset train = toy4();
  const std::vector<std::string> missing{"nope"};
  CHECK_THROWS_WITH(fit_quantile_encoder(train, missing, QuantileSpec{}),
                    "unknown column 'nope'");
  Dataset empty;
  empty.add_cat("cat", {});
  CHECK_THROWS_AS(fit_quantile_encoder(empty, kCatColumn, QuantileSpec{}),
                  std::invalid_argument);
  Dataset bad = toy4();
  bad.target[2] = std::nan("");
  CHECK_THROWS_WITH(fit_quantile_encoder(bad, kCatColumn, QuantileSpec{}),
                    "non-finite input");
}

TEST_CASE("fit_summary_encoder: single level reduces to the quantile encoder") {
  const Dataset train = toy4();
  const FittedEncoder summary =
      fit_summary_encoder(train, kCatColumn, SummarySpec{{0.5}, 0.0});
  const FittedEncoder single =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});
  CHECK(summary.tables.at("cat") == single.tables.at("cat"));
  const Dataset out = transform(summary, train);
  CHECK(out.num_names == std::vector<std::string>{"cat__q0.5"});
  CHECK(out.num_cols[0] == transform(single, train).num_cols[0]);
}

TEST_CASE("fit_summary_encoder: three quantiles per category") {
  const Dataset train = toy4();
  const FittedEncoder enc = fit_summary_encoder(
      train, kCatColumn, SummarySpec{{0.25, 0.5, 0.75}, 0.0});
  CHECK(enc.output_names ==
        std::vector<std::string>{"cat__q0.25", "cat__q0.5", "cat__q0.75"});
  CHECK(encoded_values(enc, "cat", "a") == std::vector<double>{1.5, 2, 5.5});
  CHECK(encoded_values(enc, "cat", "b") == std::vector<double>{5, 5, 5});
}

TEST_CASE("fit_summary_encoder: level list validation") {
  const Dataset train = toy4();
  CHECK_THROWS_AS(
      fit_summary_encoder(train, kCatColumn, SummarySpec{{0.5, 0.5}, 0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      fit_summary_encoder(train, kCatColumn, SummarySpec{{0.75, 0.25}, 0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(fit_summary_encoder(train, kCatColumn, SummarySpec{{}, 0.0}),
                  std::invalid_argument);
}

TEST_CASE("fit_target_mean_encoder: means, constants and fixed points") {
  const FittedEncoder means = fit_target_mean_encoder(toy4(), kCatColumn, 0.0);
  CHECK(means.kind == EncoderKind::target_mean);
  CHECK(encoded_values(means, "cat", "a") == std::vector<double>{4});
  CHECK(encoded_values(means, "cat", "b") == std::vector<double>{5});

  const Dataset constant = one_column_dataset({"a", "b"}, {3, 3});
  for (double m : {0.0, 1.0, 100.0}) {
    const FittedEncoder enc = fit_target_mean_encoder(constant, kCatColumn, m);
    CHECK(encoded_values(enc, "cat", "a") == std::vector<double>{3});
    CHECK(encoded_values(enc, "cat", "b") == std::vector<double>{3});
  }

  // Local mean equals the global mean, so the blend is a fixed point.
  const Dataset single = one_column_dataset({"a", "a"}, {1, 5});
  const FittedEncoder enc = fit_target_mean_encoder(single, kCatColumn, 10.0);
  CHECK(enc.kind == EncoderKind::m_estimate_mean);
  CHECK(encoded_values(enc, "cat", "a") == std::vector<double>{3});
}

TEST_CASE("fit_ordinal_encoder: first-appearance order and seeded permutation") {
  const Dataset train =
      one_column_dataset({"b", "a", "b", "c"}, {1, 2, 3, 4});
  const FittedEncoder enc = fit_ordinal_encoder(train, kCatColumn);
  const auto& codes = enc.codes.at("cat");
  CHECK(codes.at("b") == 0);
  CHECK(codes.at("a") == 1);
  CHECK(codes.at("c") == 2);

  const Dataset single = one_column_dataset({"x"}, {1});
  CHECK(fit_ordinal_encoder(single, kCatColumn).codes.at("cat").at("x") == 0);

  // Seeded: still a bijection onto 0..k-1, deterministic per seed.
  const FittedEncoder seeded = fit_ordinal_encoder(train, kCatColumn, 11u);
  const FittedEncoder seeded2 = fit_ordinal_encoder(train, kCatColumn, 11u);
  CHECK(seeded.codes == seeded2.codes);
  std::vector<std::int64_t> values;
  for (const auto& [label, code] : seeded.codes.at("cat")) values.push_back(code);
  std::sort(values.begin(), values.end());
  CHECK(values == std::vector<std::int64_t>{0, 1, 2});
}

TEST_CASE("transform: reproduces fitted values on the training set") {
  const Dataset train = toy4();
  const FittedEncoder enc =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 1.0});
  const Dataset out = transform(enc, train);
  CHECK(out.num_names == std::vector<std::string>{"cat"});
  CHECK(out.num_cols[0] == std::vector<double>{2.375, 2.375, 2.375, 4.25});
  CHECK(out.target == train.target);
  CHECK(out.cat_names.empty());
}

TEST_CASE("transform: unseen categories fall back to the global statistic") {
  const Dataset train = one_column_dataset({"a", "a"}, {1, 3});
  const FittedEncoder enc =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});
  const Dataset apply = one_column_dataset({"z", "a"}, {0, 0});
  TransformStats stats;
  const Dataset out = transform(enc, apply, &stats);
  CHECK(out.num_cols[0][0] == 2);  // global median of {1, 3}
  CHECK(out.num_cols[0][1] == 2);  // seen category, local == global here
  CHECK(stats.unseen == 1);

  const FittedEncoder ordinal = fit_ordinal_encoder(train, kCatColumn);
  const Dataset ord_out = transform(ordinal, apply);
  CHECK(ord_out.num_cols[0] == std::vector<double>{-1, 0});
}

TEST_CASE("transform: missing columns and pass-through behaviour") {
  Dataset train = toy4();
  train.add_num("units", {10, 20, 30, 40});
  train.add_cat("other", {"x", "x", "y", "y"});
  const FittedEncoder enc =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});

  const Dataset out = transform(enc, train);
  CHECK(out.cat_names == std::vector<std::string>{"other"});
  CHECK(out.num_names == std::vector<std::string>{"cat", "units"});
  CHECK(out.num_cols[1] == train.num_cols[0]);
  CHECK(out.target == train.target);

  const Dataset unrelated = one_column_dataset({"a"}, {1}, "different");
  CHECK_THROWS_WITH(transform(enc, unrelated), "unknown column 'cat'");
}

TEST_CASE("empty cells group under the missing label") {
  const Dataset train = one_column_dataset({"", "a", ""}, {1, 5, 3});
  const FittedEncoder enc =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});
  const CategoryTable& table = enc.tables.at("cat");
  CHECK(table.entries.count(kMissingLabel) == 1);
  CHECK(table.entries.at(kMissingLabel).count == 2);
  CHECK(table.entries.at(kMissingLabel).local_stats == std::vector<double>{2});
  // Transform-side empty cells hit the same group.
  const Dataset out = transform(enc, one_column_dataset({""}, {0}));
  CHECK(out.num_cols[0][0] == 2);
}

TEST_CASE("property: encoded values bounded by the training target range") {
  SplitMix64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    const RandomTable table = random_table(rng, 6, 30);
    const Dataset train = one_column_dataset(table.cats, table.ys);
    const double lo = *std::min_element(table.ys.begin(), table.ys.end());
    const double hi = *std::max_element(table.ys.begin(), table.ys.end());
    const double p = rng.uniform(0.0, 1.0);
    const double m = rng.uniform(0.0, 50.0);
    for (const FittedEncoder& enc :
         {fit_quantile_encoder(train, kCatColumn, QuantileSpec{p, m}),
          fit_summary_encoder(train, kCatColumn,
                              SummarySpec{{0.25, 0.5, 0.75}, m}),
          fit_target_mean_encoder(train, kCatColumn, m)}) {
      const Dataset out = transform(enc, train);
      for (const auto& col : out.num_cols) {
        for (double v : col) {
          CHECK(v >= lo);
          CHECK(v <= hi);
        }
      }
    }
  }
}

TEST_CASE("property: shrinkage is monotone from local to global in m") {
  SplitMix64 rng(32);
  for (int rep = 0; rep < 30; ++rep) {
    const RandomTable table = random_table(rng, 5, 25);
    const Dataset train = one_column_dataset(table.cats, table.ys);
    const double p = rng.uniform(0.0, 1.0);
    const FittedEncoder base =
        fit_quantile_encoder(train, kCatColumn, QuantileSpec{p, 0.0});
    const CategoryTable& table_fit = base.tables.at("cat");
    for (const auto& [label, entry] : table_fit.entries) {
      const double local = entry.local_stats[0];
      const double global = table_fit.global_stats[0];
      double prev_distance = std::abs(local - global);
      for (double m : {0.0, 0.5, 1.0, 2.0, 10.0, 1e3, 1e6, 1e9}) {
        const FittedEncoder enc =
            fit_quantile_encoder(train, kCatColumn, QuantileSpec{p, m});
        const double v = encoded_values(enc, "cat", label)[0];
        if (m == 0.0) CHECK(v == local);
        const double distance = std::abs(v - global);
        CHECK(distance <= prev_distance);
        prev_distance = distance;
        if (m == 1e9) {
          CHECK(v == doctest::Approx(global).epsilon(1e-6));
        }
      }
    }
  }
}

TEST_CASE("property: fitted statistics are invariant to row permutation") {
  SplitMix64 rng(33);
  for (int rep = 0; rep < 25; ++rep) {
    const RandomTable table = random_table(rng, 6, 30);
    const Dataset train = one_column_dataset(table.cats, table.ys);
    std::vector<std::size_t> order = shuffled_indices(table.ys.size(), rng);
    const Dataset shuffled = slice(train, order);

    CHECK(fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.3, 2.0}).tables ==
          fit_quantile_encoder(shuffled, kCatColumn, QuantileSpec{0.3, 2.0}).tables);
    CHECK(fit_target_mean_encoder(train, kCatColumn, 1.0).tables ==
          fit_target_mean_encoder(shuffled, kCatColumn, 1.0).tables);
    CHECK(fit_summary_encoder(train, kCatColumn, SummarySpec{{0.4, 0.6}, 5.0}).tables ==
          fit_summary_encoder(shuffled, kCatColumn, SummarySpec{{0.4, 0.6}, 5.0}).tables);

    // Ordinal code assignment depends on row order by design; only the code
    // set is invariant.
    const auto codes = fit_ordinal_encoder(train, kCatColumn).codes.at("cat");
    const auto codes_shuffled =
        fit_ordinal_encoder(shuffled, kCatColumn).codes.at("cat");
    CHECK(codes.size() == codes_shuffled.size());
  }
}

TEST_CASE("property: fitted values match the brute-force oracle") {
  SplitMix64 rng(34);
  for (int rep = 0; rep < 60; ++rep) {
    const RandomTable table = random_table(rng, 6, 30);
    const Dataset train = one_column_dataset(table.cats, table.ys);
    const double ps[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double ms[] = {0.0, 1.0, 10.0, 50.0};
    const double p = ps[rng.below(5)];
    const double m = ms[rng.below(4)];
    const FittedEncoder enc =
        fit_quantile_encoder(train, kCatColumn, QuantileSpec{p, m});
    for (const auto& [label, entry] : enc.tables.at("cat").entries) {
      const double expected =
          brute_encoded_value(table.cats, table.ys, label, p, m);
      const double actual = encoded_values(enc, "cat", label)[0];
      CHECK(actual == doctest::Approx(expected).epsilon(1e-12));
    }
    const double unseen_expected =
        brute_encoded_value(table.cats, table.ys, "never-seen", p, m);
    CHECK(encoded_values(enc, "cat", "never-seen")[0] ==
          doctest::Approx(unseen_expected).epsilon(1e-12));
  }
}

TEST_CASE("property: the median encoding minimizes the absolute-error sum") {
  SplitMix64 rng(35);
  for (int rep = 0; rep < 20; ++rep) {
    const RandomTable table = random_table(rng, 4, 20);
    const Dataset train = one_column_dataset(table.cats, table.ys);
    const FittedEncoder enc =
        fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 0.0});
    for (const auto& [label, entry] : enc.tables.at("cat").entries) {
      std::vector<double> ys;
      for (std::size_t i = 0; i < table.cats.size(); ++i) {
        if (category_label(table.cats[i]) == label) ys.push_back(table.ys[i]);
      }
      const double center = entry.local_stats[0];
      double center_cost = 0.0;
      for (double y : ys) center_cost += std::abs(y - center);
      const double lo = *std::min_element(ys.begin(), ys.end());
      const double hi = *std::max_element(ys.begin(), ys.end());
      for (int g = 0; g <= 1000; ++g) {
        const double c = lo + (hi - lo) * g / 1000.0;
        double cost = 0.0;
        for (double y : ys) cost += std::abs(y - c);
        CHECK(center_cost <= cost + 1e-9);
      }
    }
  }
}

TEST_CASE("property: transform ignores the targets of the data it encodes") {
  SplitMix64 rng(36);
  const RandomTable table = random_table(rng, 6, 30);
  const Dataset train = one_column_dataset(table.cats, table.ys);
  const FittedEncoder enc =
      fit_quantile_encoder(train, kCatColumn, QuantileSpec{0.5, 1.0});

  Dataset perturbed = train;
  for (double& y : perturbed.target) y += 1000.0;
  const Dataset a = transform(enc, train);
  const Dataset b = transform(enc, perturbed);
  CHECK(a.num_cols == b.num_cols);  // bitwise identical encodings
}

TEST_CASE("encoder JSON round-trips and is byte-stable") {
  Dataset train = toy4();
  train.add_cat("other", {"x", "", "y", "x"});
  const std::vector<std::string> both{"cat", "other"};
  const FittedEncoder enc =
      fit_summary_encoder(train, both, SummarySpec{{0.25, 0.5, 0.75}, 2.0});
  const std::string text = encoder_to_json(enc);
  const FittedEncoder parsed = encoder_from_json(text);
  CHECK(parsed == enc);
  CHECK(encoder_to_json(parsed) == text);

  const FittedEncoder ordinal = fit_ordinal_encoder(train, both, 17u);
  const FittedEncoder ordinal_parsed = encoder_from_json(encoder_to_json(ordinal));
  CHECK(ordinal_parsed == ordinal);
}
