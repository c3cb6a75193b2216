#include "qenc/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qenc/format.hpp"
#include "qenc/rng.hpp"

namespace qenc {
namespace {

void check_config(const CauchyConfig& cfg) {
  if (cfg.n_rows == 0) throw std::invalid_argument("n_rows must be positive");
  if (!(cfg.center_low < cfg.center_high)) {
    throw std::invalid_argument("center_low must be below center_high");
  }
  if (!(cfg.scale1 > 0.0) || !(cfg.scale2 > 0.0)) {
    throw std::invalid_argument("scales must be positive");
  }
  if (!(cfg.noise_sigma >= 0.0) || !std::isfinite(cfg.noise_sigma)) {
    throw std::invalid_argument("noise_sigma must be non-negative");
  }
}

double cauchy_draw(SplitMix64& rng, double location, double scale) {
  const double u = rng.next_double();
  return location + scale * std::tan(std::numbers::pi * (u - 0.5));
}

std::string label_of(double value, std::optional<int> decimals) {
  if (!decimals) return format_double(value);
  const double factor = std::pow(10.0, *decimals);
  return format_double(std::round(value * factor) / factor);
}

}  // namespace

std::vector<CauchyRow> generate_cauchy_rows(const CauchyConfig& cfg) {
  check_config(cfg);
  SplitMix64 rng(cfg.seed);
  std::vector<CauchyRow> rows(cfg.n_rows);
  for (CauchyRow& row : rows) {
    // Fixed draw order: center, x1, x2, noise (noise always drawn so the
    // feature stream is identical across noise_sigma settings).
    row.center = rng.uniform(cfg.center_low, cfg.center_high);
    row.x1 = cauchy_draw(rng, row.center, cfg.scale1);
    row.x2 = cauchy_draw(rng, row.center, cfg.scale2);
    row.noise = cfg.noise_sigma * rng.normal();
    row.y = row.x1 + row.x2 + row.noise;
  }
  return rows;
}

Dataset generate_cauchy_dataset(const CauchyConfig& cfg) {
  const std::vector<CauchyRow> rows = generate_cauchy_rows(cfg);
  std::vector<std::string> x1_labels;
  std::vector<std::string> x2_labels;
  std::vector<double> target;
  x1_labels.reserve(rows.size());
  x2_labels.reserve(rows.size());
  target.reserve(rows.size());
  for (const CauchyRow& row : rows) {
    x1_labels.push_back(label_of(row.x1, cfg.rounding_decimals));
    x2_labels.push_back(label_of(row.x2, cfg.rounding_decimals));
    target.push_back(row.y);
  }
  Dataset data;
  data.add_cat("x1", std::move(x1_labels));
  data.add_cat("x2", std::move(x2_labels));
  data.target_name = "y";
  data.target = std::move(target);
  return data;
}

}  // namespace qenc
