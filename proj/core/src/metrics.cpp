#include "qenc/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qenc {
namespace {

void check_pair(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw std::invalid_argument("length mismatch");
  }
  if (y_true.empty()) throw std::invalid_argument("empty input");
  for (double v : y_true) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
  }
  for (double v : y_pred) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
  }
}

}  // namespace

double mae(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    sum += std::abs(y_true[i] - y_pred[i]);
  }
  return sum / static_cast<double>(y_true.size());
}

double mse(std::span<const double> y_true, std::span<const double> y_pred) {
  check_pair(y_true, y_pred);
  double sum = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    sum += d * d;
  }
  return sum / static_cast<double>(y_true.size());
}

std::string_view to_string(Metric metric) {
  return metric == Metric::mae ? "mae" : "mse";
}

std::optional<Metric> metric_from(std::string_view name) {
  if (name == "mae") return Metric::mae;
  if (name == "mse") return Metric::mse;
  return std::nullopt;
}

double score(Metric metric, std::span<const double> y_true,
             std::span<const double> y_pred) {
  return metric == Metric::mae ? mae(y_true, y_pred) : mse(y_true, y_pred);
}

}  // namespace qenc
