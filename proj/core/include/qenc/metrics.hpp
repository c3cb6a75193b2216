#ifndef QENC_METRICS_HPP_
#define QENC_METRICS_HPP_

#include <optional>
#include <span>
#include <string_view>

namespace qenc {

double mae(std::span<const double> y_true, std::span<const double> y_pred);
double mse(std::span<const double> y_true, std::span<const double> y_pred);

enum class Metric { mae, mse };

std::string_view to_string(Metric metric);
std::optional<Metric> metric_from(std::string_view name);

double score(Metric metric, std::span<const double> y_true,
             std::span<const double> y_pred);

}  // namespace qenc

#endif  // QENC_METRICS_HPP_
