#include "qenc/elastic_net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qenc {
namespace {

double soft_threshold(double value, double threshold) {
  if (value > threshold) return value - threshold;
  if (value < -threshold) return value + threshold;
  return 0.0;
}

void check_inputs(const FeatureMatrix& features, std::span<const double> y,
                  const ElasticNetSpec& spec) {
  if (!(spec.alpha >= 0.0) || !std::isfinite(spec.alpha)) {
    throw std::invalid_argument("invalid alpha");
  }
  if (!(spec.l1_ratio >= 0.0 && spec.l1_ratio <= 1.0)) {
    throw std::invalid_argument("invalid l1_ratio");
  }
  if (!(spec.tol > 0.0)) throw std::invalid_argument("invalid tol");
  if (y.empty() || features.empty()) {
    throw std::invalid_argument("dimension mismatch");
  }
  for (const auto& col : features) {
    if (col.size() != y.size()) throw std::invalid_argument("dimension mismatch");
    for (double v : col) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
    }
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite input");
  }
}

}  // namespace

LinearModel fit_elastic_net(const FeatureMatrix& features,
                            std::span<const double> y,
                            const ElasticNetSpec& spec) {
  check_inputs(features, y, spec);
  const std::size_t n = y.size();
  const std::size_t d = features.size();
  const double n_d = static_cast<double>(n);

  LinearModel model;
  model.feature_means.resize(d);
  model.feature_scales.assign(d, 1.0);
  std::vector<bool> active(d, false);

  // Centered (and optionally scaled) working copy of the design matrix.
  FeatureMatrix xs(d);
  for (std::size_t j = 0; j < d; ++j) {
    const auto& col = features[j];
    double mean = 0.0;
    for (double v : col) mean += v;
    mean /= n_d;
    model.feature_means[j] = mean;

    double var = 0.0;
    for (double v : col) var += (v - mean) * (v - mean);
    var /= n_d;
    if (var > 0.0) {
      active[j] = true;
      if (spec.standardize) model.feature_scales[j] = std::sqrt(var);
    }
    auto& out = xs[j];
    out.resize(n);
    const double scale = model.feature_scales[j];
    for (std::size_t i = 0; i < n; ++i) out[i] = (col[i] - mean) / scale;
  }

  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= n_d;

  std::vector<double> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - y_mean;

  std::vector<double> col_sq_norm(d, 0.0);  // (1/n) * x_j . x_j
  for (std::size_t j = 0; j < d; ++j) {
    if (!active[j]) continue;
    double s = 0.0;
    for (double v : xs[j]) s += v * v;
    col_sq_norm[j] = s / n_d;
  }

  const double l1_penalty = spec.alpha * spec.l1_ratio;
  const double l2_penalty = spec.alpha * (1.0 - spec.l1_ratio);

  std::vector<double> w(d, 0.0);
  for (std::size_t sweep = 1; sweep <= spec.max_iter; ++sweep) {
    double max_change = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      if (!active[j]) continue;
      const auto& col = xs[j];
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += col[i] * residual[i];
      const double rho = dot / n_d + col_sq_norm[j] * w[j];
      const double w_new =
          soft_threshold(rho, l1_penalty) / (col_sq_norm[j] + l2_penalty);
      const double delta = w_new - w[j];
      if (delta != 0.0) {
        for (std::size_t i = 0; i < n; ++i) residual[i] -= delta * col[i];
        w[j] = w_new;
      }
      max_change = std::max(max_change, std::abs(delta));
    }
    model.n_iter = sweep;
    if (max_change < spec.tol) {
      model.converged = true;
      break;
    }
  }

  model.weights.resize(d);
  double offset = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    model.weights[j] = active[j] ? w[j] / model.feature_scales[j] : 0.0;
    offset += model.feature_means[j] * model.weights[j];
  }
  model.intercept = y_mean - offset;
  return model;
}

std::vector<double> predict(const LinearModel& model,
                            const FeatureMatrix& features) {
  if (features.size() != model.weights.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const std::size_t n = features.empty() ? 0 : features.front().size();
  for (const auto& col : features) {
    if (col.size() != n) throw std::invalid_argument("dimension mismatch");
  }
  std::vector<double> out(n, model.intercept);
  for (std::size_t j = 0; j < features.size(); ++j) {
    const double w = model.weights[j];
    if (w == 0.0) continue;
    const auto& col = features[j];
    for (std::size_t i = 0; i < n; ++i) out[i] += w * col[i];
  }
  return out;
}

}  // namespace qenc
