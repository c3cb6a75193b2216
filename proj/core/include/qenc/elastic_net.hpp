#ifndef QENC_ELASTIC_NET_HPP_
#define QENC_ELASTIC_NET_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace qenc {

// Design matrix stored by feature: columns[j] is feature j, all of length n.
using FeatureMatrix = std::vector<std::vector<double>>;

struct ElasticNetSpec {
  double alpha = 1.0;      // overall penalty strength, >= 0
  double l1_ratio = 0.5;   // in [0, 1]; 1 = pure l1, 0 = pure l2
  std::size_t max_iter = 1000;
  double tol = 1e-4;       // max coordinate change per sweep
  bool standardize = true;
};

struct LinearModel {
  std::vector<double> weights;  // original units
  double intercept = 0.0;
  std::vector<double> feature_means;
  std::vector<double> feature_scales;  // 1.0 for zero-variance features
  std::size_t n_iter = 0;
  bool converged = false;
};

// Cyclic coordinate descent with soft-thresholding for
//   (1/(2n))*||y - Xw - b||^2 + alpha*l1_ratio*||w||_1
//   + (alpha/2)*(1-l1_ratio)*||w||^2
// fit on centered (and, with standardize, scaled) features; the intercept is
// unwound to original units. Zero-variance features get weight 0.
LinearModel fit_elastic_net(const FeatureMatrix& features,
                            std::span<const double> y,
                            const ElasticNetSpec& spec);

std::vector<double> predict(const LinearModel& model,
                            const FeatureMatrix& features);

}  // namespace qenc

#endif  // QENC_ELASTIC_NET_HPP_
