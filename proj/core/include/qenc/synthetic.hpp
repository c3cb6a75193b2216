#ifndef QENC_SYNTHETIC_HPP_
#define QENC_SYNTHETIC_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qenc/dataset.hpp"

namespace qenc {

// Long-tailed regression synthesis: per row a center c ~ U(low, high), two
// Cauchy draws around it (x1 with scale1, x2 with scale2, via the inverse CDF
// t + s*tan(pi*(u - 1/2))), gaussian noise e, and target y = x1 + x2 + e.
// The features are emitted as categorical string labels; rounding_decimals
// controls how many rows share a label (unset = full-precision labels).
struct CauchyConfig {
  std::size_t n_rows = 0;
  double center_low = 0.0;
  double center_high = 100.0;
  double scale1 = 1.0;
  double scale2 = 2.0;
  double noise_sigma = 1.0;
  std::uint64_t seed = 0;
  std::optional<int> rounding_decimals;
};

struct CauchyRow {
  double center = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double noise = 0.0;
  double y = 0.0;
};

// Raw draws, in the exact generation order (useful for validating the
// sampler). Deterministic given cfg.seed.
std::vector<CauchyRow> generate_cauchy_rows(const CauchyConfig& cfg);

// Dataset with categorical columns "x1", "x2" and target "y". Labels are the
// (optionally rounded) feature values as shortest round-trip decimals; y is
// computed from the pre-rounding values.
Dataset generate_cauchy_dataset(const CauchyConfig& cfg);

}  // namespace qenc

#endif  // QENC_SYNTHETIC_HPP_
