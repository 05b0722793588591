#pragma once

#include <span>
#include <vector>

#include "flowdistill/nn/tape.hpp"

namespace flowdistill::rqs {

struct SplineConfig {
  int bins = 8;
  double tail_bound = 3.0;
  /// Lower bound on each bin's width and height, as a fraction of 2B.
  double min_bin_fraction = 1e-3;
  double min_derivative = 1e-3;

  /// K widths, K heights, K - 1 interior knot derivatives.
  int params_per_dim() const { return 3 * bins - 1; }
  /// Throws ConfigError when the constraints cannot be met.
  void validate() const;
};

/// Constrained spline for one scalar dimension. The flat layout
/// [widths (K) | heights (K) | interior derivatives (K - 1)] is shared with the batched ops.
class SplineParams {
 public:
  SplineParams(SplineConfig config, std::vector<double> block);

  const SplineConfig& config() const { return config_; }
  std::span<const double> widths() const { return {block_.data(), k()}; }
  std::span<const double> heights() const { return {block_.data() + k(), k()}; }
  /// Knot derivative for knot index 0..K; the two boundary knots are pinned to 1.
  double derivative(int knot) const;
  std::span<const double> block() const { return block_; }

 private:
  std::size_t k() const { return static_cast<std::size_t>(config_.bins); }

  SplineConfig config_;
  std::vector<double> block_;
};

struct Transformed {
  double value;
  double log_det;
};

/// Map 3K - 1 unconstrained values to a valid monotone spline. All-zero input gives the identity.
SplineParams constrain(std::span<const double> raw, const SplineConfig& config);

/// Monotone increasing on R, identity with zero log-det outside [-B, B].
Transformed forward(double x, const SplineParams& params);
/// Exact inverse of forward(); log_det is the log-derivative of the inverse map.
Transformed inverse(double y, const SplineParams& params);

enum class Direction { kForward, kInverse };

// ---- batched kernels ---------------------------------------------------------------
//
// `raw` and `constrained` are N x (D * P) with dimension i occupying columns [i * P, (i + 1) * P).

nn::Matrix constrain_rows(const nn::Matrix& raw, const SplineConfig& config);

/// Transform a single value with the constrained block at `block` (P doubles).
double apply_one(double x, const double* block, const SplineConfig& config, Direction dir, double* log_det);

/// Elementwise transform of an N x D batch; `log_det` receives per-row sums.
void apply_rows(const nn::Matrix& inputs, const nn::Matrix& constrained, const SplineConfig& config, Direction dir,
                nn::Matrix& outputs, nn::Vector& log_det);

// ---- differentiable ops ------------------------------------------------------------

nn::Var constrain(nn::Var raw, const SplineConfig& config);

struct Applied {
  nn::Var outputs;  ///< N x D
  nn::Var log_det;  ///< N x 1
};

/// Gradients flow to both the inputs and the constrained parameters.
Applied apply(nn::Var inputs, nn::Var constrained, const SplineConfig& config, Direction dir);

}  // namespace flowdistill::rqs
