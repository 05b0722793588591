#pragma once

#include <cstdint>
#include <vector>

#include "flowdistill/nn/tape.hpp"

namespace flowdistill::nn {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Moment accumulators are sized on the first step and zero-initialized.
class Adam {
 public:
  explicit Adam(AdamConfig config = {}) : config_(config) {}

  /// One bias-corrected update. Throws ConfigError on shape mismatch.
  void step(std::vector<Matrix>& params, const std::vector<Matrix>& grads);

  std::int64_t steps() const { return step_; }
  const AdamConfig& config() const { return config_; }
  const std::vector<Matrix>& first_moments() const { return m_; }
  const std::vector<Matrix>& second_moments() const { return v_; }

 private:
  AdamConfig config_;
  std::int64_t step_ = 0;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
};

/// Scales `grads` so their joint L2 norm is at most `max_norm`. Returns the norm before clipping.
double clip_global_norm(std::vector<Matrix>& grads, double max_norm);

}  // namespace flowdistill::nn
