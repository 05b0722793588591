#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "flowdistill/nn/tape.hpp"

namespace flowdistill::nn {

struct MadeConfig {
  int input_dim = 1;
  int cond_dim = 0;
  std::vector<int> hidden_dims{128, 128};
  int params_per_dim = 1;
};

/// Masked autoregressive network emitting `params_per_dim` values per data dimension.
///
/// Output column i * P + p belongs to dimension i and depends only on inputs 0..i-1
/// (and on the unmasked condition features). Hidden unit k of a layer of width H gets
/// degree 1 + (k mod (D - 1)); for D == 1 every hidden unit has degree 0 and sees only
/// the condition. Weights are stored pre-masked and gradients are masked before every
/// update, so masked entries stay exactly zero.
class MadeNetwork {
 public:
  /// Throws ConfigError on invalid dimensions. Final layer starts at zero.
  static MadeNetwork build(const MadeConfig& config, std::uint64_t seed);

  const MadeConfig& config() const { return config_; }
  int input_dim() const { return config_.input_dim; }
  int cond_dim() const { return config_.cond_dim; }
  int params_per_dim() const { return config_.params_per_dim; }
  int output_dim() const { return config_.input_dim * config_.params_per_dim; }

  /// x: N x D, cond: N x C. Returns N x (D * P). Throws NumericError on non-finite input.
  Matrix forward(const Matrix& x, const Matrix& cond) const;

  /// Parameters in declaration order: W_data, W_cond, b_1, (W_l, b_l)..., W_out, b_out.
  std::vector<Matrix>& parameters() { return params_; }
  const std::vector<Matrix>& parameters() const { return params_; }
  /// Mask matching parameters()[index] (all ones for biases and the condition path).
  const Matrix& mask(std::size_t index) const { return masks_[index]; }
  /// Degrees of hidden units, one vector per hidden layer.
  const std::vector<std::vector<int>>& degrees() const { return degrees_; }

  std::size_t parameter_count() const;

  /// Zero out the gradient entries of masked connections, in place.
  void mask_gradients(std::vector<Matrix>& grads) const;

  void write(std::ostream& out) const;
  /// `offset` tracks the byte position for error reporting and is advanced.
  static MadeNetwork read(std::istream& in, std::uint64_t& offset);

 private:
  void build_masks();

  MadeConfig config_;
  std::vector<std::vector<int>> degrees_;
  std::vector<Matrix> params_;
  std::vector<Matrix> masks_;
};

/// Parameters of one network placed on a tape.
struct MadeBinding {
  std::vector<Var> params;
};

/// Trainable bindings become tape variables; others are borrowed constants.
MadeBinding bind(Tape& tape, const MadeNetwork& net, bool trainable);

/// Differentiable forward pass.
Var made_forward(const MadeNetwork& net, const MadeBinding& binding, Var x, Var cond);

/// Number of MADE evaluations (plain or on a tape) since process start or the last reset.
std::uint64_t made_call_count();
void reset_made_call_count();

}  // namespace flowdistill::nn
