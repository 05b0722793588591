#pragma once

#include <string>
#include <string_view>

#include "flowdistill/flow/flow.hpp"

namespace flowdistill::flow {

/// bs, bs+div, bs+ch, bs+ch+div.
enum class Variant { kBaseline, kDiversity, kChannel, kChannelDiversity };

/// Throws ConfigError for an unknown name.
Variant parse_variant(std::string_view name);
std::string to_string(Variant variant);
bool uses_channel_loss(Variant variant);
bool uses_sample_weights(Variant variant);

struct DistillWeights {
  double mse = 1.0;
  double channel = 1.0;
};

/// Coefficients with the variant's switch applied (w_ch = 0 without the channel loss).
DistillWeights effective_weights(Variant variant, const DistillWeights& configured);

struct LossTerms {
  double intermediates = 0.0;
  double made_params = 0.0;
  double x_rec = 0.0;  ///< data loop, standardized coordinates
  double z_rec = 0.0;  ///< latent loop
  double channel = 0.0;
  double total = 0.0;

  LossTerms& operator+=(const LossTerms& o);
  LossTerms& operator*=(double s);
};

struct DistillBatch {
  Matrix x;     ///< N x D, logit space
  Matrix cond;  ///< N x C, raw features
  Matrix z;     ///< N x D fresh base draws for the latent loop
  Vector sample_weights;  ///< N entries, or empty for all ones
};

struct DistillOutput {
  nn::Var total;
  LossTerms terms;
};

/// Records both loops on `tape`. Student parameters enter through `student_bindings`;
/// the teacher is held fixed. `grid_size` is only used when weights.channel != 0.
/// Throws ConfigError if the stacks are not a matching teacher/student pair.
DistillOutput distill_loss(nn::Tape& tape, const FlowStack& teacher, const FlowStack& student,
                           const std::vector<nn::MadeBinding>& student_bindings, const DistillBatch& batch,
                           int grid_size, const DistillWeights& weights);

/// Value-only evaluation.
LossTerms distill_loss(const FlowStack& teacher, const FlowStack& student, const DistillBatch& batch, int grid_size,
                       const DistillWeights& weights);

/// Mean squared error between x and its data-loop reconstruction, in logit space.
double data_loop_mse(const FlowStack& teacher, const FlowStack& student, const Matrix& x, const Matrix& cond);

/// Throws ConfigError unless `teacher` is a MAF, `student` an IAF, and the two are compatible.
void require_distill_pair(const FlowStack& teacher, const FlowStack& student);

}  // namespace flowdistill::flow
