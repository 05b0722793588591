#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <vector>

#include "flowdistill/flow/distill.hpp"
#include "flowdistill/physics/physics.hpp"
#include "flowdistill/types.hpp"

namespace flowdistill::flow {

/// Preprocessed samples ready for the flows.
struct FlowData {
  Matrix x;     ///< N x G^2 logits
  Matrix cond;  ///< N x C
  std::vector<std::uint64_t> keys;
  Vector photon_sums;  ///< noisy sums recorded by preprocess
  int grid_size = 0;

  Eigen::Index size() const { return x.rows(); }
  /// Rows `index` (in order).
  FlowData subset(std::span<const Eigen::Index> index) const;
  FlowData head(Eigen::Index n) const;
};

/// Dequantization noise for the i-th sample comes from substream i of `seed`.
/// All-zero grids are skipped.
FlowData prepare_flow_data(std::span<const Sample> samples, const physics::PreprocessConfig& config,
                           std::uint64_t seed);

struct TrainConfig {
  int epochs = 10;
  int batch_size = 256;
  double learning_rate = 1e-3;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  /// Caps batches per epoch; 0 uses the whole training set.
  int max_batches = 0;

  void validate() const;
};

struct EpochRecord {
  int epoch = 0;  ///< 0 is the untrained model
  LossTerms train;
  LossTerms validation;
};

struct TrainLog {
  std::vector<EpochRecord> epochs;
  int best_epoch = 0;
  bool teacher = true;

  /// One line per epoch, tab separated, with a header.
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

/// Mean negative log likelihood under the teacher, evaluated in chunks.
double mean_nll(const FlowStack& teacher, const FlowData& data);

/// Fits the standardizers on `train`, minimizes mean NLL with Adam and returns the
/// checkpoint with the best validation NLL (ties keep the earlier one).
/// Throws NonFiniteLoss naming the epoch and batch when the loss is not finite.
FlowStack train_teacher(const FlowData& train, const FlowData& validation, const FlowArchitecture& arch,
                        const TrainConfig& config, TrainLog* log = nullptr, const EpochCallback& on_epoch = {});

struct DistillConfig {
  TrainConfig train;
  Variant variant = Variant::kBaseline;
  DistillWeights weights;
  /// Start from the teacher's weights instead of an identity student.
  bool init_from_teacher = false;
};

/// Student with the teacher's architecture, permutations and standardizers.
FlowStack make_student(const FlowStack& teacher, bool copy_weights, std::uint64_t seed);

/// Per-sample weights for `data` under `variant`: empty (all ones) unless the variant
/// uses inverse-diversity weighting, in which case every key must be in `table`.
Vector sample_weights(const FlowData& data, Variant variant, const physics::DiversityTable* table);

/// Trains an IAF student against the fixed teacher. Validation uses unit sample weights and
/// fixed base draws; the best-validation student is returned.
FlowStack distill_student(const FlowStack& teacher, const FlowData& train, const FlowData& validation,
                          const physics::DiversityTable* table, const DistillConfig& config, TrainLog* log = nullptr,
                          const EpochCallback& on_epoch = {});

}  // namespace flowdistill::flow
