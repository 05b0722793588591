#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "flowdistill/eval/generate.hpp"
#include "flowdistill/flow/train.hpp"
#include "flowdistill/physics/physics.hpp"
#include "flowdistill/synth/synth.hpp"

namespace flowdistill::cli {

/// Everything a pipeline run needs, read from an INI file:
///
///   [run]      seed, out
///   [data]     grid_size, total_samples, repeats, quantile_placement
///   [flow]     layers, hidden, bins, tail_bound, min_bin_fraction, min_derivative
///   [teacher]  epochs, batch, lr, clip, max_batches
///   [distill]  epochs, batch, lr, clip, max_batches, variant, w_mse, w_ch, init_from_teacher
///   [physics]  epsilon, delta, logit_clamp, noise_margin
///   [eval]     runs, test_limit, batch, threads
///   [bench]    dim, batch, repetitions, warmup, min_speedup
///
/// Missing keys keep their defaults; unknown sections or keys are rejected.
struct PipelineConfig {
  std::uint64_t seed = 1;
  std::filesystem::path out = "runs/desk";

  synth::GeneratorConfig data;
  flow::FlowArchitecture flow;  ///< dim and cond_dim are derived from the data settings
  flow::TrainConfig teacher;
  flow::DistillConfig distill;
  physics::DiversityConfig diversity;
  physics::PreprocessConfig preprocess;

  int eval_runs = 5;
  int eval_test_limit = 0;  ///< 0 evaluates the whole test split
  int eval_batch = 256;
  int eval_threads = 0;

  int bench_dim = 0;  ///< 0 uses the data dimension; otherwise a synthetic stack of this size
  int bench_batch = 32;
  int bench_repetitions = 5;
  int bench_warmup = 1;
  double bench_min_speedup = 50.0;

  PipelineConfig();

  /// Throws ConfigError naming the offending key.
  static PipelineConfig parse(std::istream& in);
  static PipelineConfig load(const std::filesystem::path& path);

  /// Checks every field; called by parse() and again after command-line overrides.
  void validate() const;
  /// Canonical INI text (the frozen copy written next to artifacts).
  void write(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;

  /// Applies the run seed to every stage that has its own seed field.
  void apply_seed(std::uint64_t new_seed);
};

}  // namespace flowdistill::cli
