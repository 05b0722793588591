#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "flowdistill/flow/flow.hpp"
#include "flowdistill/physics/physics.hpp"
#include "flowdistill/types.hpp"

namespace flowdistill::eval {

using flow::Matrix;

/// Worker count: `requested` if positive, else the hardware concurrency; always capped by
/// the FLOWDISTILL_THREADS environment variable when it holds a positive integer.
int worker_count(int requested = 0);

struct GenerationConfig {
  int batch_size = 256;
  int threads = 0;
  physics::PreprocessConfig preprocess;
};

/// Photon total used to rescale generated grids: the condition's photon count plus the
/// expected dequantization noise mass G^2 / 2.
double generation_photon_sum(double photon_count, int grid_size);

/// Logit-space samples, one per condition row. Batch b of run r draws its base noise from
/// substream b of CounterRng(seed, r), so results do not depend on the worker count.
/// A teacher samples with the slow MAF inversion, a student with the fast IAF pass.
Matrix generate_logits(const flow::FlowStack& model, const Matrix& cond, std::uint64_t seed, std::uint64_t run,
                       const GenerationConfig& config = {});

/// generate_logits followed by postprocessing into integer photon grids.
std::vector<ResponseGrid> generate_responses(const flow::FlowStack& model, const Matrix& cond, int grid_size,
                                             std::uint64_t seed, std::uint64_t run,
                                             const GenerationConfig& config = {});

struct BenchResult {
  double teacher_ms_per_sample = 0.0;
  double student_ms_per_sample = 0.0;
  double speedup = 0.0;
  int batch = 0;
  int dim = 0;
  int layers = 0;
  int warmup = 0;
  int repetitions = 0;
  std::uint64_t teacher_made_calls = 0;  ///< per batch
  std::uint64_t student_made_calls = 0;  ///< per batch
  double call_ratio = 0.0;

  /// name, value, std lines; timings carry a "time_" prefix so they can be filtered.
  void write_key_values(std::ostream& out) const;
  void write_text(std::ostream& out) const;
};

/// Median wall-clock per sample of maf_sample and iaf_sample on the same conditions,
/// single-threaded. Throws ConfigError for repetitions < 1 or warmup < 1.
BenchResult bench_sampling(const flow::FlowStack& teacher, const flow::FlowStack& student, const Matrix& cond,
                           int repetitions = 5, int warmup = 1);

}  // namespace flowdistill::eval
