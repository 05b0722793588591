#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "flowdistill/nn/made.hpp"
#include "flowdistill/nn/tape.hpp"
#include "flowdistill/rng.hpp"
#include "flowdistill/rqs/spline.hpp"

namespace flowdistill::flow {

using nn::Matrix;
using nn::RowVector;
using nn::Vector;

/// kTeacher: masked autoregressive flow (one MADE pass for x -> z, D passes for z -> x).
/// kStudent: inverse autoregressive flow (one MADE pass for z -> x, D passes for x -> z).
enum class Direction : std::uint32_t { kTeacher = 0, kStudent = 1 };

struct FlowArchitecture {
  int dim = 1;
  int cond_dim = 0;
  int layers = 4;
  std::vector<int> hidden_dims{128, 128};
  rqs::SplineConfig spline{};

  void validate() const;
};

/// Fixed elementwise map standardized = (raw - shift) / scale.
struct Standardizer {
  RowVector shift;
  RowVector scale;

  static Standardizer identity(int dim);
  /// Column means and standard deviations (scale floored at `min_scale`).
  static Standardizer fit(const Matrix& data, double min_scale = 1e-6);

  Matrix apply(const Matrix& raw) const;
  Matrix invert(const Matrix& standardized) const;
  /// sum_j log(scale_j): the log-det of invert().
  double log_scale_sum() const;

  bool operator==(const Standardizer& o) const { return shift == o.shift && scale == o.scale; }
};

struct FlowLayer {
  nn::MadeNetwork made;
  /// The layer transforms w = u[permutation] autoregressively in that order and scatters
  /// the result back, so layer outputs share the input's coordinate order.
  std::vector<int> permutation;
};

/// Ordered spline layers conditioned on MADE outputs, with a standard normal base.
///
/// Data enters in logit space, is standardized by `data_standardizer()`, and passes through
/// the layers in order towards the latent side. Each layer's spline runs forward in that
/// direction; a teacher computes its parameters from the data side of the layer and a
/// student from the latent side.
class FlowStack {
 public:
  /// Zero-initialized final MADE layers make the fresh stack an identity map.
  /// Permutations: identity for layer 0, reversal for every later layer.
  static FlowStack build(const FlowArchitecture& arch, Direction direction, std::uint64_t seed);

  Direction direction() const { return direction_; }
  int dim() const { return arch_.dim; }
  int cond_dim() const { return arch_.cond_dim; }
  std::size_t layer_count() const { return layers_.size(); }
  const FlowArchitecture& architecture() const { return arch_; }
  const rqs::SplineConfig& spline() const { return arch_.spline; }
  const std::vector<FlowLayer>& layers() const { return layers_; }
  std::vector<FlowLayer>& layers() { return layers_; }

  const Standardizer& data_standardizer() const { return data_std_; }
  const Standardizer& cond_standardizer() const { return cond_std_; }
  void set_standardizers(Standardizer data, Standardizer cond);

  /// Copy with the same weights, permutations and standardizers but a different direction tag.
  FlowStack with_direction(Direction direction) const;

  /// True when layer count, D, C, spline settings, permutations and standardizers agree.
  bool compatible_with(const FlowStack& other) const;

  std::vector<Matrix*> parameters();
  std::size_t parameter_count() const;

  void write(std::ostream& out) const;
  static FlowStack read(std::istream& in);
  void save(const std::filesystem::path& path) const;
  static FlowStack load(const std::filesystem::path& path);

 private:
  FlowArchitecture arch_;
  Direction direction_ = Direction::kTeacher;
  std::vector<FlowLayer> layers_;
  Standardizer data_std_;
  Standardizer cond_std_;
};

/// Per-layer record of one fast pass. Intermediates are in standardized flow coordinates.
struct PassRecord {
  Matrix output;                     ///< z for the teacher pass, x (logit space) for the student pass
  std::vector<Matrix> intermediates;  ///< one entry per layer, in execution order
  std::vector<Matrix> made_params;    ///< constrained spline parameters per layer, indexed by layer
  Vector log_det;                     ///< summed spline log-dets of the pass
};

// ---- teacher (MAF) -----------------------------------------------------------------

/// Exact log density of each row of x (logit space). Throws NumericError on non-finite input.
Vector maf_log_prob(const FlowStack& teacher, const Matrix& x, const Matrix& cond);
double maf_log_prob(const FlowStack& teacher, std::span<const double> x, std::span<const double> cond);

/// Fast pass x -> z with per-layer intermediates.
PassRecord teacher_to_latent(const FlowStack& teacher, const Matrix& x, const Matrix& cond);

/// Slow pass: inverts every layer one dimension at a time (D MADE calls per layer).
Matrix maf_sample(const FlowStack& teacher, const Matrix& cond, const Matrix& base_noise);
Matrix maf_sample(const FlowStack& teacher, const Matrix& cond, CounterRng& rng);

// ---- student (IAF) -----------------------------------------------------------------

/// Fast pass z -> x; intermediates follow the student's execution order (last layer first).
PassRecord iaf_sample(const FlowStack& student, const Matrix& base_noise, const Matrix& cond);

/// Slow pass x -> z of a student (D MADE calls per layer); used to check invertibility.
Matrix student_to_latent(const FlowStack& student, const Matrix& x, const Matrix& cond);

/// Standard normal draws, one row per sample.
Matrix base_noise(Eigen::Index rows, int dim, CounterRng& rng);

// ---- differentiable passes --------------------------------------------------------

struct TapePass {
  nn::Var output;
  std::vector<nn::Var> intermediates;
  std::vector<nn::Var> made_params;  ///< indexed by layer
  nn::Var log_det;                   ///< N x 1
};

std::vector<nn::MadeBinding> bind(nn::Tape& tape, const FlowStack& stack, bool trainable);

/// Teacher fast pass on standardized data `x_std` and standardized condition.
TapePass teacher_pass(const FlowStack& teacher, const std::vector<nn::MadeBinding>& bindings, nn::Var x_std,
                      nn::Var cond_std);

/// Student fast pass from base noise to standardized data coordinates.
TapePass student_pass(const FlowStack& student, const std::vector<nn::MadeBinding>& bindings, nn::Var z,
                      nn::Var cond_std);

/// Mean negative log likelihood of a batch under a teacher, on a tape.
nn::Var teacher_nll(const FlowStack& teacher, const std::vector<nn::MadeBinding>& bindings, const Matrix& x,
                    const Matrix& cond);

}  // namespace flowdistill::flow
