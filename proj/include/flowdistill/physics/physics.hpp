#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <unordered_map>
#include <vector>

#include "flowdistill/nn/tape.hpp"
#include "flowdistill/rng.hpp"
#include "flowdistill/types.hpp"

namespace flowdistill::physics {

inline constexpr int kChannelCount = 5;
using ChannelVector = std::array<double, kChannelCount>;

/// Channel index 0..4 of pixel (row, col) in a G x G grid: 0 for the checkerboard
/// ((row + col) even), then the odd-parity pixels of the top-left, top-right,
/// bottom-left and bottom-right quadrants.
int channel_of(int row, int col, int grid_size);

/// Throws ConfigError for odd grid sizes.
ChannelVector extract_channels(const ResponseGrid& grid);
ChannelVector extract_channels(std::span<const double> pixels, int grid_size);

/// G^2 x 5 indicator matrix of channel membership.
nn::Matrix channel_regions(int grid_size);

struct PreprocessConfig {
  /// Logit clamp: p maps to logit(lambda + (1 - 2 lambda) p).
  double logit_clamp = 1e-6;
  /// Dequantization noise is drawn from [margin, 1 - margin).
  double noise_margin = 1e-6;

  void validate() const;
};

struct Preprocessed {
  std::vector<double> logits;
  double photon_sum = 0.0;  ///< noisy total S used for normalization
};

/// Dequantize, normalize by the noisy sum and map to logit space. Throws RejectedSample
/// for all-zero grids.
Preprocessed preprocess(const ResponseGrid& grid, const PreprocessConfig& config, CounterRng& rng);

/// Inverse chain: sigmoid, undo the clamp, renormalize, rescale by `photon_sum`, floor.
ResponseGrid postprocess(std::span<const double> logits, double photon_sum, int grid_size,
                         const PreprocessConfig& config);

/// Channel fractions of sigmoid(v) normalized to unit sum.
ChannelVector soft_channels(std::span<const double> logits, int grid_size);
/// Differentiable batch version: N x G^2 -> N x 5.
nn::Var soft_channels(nn::Var logits, int grid_size);

/// (1/n) sum_k w_k sum_i (c_i^k - r_i^k)^2 over soft channels. Throws ConfigError on size mismatch.
double channel_loss(const nn::Matrix& student_logits, const nn::Matrix& reference_logits, int grid_size);
nn::Var channel_loss(nn::Var student_logits, nn::Var reference_logits, int grid_size,
                     const nn::Vector& weights = nn::Vector());

/// Sum over pixels of the population standard deviation across responses.
/// Throws ConfigError for an empty list or mismatched grid sizes.
double diversity(std::span<const ResponseGrid> responses);
double diversity(std::span<const ResponseGrid* const> responses);

struct DiversityConfig {
  double epsilon = 1e-3;  ///< added to every weight
  double delta = 1e-6;    ///< lower clamp on f_div before inversion
};

struct DiversityEntry {
  std::uint64_t key = 0;
  int count = 0;
  double f_div = 0.0;
  double weight = 0.0;
};

/// Per-condition diversity statistics and inverse-diversity loss weights.
class DiversityTable {
 public:
  DiversityTable() = default;
  explicit DiversityTable(std::vector<DiversityEntry> entries);

  const std::vector<DiversityEntry>& entries() const { return entries_; }
  const DiversityEntry* find(std::uint64_t key) const;
  /// Weight for a key; throws ConfigError for unknown keys.
  double weight(std::uint64_t key) const;

  /// Tab-separated: key, count, f_div, weight.
  void write(const std::filesystem::path& path) const;
  static DiversityTable read(const std::filesystem::path& path);

 private:
  std::vector<DiversityEntry> entries_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Weights from the given (training) samples: normalized inverse diversity times count plus epsilon.
DiversityTable build_diversity_table(std::span<const Sample> training, const DiversityConfig& config = {});

/// Same rule applied to precomputed (f_div, count) pairs.
std::vector<double> inverse_diversity_weights(std::span<const double> f_div, std::span<const int> counts,
                                              const DiversityConfig& config);

}  // namespace flowdistill::physics
