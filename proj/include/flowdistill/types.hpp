#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace flowdistill {

inline constexpr int kConditionDim = 10;

/// Column order of the condition vector.
enum ConditionFeature : int {
  kEnergy = 0,
  kMomentumX,
  kMomentumY,
  kMomentumZ,
  kPositionX,
  kPositionY,
  kPositionZ,
  kMass,
  kCharge,
  kPhotonSum,
};

using ConditionVector = std::array<float, kConditionDim>;

/// G x G photon counts, row-major.
struct ResponseGrid {
  int size = 0;
  std::vector<float> pixels;

  static ResponseGrid zeros(int g) { return {g, std::vector<float>(static_cast<std::size_t>(g) * g, 0.0f)}; }

  float& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * size + col]; }
  float at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * size + col]; }
  double total() const;

  bool operator==(const ResponseGrid&) const = default;
};

struct Sample {
  ConditionVector condition{};
  ResponseGrid response;

  bool operator==(const Sample&) const = default;
};

/// Identity of a condition vector: a 64-bit digest of the exact float bit patterns.
std::uint64_t condition_key(const ConditionVector& c);
std::string format_key(std::uint64_t key);

}  // namespace flowdistill
