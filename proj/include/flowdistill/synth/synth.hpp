#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "flowdistill/types.hpp"

namespace flowdistill::synth {

/// One particle species of the toy detector.
struct ParticleTypeSpec {
  std::string name;
  double fraction = 1.0;  ///< share of unique conditions
  double energy_min = 20.0;
  double energy_max = 120.0;
  double shower_width = 1.5;  ///< Gaussian cloud sigma, pixels
  double jitter = 0.0;        ///< per-response centre jitter sigma, pixels
  int decay_modes = 1;
  double photon_yield = 10.0;  ///< photons per unit energy
  double mass = 0.94;
  double charge = 0.0;
};

/// Neutron-, lambda-, K-short- and sigma-like species at 23/3/2/0.5 % plus a filler type.
std::vector<ParticleTypeSpec> desk_particle_types();

struct GeneratorConfig {
  std::vector<ParticleTypeSpec> types = desk_particle_types();
  int total_samples = 20000;
  int repeats_per_condition = 8;
  int grid_size = 16;
  std::uint64_t seed = 1;
  /// Place photons at fixed quantiles instead of random draws (σ = 0, one mode ⇒ identical repeats).
  bool quantile_placement = false;

  void validate() const;
};

struct GeneratedDataset {
  std::vector<Sample> samples;
  std::vector<int> type_index;  ///< parallel to samples
};

/// Unique conditions per type, each repeated `repeats_per_condition` times with stochastic responses.
/// Throws ConfigError on invalid fractions, totals or grid size.
GeneratedDataset generate_dataset(const GeneratorConfig& config);

/// Unique-condition counts per type (largest-remainder allocation of fractions).
std::vector<int> conditions_per_type(const GeneratorConfig& config);

struct SplitRatios {
  int train = 70;
  int validation = 10;
  int test = 20;
};

struct Split {
  std::vector<Sample> train;
  std::vector<Sample> validation;
  std::vector<Sample> test;
};

/// Split by unique condition so that all repeats land in the same part.
Split split_dataset(const std::vector<Sample>& samples, SplitRatios ratios, std::uint64_t seed);

/// Little-endian "ZDS1" container; see README for the record layout.
void write_dataset(const std::filesystem::path& path, const std::vector<Sample>& samples, int grid_size);
void write_dataset(std::ostream& out, const std::vector<Sample>& samples, int grid_size);
/// Throws FormatError (with byte offset) on bad magic, truncation or dimension mismatch.
std::vector<Sample> read_dataset(const std::filesystem::path& path, int* grid_size = nullptr);
std::vector<Sample> read_dataset(std::istream& in, int* grid_size = nullptr);

void write_manifest(const std::filesystem::path& path, const GeneratorConfig& config, SplitRatios ratios);

}  // namespace flowdistill::synth
