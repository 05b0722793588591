#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "flowdistill/physics/physics.hpp"
#include "flowdistill/types.hpp"

namespace flowdistill::eval {

using physics::ChannelVector;

/// Empirical 1-Wasserstein distance between two samples: the integral of |F_a^-1 - F_b^-1|
/// over [0, 1] for the step quantile functions of the sorted inputs. Exact for any sizes.
/// Throws ConfigError when either input is empty.
double wasserstein1(std::span<const double> a, std::span<const double> b);

/// Mean over the five channels of the per-channel W1.
double ws_score(std::span<const ChannelVector> reference, std::span<const ChannelVector> generated);

struct ChannelMae {
  double mae_c = 0.0;   ///< unweighted mean over conditions
  double mae_cw = 0.0;  ///< weighted by the reference occurrence count of each condition
};

/// Per condition: mean absolute difference between the 5-channel means of reference and
/// generated samples. Throws ConfigError listing the keys found on only one side.
ChannelMae channel_mae(std::span<const ChannelVector> reference, std::span<const std::uint64_t> reference_keys,
                       std::span<const ChannelVector> generated, std::span<const std::uint64_t> generated_keys);

/// Same aggregation from precomputed per-condition MAEs and counts.
ChannelMae aggregate_mae(std::span<const double> per_condition, std::span<const int> counts);

struct Centre {
  double row = 0.0;
  double col = 0.0;
};

/// Photon-weighted mean pixel coordinate. Throws NumericError for an empty grid.
Centre shower_centre(const ResponseGrid& grid);

/// Smallest r such that pixels within distance r of the centre hold at least `fraction`
/// of the photons. Throws NumericError for an empty grid.
double shower_radius(const ResponseGrid& grid, double fraction = 0.9);
inline double shower_radius90(const ResponseGrid& grid) { return shower_radius(grid, 0.9); }

/// Absolute (MAE) and squared (RMSE) differences between reference and generated
/// per-condition statistics, weighted by the reference occurrence count.
struct CentreRadiusTable {
  double centre_mae = 0.0;
  double centre_var_mae = 0.0;
  double radius_mae = 0.0;
  double radius_var_mae = 0.0;
  double centre_rmse = 0.0;
  double centre_var_rmse = 0.0;
  double radius_rmse = 0.0;
  double radius_var_rmse = 0.0;

  static constexpr int kFields = 8;
  static const char* field_name(int i);
  double field(int i) const;
};

/// Empty grids are left out of the statistics; a condition without any non-empty grid on
/// either side is left out of the table. Key errors as channel_mae.
CentreRadiusTable centre_radius_report(std::span<const ResponseGrid> reference,
                                       std::span<const std::uint64_t> reference_keys,
                                       std::span<const ResponseGrid> generated,
                                       std::span<const std::uint64_t> generated_keys);

/// Metrics of one generation run.
struct RunMetrics {
  double ws = 0.0;
  ChannelMae mae;
  CentreRadiusTable centre_radius;
};

RunMetrics evaluate_run(std::span<const ResponseGrid> reference, std::span<const ResponseGrid> generated,
                        std::span<const std::uint64_t> keys);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation (denominator R - 1); 0 for a single run
};

Stat summarize(std::span<const double> values);

struct MetricReport {
  std::string label;
  int runs = 0;
  Stat ws;
  Stat mae_c;
  Stat mae_cw;
  Stat centre_radius[CentreRadiusTable::kFields];

  /// name, value, std; one metric per line.
  void write_key_values(std::ostream& out) const;
  void write_text(std::ostream& out) const;
  void save(const std::filesystem::path& key_value_file) const;
};

MetricReport aggregate_runs(std::string label, std::span<const RunMetrics> runs);

}  // namespace flowdistill::eval
