#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace frostnet {

enum class SweepMode { direct, convolution2 };
std::string to_string(SweepMode m);

struct SweepConfig {
  std::vector<double> lambda_grid;
  double alpha = 1.5;
  double s_margin = 0.05;  // s = 1/alpha - s_margin
  int k_max = 8;
  SweepMode mode = SweepMode::direct;
  std::uint64_t seed = 1;

  int spatial_k_max = 13;     // pairwise energy up to here, Fourier beyond
  bool fourier = true;        // fill fourier_energy and fourth_moment_total
  std::size_t node_budget = std::size_t{1} << 24;
  double tail_tolerance = 1e-3;

  double bounded_factor = 2.0;  // flag: windowed minimum <= factor * reference
  int bounded_window = 5;

  double frostman_eps = 0.05;   // t = s for the Frostman ratio
  int frostman_depth_lo = 0;
  int frostman_depth_hi = 6;
  int net_max_depth = 20;

  double l2_eps = 0.1;
  std::size_t l2_samples = 1000;
  std::size_t grid_resolution = std::size_t{1} << 14;
  int functional_depth = 40;

  double convolution_c = 0.0;  // 0 selects 2^{-(alpha+1)}

  double s() const { return 1.0 / alpha - s_margin; }
  // Throws ConfigError describing the first inconsistency.
  void validate() const;
};

SweepConfig sweep_config_from_json(const std::string& text);

struct SweepRow {
  double lambda = 0.0;
  int k = 0;
  std::optional<double> energy;
  std::optional<double> fourier_energy;
  std::optional<double> fourth_moment_total;
  bool bounded_flag = false;
  std::optional<double> frostman_ratio;
  std::optional<double> witnessed_C_eps;
  std::optional<double> chain_bound;  // convolution2 mode only
};

// Rows are ordered by k (outer, 1..k_max) then by lambda in grid order, so
// raising k_max only appends rows.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg);

std::string sweep_csv_header();
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Writes <dir>/sweep.csv and, if plots is set, <dir>/plot_lambda_energy.csv
// (series=k) and <dir>/plot_k_energy.csv (series=lambda), each with columns
// series,x,y. Returns the paths written.
std::vector<std::string> emit_report(const std::vector<SweepRow>& rows, const std::string& dir, bool plots);

}  // namespace frostnet
