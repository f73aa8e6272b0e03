#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frostnet/expansion_sets.hpp"
#include "frostnet/measures.hpp"

namespace frostnet {

// Density proportional to h|_I / R_t(h|_I), with R_t replaced by its cell
// averages, normalised to mass 1.
struct NuMeasure {
  GridDensity base;
  Interval interval;
  double t = 0.0;
  double normalizer = 0.0;  // sum over cells of h_i w / R_i
};

// Throws ConfigError when mu(I) = 0.
NuMeasure build_nu(const GridDensity& mu, const Interval& i, double t);

struct WitnessRow {
  Interval interval;
  double value = 0.0;
};

struct Witness {
  double value = 0.0;   // maximum over samples
  Interval argmax;
  std::size_t sample_count = 0;
  std::vector<WitnessRow> rows;
};

// max over U of nu(U) |I|^{t+eps} / |U|^t. Samples must lie inside I.
Witness nu_interval_bound(const NuMeasure& nu, double eps, const std::vector<Interval>& samples);

// (1/|U|^s) ∫_U h / R_s(h 1_I) dx with R_s evaluated exactly and the integral
// computed adaptively on each cell. Throws ConfigError if h vanishes on I.
double bounded_ratio(const GridDensity& h, const Interval& i, const Interval& u, double s);

// |I|^{1+eps} ||h 1_I||_2^2 / ||h 1_I||_1^2 for one interval; 0 if h 1_I = 0.
double l2_ratio(const GridDensity& h, const Interval& i, double eps);
// Maximum of l2_ratio over the samples (intervals where h vanishes skipped).
Witness l2_condition(const GridDensity& h, double eps, const std::vector<Interval>& samples);

// Deterministic interval sampler on [0,1]: an R2 low-discrepancy sequence of
// (center, log-length) pairs whose starting offset is drawn from seed, plus
// anchored intervals [0,r] and [1-r,1] on a geometric ladder of r.
std::vector<Interval> sample_intervals(std::size_t count, std::uint64_t seed, double min_length = 1e-4,
                                       std::size_t anchored_per_side = 64);
// The same sampler mapped affinely into I (no anchored extras beyond I's ends).
std::vector<Interval> sample_subintervals(const Interval& i, std::size_t count, std::uint64_t seed,
                                          double min_relative_length = 1e-3);

struct SelfSimilarityRow {
  double r = 0.0;
  double g_r = 0.0;
  double g_lambda_r = 0.0;
  double relative_deviation = 0.0;
};

struct SelfSimilarity {
  std::vector<SelfSimilarityRow> rows;
  double max_relative_deviation = 0.0;
};

// g(r) = r ∫_0^r h^2 / (∫_0^r h)^2 against g(lambda r). Each r must satisfy
// r < (1-lambda)/lambda.
SelfSimilarity endpoint_selfsimilarity(const GridDensity& h, double lambda, const std::vector<double>& r_list);

struct ThetaRow {
  double r = 0.0;
  double mass = 0.0;  // mu([0,r))
};

struct ThetaLevelRow {
  int k = 0;
  double ratio = 0.0;          // mu(V_k) / mu(V_0), V_k = [0, lambda^k (1-lambda))
  double expected = 0.0;       // 2^{-k}
  double abs_deviation = 0.0;
};

struct ThetaScaling {
  double theta = 0.0;           // -log 2 / log lambda
  double fitted_exponent = 0.0; // least squares slope of log mu([0,r)) on log r
  double k_constant = 0.0;      // mu([0, 1-lambda))
  std::vector<ThetaRow> rows;
  std::vector<ThetaLevelRow> levels;
  double max_level_deviation = 0.0;
};

// r_list empty: 8 full periods of the log-periodic structure, 16 radii per period.
ThetaScaling theta_scaling(const GridDensity& h, double lambda, std::vector<double> r_list = {},
                           int max_level = 8);

struct JensenYoungCheck {
  double inverse_potential_integral = 0.0;  // ∫_I (R_t mu|_I)^{-1} dmu, cell-averaged R (a lower bound)
  double jensen_bound = 0.0;                // mu(I)^2 / ∫_I R_t mu|_I dmu
  double potential_integral = 0.0;          // ∫_I R_t mu|_I dmu (exact)
  double young_bound = 0.0;                 // 2/(1-t) |I|^{1-t} ||h 1_I||_2^2
  bool jensen_holds = false;
  bool young_holds = false;
};

// I must have endpoints on the cell grid so that restriction is exact.
JensenYoungCheck jensen_young_chain(const GridDensity& h, const Interval& i, double t);

std::string witness_csv(const Witness& w);   // interval_left,interval_right,witness_value
std::string witness_summary_json(const Witness& w);

}  // namespace frostnet
