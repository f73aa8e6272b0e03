#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frostnet/expansion_sets.hpp"
#include "frostnet/measures.hpp"

namespace frostnet {

enum class EnergyMethod { pairwise_exact, grid_quadrature, fourier };
std::string to_string(EnergyMethod m);

struct EnergyReport {
  double lambda = 0.0;
  double alpha = 0.0;
  int k = -1;
  double s = 0.0;
  double value = 0.0;
  EnergyMethod method = EnergyMethod::pairwise_exact;
  std::optional<double> truncation;
};

std::string energy_csv_header();  // lambda,alpha,k,s,method,value,truncation
std::string to_csv_row(const EnergyReport& r);

inline constexpr int kMaxPairwiseLevel = 13;

// Throws ConfigError unless 0 < s < 1.
void check_riesz_exponent(double s);

// Second antiderivative of |u|^{-s}: |u|^{2-s} / ((1-s)(2-s)).
double riesz_second_primitive(double u, double s);

// Exact double integral of |x-y|^{-s} over I1 x I2.
double pair_kernel_integral(const Interval& i1, const Interval& i2, double s);

// Same integral given centers distance and half widths; stable for any gap.
double pair_kernel_integral_centered(double gap, double p, double q, double s);

// Exact Riesz energy of a mixture of uniform bumps, O(M^2) pairs.
double bump_energy(const std::vector<Bump>& bumps, double s);
double cross_energy(const std::vector<Bump>& a, const std::vector<Bump>& b, double s);

// Pairwise exact energy of make_mu-style measures. Throws ConfigError if the
// measure has more than 2^{kMaxPairwiseLevel+1} distinct centers.
EnergyReport energy(const AtomSmoothedMeasure& mu, double s);

// R_s g(x), exact for the step function g.
double potential(const GridDensity& g, double s, double x);
// Cell averages of R_s g, via a Toeplitz product with exact cell-pair weights.
std::vector<double> cell_averaged_potential(const GridDensity& g, double s);
// Exact energy of the step density g, via its autocorrelation.
double grid_energy(const GridDensity& g, double s);

// Integral of |x-y|^{-t} over {|x-y| < m^{-1/s}} against mu x mu.
double truncated_tail_energy(const std::vector<Bump>& bumps, double t, double s, double m);

struct ConvergenceProbe {
  std::vector<EnergyReport> rows;  // one per k, input order
  EnergyReport limit;              // grid energy of the iterated density
  double tail_max_deviation = 0.0; // max |E_k - limit| over the second half of k_list
};

ConvergenceProbe energy_convergence_probe(double lambda, double alpha, double t, double s,
                                          const std::vector<int>& k_list,
                                          std::size_t grid_m = std::size_t{1} << 16);

}  // namespace frostnet
