#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace frostnet {

// |prod_n cos(pi w_n xi)| * prod_j |sin(2 pi r_j xi) / (2 pi r_j xi)| * eta(xi),
// with eta = 1 for xi <= eta_cutoff and eta_cutoff / xi beyond.
struct ProductSpectrum {
  std::vector<double> cosine_rates;
  std::vector<double> sinc_radii;
  double eta_cutoff = std::numeric_limits<double>::infinity();

  double modulus(double xi) const;
  // Highest frequency (cycles per unit xi) present in modulus^power.
  double bandwidth(int power) const;
};

// Integral of f(xi)^power xi^beta over [a, b] (0 <= a < b, beta > -1) with f
// replaced by its piecewise-linear interpolant on a uniform grid of the given
// step; the weight is integrated exactly against each hat function.
double hat_quadrature(const ProductSpectrum& f, int power, double beta, double a, double b, double step);

// Mean of |prod cos(pi w_n xi)|^power over [a, b].
double cosine_mean(const ProductSpectrum& f, int power, double a, double b, double step);

// ∫_X^∞ S(xi) xi^beta dxi where S = (prod_j |sinc(2 pi r_j xi)| * eta(xi))^power
// is the non-oscillating part of the spectrum. S is integrated numerically until
// every sinc factor has decayed, then |sin|^power is replaced by its mean
// (1/2 for power 2, 3/8 for power 4) and the rest is done in closed form.
double envelope_tail(const ProductSpectrum& f, int power, double beta, double x);

// Rigorous counterpart of envelope_tail: |cos| <= 1, |sinc(u)| <= min(1, 1/u).
double envelope_bound(const ProductSpectrum& f, int power, double beta, double x);

}  // namespace frostnet
