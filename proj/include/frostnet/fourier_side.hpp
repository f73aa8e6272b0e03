#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "frostnet/riesz_energy.hpp"
#include "frostnet/spectral_quadrature.hpp"

namespace frostnet {

// Fourier transforms use the convention  f^(xi) = ∫ e^{-2 pi i x xi} df(x).

// |mu^| for mu_{alpha,lambda,k,c}: cosine rates (1-lambda) lambda^n, n = 0..k,
// and one sinc factor of radius c 2^{-alpha k}.
ProductSpectrum measure_spectrum(double lambda, double alpha, int k, double c = 1.0);

// The factor measure of convolve_squared: rates (1-lambda) lambda^{2j}, j = 0..k,
// radius c 2^{-2 alpha k}.
ProductSpectrum convolution_factor_spectrum(double lambda, double alpha, int k, double c);

// mu^{(2)} = factor * (factor ∘ S1^{-1}): rates (1-lambda) lambda^i, i = 0..2k+1,
// sinc radii c 2^{-2 alpha k} and lambda c 2^{-2 alpha k}.
ProductSpectrum squared_convolution_spectrum(double lambda, double alpha, int k, double c);

double hhat_modulus(double xi, double lambda, double alpha, int k, double c = 1.0);

// prod_{n=0}^{k} cos(pi lambda^n xi), signed.
double cosine_product(double xi, double lambda, int k);

// Point beyond which |sinc(2 pi r xi)| <= 2^{alpha k} / xi for r = c 2^{-alpha k}:
// 2^{alpha k} max(1, 1/(2 pi c)).
double eta_cutoff(double alpha, int k, double c = 1.0);

// eta(xi) |prod_n cos(pi (1-lambda) lambda^n xi)|, eta = min(1, cutoff/|xi|).
double g_majorant(double xi, double lambda, double alpha, int k, double c = 1.0);
ProductSpectrum majorant_spectrum(double lambda, double alpha, int k, double c = 1.0);

// ∫ |x|^{-s} e^{-2 pi i x xi} dx = c_s |xi|^{s-1}, c_s = 2 Gamma(1-s) sin(pi s/2) (2 pi)^{s-1}.
double analytic_cs(double s);

struct QuadratureOptions {
  double window = 0.0;                      // integration window X; 0 selects the default
  std::size_t node_budget = std::size_t{1} << 24;
  double tail_tolerance = 1e-3;             // relative; tail uncertainty gate
  double near_zero_step = 1.0 / 1024.0;     // step on [0,1]
};

struct SpectralIntegral {
  double window_value = 0.0;   // quadrature over [0, X]
  double tail_estimate = 0.0;  // cosine mean on [X/2, X] times the envelope tail
  double tail_uncertainty = 0.0;
  double tail_envelope = 0.0;  // rigorous bound with |cos| <= 1
  double window = 0.0;
  std::size_t nodes = 0;
  double value() const { return window_value + tail_estimate; }
};

// ∫_0^∞ f(xi)^power xi^beta dxi with breakpoints (interior split points) kept
// as segment ends. window_value is split at the breakpoints into parts.
struct SplitIntegral {
  SpectralIntegral total;
  std::vector<double> parts;  // segment integrals; the last one includes the tail
};

// Throws CertificationError, naming a larger window, when the tail
// uncertainty exceeds tail_tolerance relative to the value.
SplitIntegral spectral_moment(const ProductSpectrum& f, int power, double beta,
                              const std::vector<double>& breakpoints, const QuadratureOptions& opt,
                              double default_window);

// Default window 2^{alpha k + 6}, capped by node_budget nodes.
double default_window(double alpha, int k);

// c_s * 2 ∫_0^∞ |mu^|^2 xi^{s-1} dxi.
EnergyReport energy_via_fourier(double lambda, double alpha, int k, double s,
                                const QuadratureOptions& opt = {}, double c = 1.0);
EnergyReport energy_via_fourier(const ProductSpectrum& spectrum, double s, const QuadratureOptions& opt,
                                double default_window_value);

// Calibrated c_s: 2/((1-s)(2-s)) divided by 2 ∫_0^∞ |mu^|^2 xi^{s-1} for
// lambda = 1/2, alpha = 1, c = 1/4, where mu is exactly Lebesgue measure on
// an interval of length one.
double calibrate_cs(double s, int k, const QuadratureOptions& opt = {});

enum class MomentPower { second, fourth };
std::string to_string(MomentPower p);

struct FourierMomentReport {
  int k = 0;
  double lambda = 0.0;
  double alpha = 0.0;
  double s = 0.0;
  MomentPower power = MomentPower::fourth;
  double J1 = 0.0;  // [0, 1)
  double J2 = 0.0;  // [1, cutoff)
  double J3 = 0.0;  // [cutoff, ∞), including the tail estimate
  double total = 0.0;
  double cutoff = 0.0;
  std::size_t cells = 0;
  double tail_envelope = 0.0;
  double tail_uncertainty = 0.0;
};

// ∫_0^∞ |g|^4 xi^{2s-1} dxi split at 1 and the eta cutoff.
FourierMomentReport fourth_moment(double lambda, double alpha, int k, double s,
                                  const QuadratureOptions& opt = {}, double c = 1.0);
// ∫_0^∞ |mu^|^2 xi^{s-1} dxi with the same split; 2 c_s total is the energy.
FourierMomentReport second_moment(double lambda, double alpha, int k, double s,
                                  const QuadratureOptions& opt = {}, double c = 1.0);
// Fourth moment of an arbitrary majorant with weight xi^{beta}.
FourierMomentReport majorant_fourth_moment(const ProductSpectrum& g, double beta, double cutoff,
                                           const QuadratureOptions& opt, double default_window_value);

std::string moment_csv_header();  // lambda,alpha,k,s,power,J1,J2,J3,total,cutoff
std::string to_csv_row(const FourierMomentReport& r);

struct GrowthFit {
  double rate = 0.0;       // 2 alpha s - 2, the exponent base-2 per unit k
  double amplitude = 0.0;  // A
  double offset = 0.0;     // D
  double rms_residual = 0.0;
};

// Least squares fit of totals ≈ A 2^{rate k} + D with the rate held fixed.
GrowthFit fit_moment_growth(const std::vector<int>& ks, const std::vector<double>& totals, double rate);

struct ConvolutionChain {
  double energy = 0.0;        // Fourier energy of mu^{(2)}
  double fourth_moment = 0.0; // 2 ∫_0^∞ g^4 xi^{s-1} for the factor majorant
  double bound = 0.0;         // c_s lambda^{-s/2} fourth_moment
  bool holds = false;
};

// Energy of mu^{(2)} at s against the Cauchy-Schwarz bound by the fourth
// moment of the factor measure's majorant.
ConvolutionChain convolution_chain(double lambda, double alpha, int k, double s, double c,
                                   const QuadratureOptions& opt = {});

}  // namespace frostnet
