#include "frostnet/fourier_side.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"

namespace frostnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGradedEnd = 256.0;

void check_level(double lambda, double alpha, int k, double c) {
  ExpansionParams{lambda, alpha, k, c}.validate();
}

double min_radius(const ProductSpectrum& f) {
  return f.sinc_radii.empty() ? 0.0 : *std::min_element(f.sinc_radii.begin(), f.sinc_radii.end());
}

double window_for(const ProductSpectrum& f) {
  double r = min_radius(f);
  if (r > 0.0) return 64.0 / r;
  return 64.0 * f.eta_cutoff;
}

}  // namespace

ProductSpectrum measure_spectrum(double lambda, double alpha, int k, double c) {
  check_level(lambda, alpha, k, c);
  ProductSpectrum f;
  for (int n = 0; n <= k; ++n) f.cosine_rates.push_back((1.0 - lambda) * std::pow(lambda, n));
  f.sinc_radii.push_back(c * std::exp2(-alpha * k));
  return f;
}

ProductSpectrum convolution_factor_spectrum(double lambda, double alpha, int k, double c) {
  check_level(lambda, alpha, k, c);
  ProductSpectrum f;
  for (int j = 0; j <= k; ++j) f.cosine_rates.push_back((1.0 - lambda) * std::pow(lambda, 2 * j));
  f.sinc_radii.push_back(c * std::exp2(-2.0 * alpha * k));
  return f;
}

ProductSpectrum squared_convolution_spectrum(double lambda, double alpha, int k, double c) {
  check_level(lambda, alpha, k, c);
  ProductSpectrum f;
  for (int i = 0; i <= 2 * k + 1; ++i) f.cosine_rates.push_back((1.0 - lambda) * std::pow(lambda, i));
  double r = c * std::exp2(-2.0 * alpha * k);
  f.sinc_radii = {r, lambda * r};
  return f;
}

double hhat_modulus(double xi, double lambda, double alpha, int k, double c) {
  return measure_spectrum(lambda, alpha, k, c).modulus(xi);
}

double cosine_product(double xi, double lambda, int k) {
  double p = 1.0;
  for (int n = 0; n <= k; ++n) p *= std::cos(kPi * std::pow(lambda, n) * xi);
  return p;
}

double eta_cutoff(double alpha, int k, double c) {
  return std::exp2(alpha * k) * std::max(1.0, 1.0 / (2.0 * kPi * c));
}

ProductSpectrum majorant_spectrum(double lambda, double alpha, int k, double c) {
  ProductSpectrum g = measure_spectrum(lambda, alpha, k, c);
  g.sinc_radii.clear();
  g.eta_cutoff = eta_cutoff(alpha, k, c);
  return g;
}

double g_majorant(double xi, double lambda, double alpha, int k, double c) {
  return majorant_spectrum(lambda, alpha, k, c).modulus(xi);
}

double analytic_cs(double s) {
  check_riesz_exponent(s);
  return 2.0 * std::tgamma(1.0 - s) * std::sin(kPi * s / 2.0) * std::pow(2.0 * kPi, s - 1.0);
}

double default_window(double alpha, int k) { return std::exp2(alpha * k + 6.0); }

SplitIntegral spectral_moment(const ProductSpectrum& f, int power, double beta,
                              const std::vector<double>& breakpoints, const QuadratureOptions& opt,
                              double default_window_value) {
  double rate = 0.0;
  for (double w : f.cosine_rates) rate = std::max(rate, w);
  double step = 1.0 / (4.0 * std::max(f.bandwidth(power), 1e-300));
  if (rate > 0.0) step = std::min(step, 1.0 / (8.0 * rate));
  double x = opt.window > 0.0 ? opt.window : default_window_value;
  x = std::min(x, 1.0 + static_cast<double>(opt.node_budget) * step);
  x = std::max(x, 2.0);

  std::vector<double> edges{0.0, 1.0};
  for (double b : breakpoints)
    if (b > edges.back()) edges.push_back(b);
  // Last part runs to infinity.
  SplitIntegral out;
  out.total.window = x;
  std::size_t n_parts = edges.size();
  out.parts.assign(n_parts, 0.0);
  for (std::size_t i = 0; i < n_parts; ++i) {
    double lo = edges[i];
    double hi = i + 1 < n_parts ? std::min(edges[i + 1], x) : x;
    if (!(hi > lo)) continue;
    if (i == 0) {
      out.parts[i] = hat_quadrature(f, power, beta, lo, hi, opt.near_zero_step);
      out.total.nodes += static_cast<std::size_t>(std::ceil((hi - lo) / opt.near_zero_step)) + 1;
      continue;
    }
    // The weight still varies on the scale of the oscillation below kGradedEnd.
    double mid = std::clamp(kGradedEnd, lo, hi);
    if (mid > lo) {
      out.parts[i] += hat_quadrature(f, power, beta, lo, mid, step / 16.0);
      out.total.nodes += static_cast<std::size_t>(std::ceil((mid - lo) * 16.0 / step)) + 1;
    }
    if (hi > mid) {
      out.parts[i] += hat_quadrature(f, power, beta, mid, hi, step);
      out.total.nodes += static_cast<std::size_t>(std::ceil((hi - mid) / step)) + 1;
    }
  }
  for (double v : out.parts) out.total.window_value += v;

  double span = x / 8.0;
  double mean_near = cosine_mean(f, power, x - span, x, step);
  double mean_far = cosine_mean(f, power, x - 2.0 * span, x - span, step);
  double tail = envelope_tail(f, power, beta, x);
  out.total.tail_estimate = mean_near * tail;
  out.total.tail_uncertainty = std::fabs(mean_near - mean_far) * tail;
  out.total.tail_envelope = envelope_bound(f, power, beta, x);
  // Share the tail among the parts that extend past the window.
  for (std::size_t i = 0; i < n_parts; ++i) {
    double lo = std::max(edges[i], x);
    double hi_edge = i + 1 < n_parts ? edges[i + 1] : std::numeric_limits<double>::infinity();
    if (!(hi_edge > lo)) continue;
    double piece = envelope_tail(f, power, beta, lo);
    if (std::isfinite(hi_edge)) piece -= envelope_tail(f, power, beta, hi_edge);
    out.parts[i] += mean_near * piece;
  }

  double value = out.total.value();
  if (out.total.tail_uncertainty > opt.tail_tolerance * value)
    throw CertificationError("spectral tail not certified at window " + format_real(x) + ": uncertainty " +
                             format_real(out.total.tail_uncertainty) + " exceeds " +
                             format_real(opt.tail_tolerance) + " of " + format_real(value) +
                             "; suggested window >= " + format_real(4.0 * x) + " (raise the node budget)");
  return out;
}

EnergyReport energy_via_fourier(const ProductSpectrum& spectrum, double s, const QuadratureOptions& opt,
                                double default_window_value) {
  check_riesz_exponent(s);
  auto r = spectral_moment(spectrum, 2, s - 1.0, {}, opt, default_window_value);
  EnergyReport e;
  e.s = s;
  e.method = EnergyMethod::fourier;
  e.value = 2.0 * analytic_cs(s) * r.total.value();
  e.truncation = r.total.window;
  return e;
}

EnergyReport energy_via_fourier(double lambda, double alpha, int k, double s, const QuadratureOptions& opt,
                                double c) {
  ProductSpectrum f = measure_spectrum(lambda, alpha, k, c);
  EnergyReport e = energy_via_fourier(f, s, opt, window_for(f));
  e.lambda = lambda;
  e.alpha = alpha;
  e.k = k;
  return e;
}

double calibrate_cs(double s, int k, const QuadratureOptions& opt) {
  check_riesz_exponent(s);
  ProductSpectrum f = measure_spectrum(0.5, 1.0, k, 0.25);
  auto r = spectral_moment(f, 2, s - 1.0, {}, opt, window_for(f));
  return 2.0 / ((1.0 - s) * (2.0 - s)) / (2.0 * r.total.value());
}

std::string to_string(MomentPower p) { return p == MomentPower::second ? "second" : "fourth"; }

namespace {

FourierMomentReport split_report(const SplitIntegral& r, double cutoff) {
  FourierMomentReport out;
  out.J1 = r.parts[0];
  out.J2 = r.parts.size() > 1 ? r.parts[1] : 0.0;
  for (std::size_t i = 2; i < r.parts.size(); ++i) out.J3 += r.parts[i];
  out.total = out.J1 + out.J2 + out.J3;
  out.cutoff = cutoff;
  out.cells = r.total.nodes;
  out.tail_envelope = r.total.tail_envelope;
  out.tail_uncertainty = r.total.tail_uncertainty;
  return out;
}

}  // namespace

FourierMomentReport majorant_fourth_moment(const ProductSpectrum& g, double beta, double cutoff,
                                           const QuadratureOptions& opt, double default_window_value) {
  auto r = spectral_moment(g, 4, beta, {cutoff}, opt, default_window_value);
  FourierMomentReport out = split_report(r, cutoff);
  out.power = MomentPower::fourth;
  return out;
}

FourierMomentReport fourth_moment(double lambda, double alpha, int k, double s, const QuadratureOptions& opt,
                                  double c) {
  check_riesz_exponent(s);
  ProductSpectrum g = majorant_spectrum(lambda, alpha, k, c);
  FourierMomentReport out = majorant_fourth_moment(g, 2.0 * s - 1.0, g.eta_cutoff, opt, default_window(alpha, k) / c);
  out.k = k;
  out.lambda = lambda;
  out.alpha = alpha;
  out.s = s;
  return out;
}

FourierMomentReport second_moment(double lambda, double alpha, int k, double s, const QuadratureOptions& opt,
                                  double c) {
  check_riesz_exponent(s);
  ProductSpectrum f = measure_spectrum(lambda, alpha, k, c);
  double cutoff = eta_cutoff(alpha, k, c);
  auto r = spectral_moment(f, 2, s - 1.0, {cutoff}, opt, window_for(f));
  FourierMomentReport out = split_report(r, cutoff);
  out.power = MomentPower::second;
  out.k = k;
  out.lambda = lambda;
  out.alpha = alpha;
  out.s = s;
  return out;
}

std::string moment_csv_header() { return "lambda,alpha,k,s,power,J1,J2,J3,total,cutoff\n"; }

std::string to_csv_row(const FourierMomentReport& r) {
  return csv_line({format_real(r.lambda), format_real(r.alpha), std::to_string(r.k), format_real(r.s),
                   to_string(r.power), format_real(r.J1), format_real(r.J2), format_real(r.J3),
                   format_real(r.total), format_real(r.cutoff)});
}

GrowthFit fit_moment_growth(const std::vector<int>& ks, const std::vector<double>& totals, double rate) {
  if (ks.size() != totals.size() || ks.size() < 2) throw ConfigError("growth fit needs >= 2 matched points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = static_cast<double>(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double x = std::exp2(rate * ks[i]);
    sx += x;
    sy += totals[i];
    sxx += x * x;
    sxy += x * totals[i];
  }
  GrowthFit fit;
  fit.rate = rate;
  double det = n * sxx - sx * sx;
  if (std::fabs(det) > 1e-300) {
    fit.amplitude = (n * sxy - sx * sy) / det;
    fit.offset = (sy - fit.amplitude * sx) / n;
  } else {
    fit.offset = sy / n;
  }
  double ss = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    double e = totals[i] - (fit.amplitude * std::exp2(rate * ks[i]) + fit.offset);
    ss += e * e;
  }
  fit.rms_residual = std::sqrt(ss / n);
  return fit;
}

ConvolutionChain convolution_chain(double lambda, double alpha, int k, double s, double c,
                                   const QuadratureOptions& opt) {
  check_riesz_exponent(s);
  ProductSpectrum sq = squared_convolution_spectrum(lambda, alpha, k, c);
  ConvolutionChain out;
  out.energy = energy_via_fourier(sq, s, opt, window_for(sq)).value;
  ProductSpectrum factor = convolution_factor_spectrum(lambda, alpha, k, c);
  ProductSpectrum g = factor;
  g.sinc_radii.clear();
  g.eta_cutoff = eta_cutoff(2.0 * alpha, k, c);
  auto m = majorant_fourth_moment(g, s - 1.0, g.eta_cutoff, opt, window_for(factor));
  out.fourth_moment = 2.0 * m.total;
  out.bound = analytic_cs(s) * std::pow(lambda, -s / 2.0) * out.fourth_moment;
  out.holds = out.energy <= out.bound;
  return out;
}

}  // namespace frostnet
