#include "frostnet/spectral_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frostnet/errors.hpp"
#include "frostnet/parallel.hpp"

namespace frostnet {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBlock = 4096;
constexpr std::size_t kResync = 64;

inline double ipow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

inline double sinc(double u) {
  if (std::fabs(u) < 1e-4) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

// Second antiderivative of x^beta and its derivatives.
struct Weight {
  double beta;
  double q(double x) const { return x <= 0.0 ? 0.0 : std::pow(x, beta + 2.0) / ((beta + 1.0) * (beta + 2.0)); }
  double dq(double x) const { return x <= 0.0 ? 0.0 : std::pow(x, beta + 1.0) / (beta + 1.0); }

  // sum_{n>=2} sign^n Q^{(n)}(x) h^{n-1} / n!, for h << x.
  double taylor(double x, double h, bool even_only, double sign) const {
    double u = h / x;
    double base = h * std::pow(x, beta);
    double coef = 1.0;  // prod_{i=0}^{n-3} (beta - i) / n! * n!/2 tracked below
    double fact = 2.0;  // n!
    double upow = 1.0;  // u^{n-2}
    double sum = 0.0;
    for (int n = 2; n <= 14; ++n) {
      if (!even_only || n % 2 == 0) {
        double sgn = (n % 2 == 0) ? 1.0 : sign;
        sum += sgn * coef / fact * upow * (even_only ? 2.0 : 1.0);
      }
      coef *= beta - (n - 2);
      fact *= n + 1;
      upow *= u;
    }
    return base * sum;
  }

  double full_hat(double x, double h) const {
    if (x > 64.0 * h) return taylor(x, h, true, 1.0);
    return (q(x + h) - 2.0 * q(x) + q(x - h)) / h;
  }
  double left_half(double a, double h) const {
    if (a > 64.0 * h) return taylor(a, h, false, 1.0);
    return (q(a + h) - q(a) - h * dq(a)) / h;
  }
  double right_half(double b, double h) const {
    if (b > 64.0 * h) return taylor(b, h, false, -1.0);
    return (q(b - h) - q(b) + h * dq(b)) / h;
  }
};

// Evaluates modulus^power at xi0 + j h for consecutive j with rotation recurrences.
class NodeWalker {
 public:
  NodeWalker(const ProductSpectrum& f, int power, double h) : f_(f), power_(power), h_(h) {
    std::size_t nc = f.cosine_rates.size();
    c_.resize(nc);
    s_.resize(nc);
    dc_.resize(nc);
    ds_.resize(nc);
    for (std::size_t i = 0; i < nc; ++i) {
      dc_[i] = std::cos(kPi * f.cosine_rates[i] * h);
      ds_[i] = std::sin(kPi * f.cosine_rates[i] * h);
    }
  }

  void reset(double xi) {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      double th = kPi * f_.cosine_rates[i] * xi;
      c_[i] = std::cos(th);
      s_[i] = std::sin(th);
    }
  }

  double cosine_part() const {
    double p = 1.0;
    for (double c : c_) p *= std::fabs(c);
    return ipow(p, power_);
  }

  double value(double xi) const {
    double p = 1.0;
    for (double c : c_) p *= std::fabs(c);
    for (double r : f_.sinc_radii) p *= std::fabs(sinc(2.0 * kPi * r * xi));
    if (xi > f_.eta_cutoff) p *= f_.eta_cutoff / xi;
    return ipow(p, power_);
  }

  void advance() {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      double c = c_[i] * dc_[i] - s_[i] * ds_[i];
      double s = s_[i] * dc_[i] + c_[i] * ds_[i];
      c_[i] = c;
      s_[i] = s;
    }
  }

 private:
  const ProductSpectrum& f_;
  int power_;
  double h_;
  std::vector<double> c_, s_, dc_, ds_;
};

template <class NodeValue>
double walk_sum(const ProductSpectrum& f, int power, double a, std::size_t n_nodes, double h,
                const std::function<double(std::size_t)>& weight, NodeValue node_value) {
  return blocked_sum(n_nodes, kBlock, [&](std::size_t lo, std::size_t hi) {
    NodeWalker w(f, power, h);
    double acc = 0.0;
    for (std::size_t j = lo; j < hi; ++j) {
      double xi = a + static_cast<double>(j) * h;
      if ((j - lo) % kResync == 0)
        w.reset(xi);
      else
        w.advance();
      acc += weight(j) * node_value(w, xi);
    }
    return acc;
  });
}

void check_power(int power) {
  if (power != 2 && power != 4) throw ConfigError("spectral power must be 2 or 4");
}

}  // namespace

double ProductSpectrum::modulus(double xi) const {
  xi = std::fabs(xi);
  double p = 1.0;
  for (double w : cosine_rates) p *= std::fabs(std::cos(kPi * w * xi));
  for (double r : sinc_radii) p *= std::fabs(sinc(2.0 * kPi * r * xi));
  if (xi > eta_cutoff) p *= eta_cutoff / xi;
  return p;
}

double ProductSpectrum::bandwidth(int power) const {
  double nu = 0.0;
  for (double w : cosine_rates) nu += 0.5 * w;
  for (double r : sinc_radii) nu += r;
  return power * nu;
}

double hat_quadrature(const ProductSpectrum& f, int power, double beta, double a, double b, double step) {
  check_power(power);
  if (!(beta > -1.0)) throw ConfigError("weight exponent must exceed -1");
  if (!(a >= 0.0 && b > a && step > 0.0)) throw ConfigError("bad quadrature range");
  auto n = static_cast<std::size_t>(std::ceil((b - a) / step));
  n = std::max<std::size_t>(n, 1);
  double h = (b - a) / static_cast<double>(n);
  Weight wt{beta};
  auto weight = [&](std::size_t j) {
    if (j == 0) return wt.left_half(a, h);
    if (j == n) return wt.right_half(b, h);
    return wt.full_hat(a + static_cast<double>(j) * h, h);
  };
  return walk_sum(f, power, a, n + 1, h, weight,
                  [](const NodeWalker& w, double xi) { return w.value(xi); });
}

double cosine_mean(const ProductSpectrum& f, int power, double a, double b, double step) {
  check_power(power);
  if (!(b > a && step > 0.0)) throw ConfigError("bad averaging range");
  auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / step)));
  double h = (b - a) / static_cast<double>(n);
  auto weight = [&](std::size_t j) { return (j == 0 || j == n) ? 0.5 * h : h; };
  double s = walk_sum(f, power, a, n + 1, h, weight,
                      [](const NodeWalker& w, double) { return w.cosine_part(); });
  return s / (b - a);
}

namespace {

// ∫_lo^hi xi^gamma, hi may be infinite.
double power_integral(double gamma, double lo, double hi) {
  if (std::isinf(hi)) {
    if (!(gamma < -1.0)) return std::numeric_limits<double>::infinity();
    return std::pow(lo, gamma + 1.0) / (-gamma - 1.0);
  }
  if (hi <= lo) return 0.0;
  if (std::fabs(gamma + 1.0) < 1e-14) return std::log(hi / lo);
  return (std::pow(hi, gamma + 1.0) - std::pow(lo, gamma + 1.0)) / (gamma + 1.0);
}

}  // namespace

double envelope_tail(const ProductSpectrum& f, int power, double beta, double x) {
  check_power(power);
  ProductSpectrum env;
  env.sinc_radii = f.sinc_radii;
  env.eta_cutoff = f.eta_cutoff;
  double start = x;
  double value = 0.0;
  if (!env.sinc_radii.empty()) {
    double r_min = *std::min_element(env.sinc_radii.begin(), env.sinc_radii.end());
    double r_max = *std::max_element(env.sinc_radii.begin(), env.sinc_radii.end());
    // Beyond u = 2 pi r xi = 4000 the mean of |sin|^power is accurate to ~1e-7 per unit length.
    double end = 4000.0 / (2.0 * kPi * r_min);
    if (end > start) {
      double step = 1.0 / (32.0 * r_max);
      value += hat_quadrature(env, power, beta, start, end, step);
      start = end;
    }
  }
  double mean = power == 2 ? 0.5 : 0.375;
  double coef = 1.0;
  int decays = 0;
  for (double r : env.sinc_radii) {
    coef *= mean * ipow(1.0 / (2.0 * kPi * r), power);
    ++decays;
  }
  double gamma = beta - power * decays;
  if (std::isfinite(env.eta_cutoff) && start < env.eta_cutoff) {
    value += coef * power_integral(gamma, start, env.eta_cutoff);
    start = env.eta_cutoff;
  }
  if (std::isfinite(env.eta_cutoff)) {
    coef *= ipow(env.eta_cutoff, power);
    gamma -= power;
  }
  return value + coef * power_integral(gamma, start, std::numeric_limits<double>::infinity());
}

double envelope_bound(const ProductSpectrum& f, int power, double beta, double x) {
  check_power(power);
  // Breakpoints where a factor switches from 1 to its power-law bound.
  std::vector<std::pair<double, double>> knees;  // (position, scale)
  for (double r : f.sinc_radii) knees.emplace_back(1.0 / (2.0 * kPi * r), 1.0 / (2.0 * kPi * r));
  if (std::isfinite(f.eta_cutoff)) knees.emplace_back(f.eta_cutoff, f.eta_cutoff);
  std::sort(knees.begin(), knees.end());
  double coef = 1.0;
  double gamma = beta;
  double pos = x;
  double total = 0.0;
  for (const auto& [at, scale] : knees) {
    if (at > pos) {
      total += coef * power_integral(gamma, pos, at);
      pos = at;
    }
    coef *= ipow(scale, power);
    gamma -= power;
  }
  return total + coef * power_integral(gamma, pos, std::numeric_limits<double>::infinity());
}

}  // namespace frostnet
