#include "frostnet/riesz_energy.hpp"

#include <algorithm>
#include <cmath>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"
#include "frostnet/parallel.hpp"
#include "frostnet/toeplitz.hpp"

namespace frostnet {

std::string to_string(EnergyMethod m) {
  switch (m) {
    case EnergyMethod::pairwise_exact: return "pairwise_exact";
    case EnergyMethod::grid_quadrature: return "grid_quadrature";
    case EnergyMethod::fourier: return "fourier";
  }
  return "unknown";
}

std::string energy_csv_header() { return "lambda,alpha,k,s,method,value,truncation\n"; }

std::string to_csv_row(const EnergyReport& r) {
  return csv_line({format_real(r.lambda), format_real(r.alpha), std::to_string(r.k), format_real(r.s),
                   to_string(r.method), format_real(r.value), format_real(r.truncation)});
}

void check_riesz_exponent(double s) {
  if (!(s > 0.0 && s < 1.0)) throw ConfigError("Riesz exponent must lie in (0,1), got " + format_real(s));
}

double riesz_second_primitive(double u, double s) {
  return std::pow(std::fabs(u), 2.0 - s) / ((1.0 - s) * (2.0 - s));
}

namespace {

long double phi_ld(long double u, long double s) {
  return std::pow(std::fabs(u), 2.0L - s) / ((1.0L - s) * (2.0L - s));
}

// Even Taylor expansion of the four-corner difference around the center gap D.
double series_pair(double D, double p, double q, double s) {
  double a = p + q, b = std::fabs(p - q);
  double x = a / D, y = b / D;
  double x2 = x * x, y2 = y * y;
  // n = 2 term: 2 * D^{-s}/2 * (a^2 - b^2) = D^{-s} * 4pq.
  double xp = x2, yp = y2;  // (a/D)^n, (b/D)^n
  double coef = 1.0;        // 2 prod_{i=0}^{n-3} (-s-i) / n!
  double sum = 0.0;
  for (int n = 2; n <= 80; n += 2) {
    double term = coef * (xp - yp);
    sum += term;
    if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    // advance n -> n+2: multiply by (-s-(n-2))(-s-(n-1)) / ((n+1)(n+2))
    coef *= (-s - (n - 2)) * (-s - (n - 1)) / (static_cast<double>(n + 1) * (n + 2));
    xp *= x2;
    yp *= y2;
  }
  // Phi^{(n)}(D) a^n = prod * D^{2-s} (a/D)^n.
  return std::pow(D, 2.0 - s) * sum;
}

}  // namespace

double pair_kernel_integral_centered(double gap, double p, double q, double s) {
  double D = std::fabs(gap);
  if (D > 0.0 && (p + q) < 0.5 * D) return series_pair(D, p, q, s);
  long double Dl = D, pl = p, ql = q, sl = s;
  long double v = phi_ld(Dl + pl + ql, sl) + phi_ld(Dl - pl - ql, sl) - phi_ld(Dl + pl - ql, sl) -
                  phi_ld(Dl - pl + ql, sl);
  return static_cast<double>(v);
}

double pair_kernel_integral(const Interval& i1, const Interval& i2, double s) {
  check_riesz_exponent(s);
  if (!(i1.length() > 0.0) || !(i2.length() > 0.0))
    throw ConfigError("pair kernel integral needs intervals of positive length");
  double c1 = 0.5 * (i1.left + i1.right), c2 = 0.5 * (i2.left + i2.right);
  return pair_kernel_integral_centered(c2 - c1, 0.5 * i1.length(), 0.5 * i2.length(), s);
}

namespace {

inline double bump_pair(const Bump& a, const Bump& b, double s) {
  double p = a.half_width(), q = b.half_width();
  double v = pair_kernel_integral_centered(b.center() - a.center(), p, q, s);
  return a.mass * b.mass * v / (4.0 * p * q);
}

}  // namespace

double bump_energy(const std::vector<Bump>& bumps, double s) {
  check_riesz_exponent(s);
  std::size_t n = bumps.size();
  return blocked_sum(n, 32, [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double row = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) row += bump_pair(bumps[i], bumps[j], s);
      acc += 2.0 * row + bump_pair(bumps[i], bumps[i], s);
    }
    return acc;
  });
}

double cross_energy(const std::vector<Bump>& a, const std::vector<Bump>& b, double s) {
  check_riesz_exponent(s);
  return blocked_sum(a.size(), 32, [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      for (const auto& q : b) acc += bump_pair(a[i], q, s);
    return acc;
  });
}

EnergyReport energy(const AtomSmoothedMeasure& mu, double s) {
  check_riesz_exponent(s);
  if (mu.centers().points.size() > (std::size_t{1} << (kMaxPairwiseLevel + 1)))
    throw ConfigError("pairwise energy is capped at 2^" + std::to_string(kMaxPairwiseLevel + 1) +
                      " centers; use the Fourier path");
  EnergyReport r;
  r.s = s;
  r.method = EnergyMethod::pairwise_exact;
  r.value = bump_energy(mu.bumps(), s);
  return r;
}

double potential(const GridDensity& g, double s, double x) {
  check_riesz_exponent(s);
  auto G = [s](double u) {
    double a = std::pow(std::fabs(u), 1.0 - s) / (1.0 - s);
    return u < 0.0 ? -a : a;
  };
  std::size_t m = g.resolution();
  double w = g.cell_width();
  std::vector<double> terms(m);
  for (std::size_t j = 0; j < m; ++j) {
    double v = g.value(j);
    terms[j] = v == 0.0 ? 0.0 : v * (G(x - static_cast<double>(j) * w) - G(x - static_cast<double>(j + 1) * w));
  }
  return pairwise_sum(terms);
}

namespace {

// K[d] = double integral of the kernel over cell 0 x cell d.
std::vector<double> cell_pair_kernel(std::size_t m, double s) {
  double w = 1.0 / static_cast<double>(m);
  std::vector<double> K(m);
  for (std::size_t d = 0; d < m; ++d)
    K[d] = pair_kernel_integral_centered(static_cast<double>(d) * w, 0.5 * w, 0.5 * w, s);
  return K;
}

}  // namespace

std::vector<double> cell_averaged_potential(const GridDensity& g, double s) {
  check_riesz_exponent(s);
  auto K = cell_pair_kernel(g.resolution(), s);
  auto y = symmetric_toeplitz_apply(K, g.values());
  double inv_w = static_cast<double>(g.resolution());
  for (auto& v : y) v *= inv_w;
  return y;
}

double grid_energy(const GridDensity& g, double s) {
  check_riesz_exponent(s);
  auto K = cell_pair_kernel(g.resolution(), s);
  auto r = autocorrelation(g.values());
  std::vector<double> terms(r.size());
  for (std::size_t d = 0; d < r.size(); ++d) terms[d] = (d == 0 ? 1.0 : 2.0) * K[d] * r[d];
  return pairwise_sum(terms);
}

namespace {

// Second antiderivative of |u|^{-t} 1{|u| < rho}, continued linearly past rho.
long double clipped_primitive(long double u, long double t, long double rho) {
  long double a = std::fabs(u);
  long double c = 1.0L / ((1.0L - t) * (2.0L - t));
  if (a <= rho) return c * std::pow(a, 2.0L - t);
  return c * std::pow(rho, 2.0L - t) + std::pow(rho, 1.0L - t) / (1.0L - t) * (a - rho);
}

}  // namespace

double truncated_tail_energy(const std::vector<Bump>& bumps, double t, double s, double m) {
  check_riesz_exponent(s);
  if (!(t > 0.0 && t < s)) throw ConfigError("tail energy needs 0 < t < s");
  if (!(m > 1.0)) throw ConfigError("truncation level m must exceed 1");
  double rho = std::pow(m, -1.0 / s);
  std::vector<Bump> sorted = bumps;
  std::sort(sorted.begin(), sorted.end(), [](const Bump& a, const Bump& b) { return a.left < b.left; });
  std::size_t n = sorted.size();
  auto pair_value = [&](const Bump& a, const Bump& b) -> double {
    double p = a.half_width(), q = b.half_width();
    double D = std::fabs(b.center() - a.center());
    if (D - p - q >= rho) return 0.0;
    double v;
    if (D + p + q <= rho) {
      v = pair_kernel_integral_centered(D, p, q, t);
    } else {
      long double Dl = D, pl = p, ql = q;
      v = static_cast<double>(clipped_primitive(Dl + pl + ql, t, rho) + clipped_primitive(Dl - pl - ql, t, rho) -
                              clipped_primitive(Dl + pl - ql, t, rho) - clipped_primitive(Dl - pl + ql, t, rho));
    }
    return a.mass * b.mass * v / (4.0 * p * q);
  };
  return blocked_sum(n, 32, [&](std::size_t lo, std::size_t hi) {
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      double row = 0.0;
      // Later bumps start no earlier, so the first one out of reach ends the scan.
      for (std::size_t j = i + 1; j < n && sorted[j].left - sorted[i].right < rho; ++j)
        row += pair_value(sorted[i], sorted[j]);
      acc += 2.0 * row + pair_value(sorted[i], sorted[i]);
    }
    return acc;
  });
}

ConvergenceProbe energy_convergence_probe(double lambda, double alpha, double t, double s,
                                          const std::vector<int>& k_list, std::size_t grid_m) {
  check_riesz_exponent(s);
  check_riesz_exponent(t);
  if (!(t < s)) throw ConfigError("convergence probe needs t < s");
  ConvergenceProbe out;
  for (int k : k_list) {
    ExpansionParams p{lambda, alpha, k, 1.0};
    EnergyReport r = energy(make_mu(p), t);
    r.lambda = lambda;
    r.alpha = alpha;
    r.k = k;
    out.rows.push_back(r);
  }
  GridDensity h = iterate_functional_equation(lambda, 40, grid_m);
  out.limit.lambda = lambda;
  out.limit.alpha = alpha;
  out.limit.s = t;
  out.limit.method = EnergyMethod::grid_quadrature;
  out.limit.value = grid_energy(h, t);
  for (std::size_t i = out.rows.size() / 2; i < out.rows.size(); ++i)
    out.tail_max_deviation = std::max(out.tail_max_deviation, std::fabs(out.rows[i].value - out.limit.value));
  return out;
}

}  // namespace frostnet
