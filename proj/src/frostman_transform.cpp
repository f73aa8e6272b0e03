#include "frostnet/frostman_transform.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"
#include "frostnet/parallel.hpp"
#include "frostnet/riesz_energy.hpp"

namespace frostnet {

namespace {

void check_interval(const Interval& i, const char* what) {
  if (!(i.left >= 0.0 && i.right <= 1.0 && i.left < i.right))
    throw ConfigError(std::string(what) + " must be a nondegenerate subinterval of [0,1]");
}

}  // namespace

NuMeasure build_nu(const GridDensity& mu, const Interval& i, double t) {
  check_riesz_exponent(t);
  check_interval(i, "restriction interval");
  GridDensity local = restrict(mu, i);
  if (!(local.mass() > 0.0)) throw ConfigError("mu(I) = 0: the reweighted measure is undefined");
  std::vector<double> pot = cell_averaged_potential(local, t);
  std::size_t m = local.resolution();
  std::vector<double> v(m, 0.0);
  for (std::size_t c = 0; c < m; ++c) {
    if (local.value(c) == 0.0) continue;
    if (!(pot[c] > 0.0)) throw CertificationError("potential vanished on the support of mu|_I");
    v[c] = local.value(c) / pot[c];
  }
  double z = pairwise_sum(v) * local.cell_width();
  for (auto& x : v) x /= z;
  NuMeasure nu;
  nu.base = GridDensity(std::move(v));
  nu.interval = i;
  nu.t = t;
  nu.normalizer = z;
  return nu;
}

Witness nu_interval_bound(const NuMeasure& nu, double eps, const std::vector<Interval>& samples) {
  if (!(eps >= 0.0)) throw ConfigError("eps must be nonnegative");
  Witness w;
  double scale = std::pow(nu.interval.length(), nu.t + eps);
  for (const auto& u : samples) {
    if (!(u.left >= nu.interval.left && u.right <= nu.interval.right && u.left < u.right))
      throw ConfigError("sample interval U must lie inside I");
    double value = nu.base.mass_in(u.left, u.right) * scale / std::pow(u.length(), nu.t);
    w.rows.push_back({u, value});
    if (w.sample_count == 0 || value > w.value) {
      w.value = value;
      w.argmax = u;
    }
    ++w.sample_count;
  }
  return w;
}

namespace {

struct Piece {
  double left, right, height;
};

struct RatioIntegrand {
  const std::vector<Piece>* pieces;
  double s;
  double height;
};

double potential_of_pieces(const std::vector<Piece>& pieces, double s, double x) {
  auto G = [s](double u) {
    double a = std::pow(std::fabs(u), 1.0 - s) / (1.0 - s);
    return u < 0.0 ? -a : a;
  };
  double r = 0.0;
  for (const auto& p : pieces) r += p.height * (G(x - p.left) - G(x - p.right));
  return r;
}

double ratio_integrand(double x, void* params) {
  auto* q = static_cast<RatioIntegrand*>(params);
  return q->height / potential_of_pieces(*q->pieces, q->s, x);
}

}  // namespace

double bounded_ratio(const GridDensity& h, const Interval& i, const Interval& u, double s) {
  check_riesz_exponent(s);
  check_interval(i, "interval I");
  check_interval(u, "interval U");
  if (u.left < i.left || u.right > i.right) throw ConfigError("U must lie inside I");
  std::size_t m = h.resolution();
  double w = h.cell_width();
  std::vector<Piece> pieces;
  for (std::size_t c = 0; c < m; ++c) {
    double lo = std::max(i.left, static_cast<double>(c) * w);
    double hi = std::min(i.right, static_cast<double>(c + 1) * w);
    if (lo < hi && h.value(c) > 0.0) pieces.push_back({lo, hi, h.value(c)});
  }
  if (pieces.empty()) throw ConfigError("h vanishes almost everywhere on I");

  gsl_error_handler_t* old = gsl_set_error_handler_off();
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(200);
  double total = 0.0;
  int status_all = GSL_SUCCESS;
  for (const auto& p : pieces) {
    double lo = std::max(p.left, u.left), hi = std::min(p.right, u.right);
    if (!(lo < hi)) continue;
    RatioIntegrand params{&pieces, s, p.height};
    gsl_function f{&ratio_integrand, &params};
    double result = 0.0, err = 0.0;
    int status = gsl_integration_qags(&f, lo, hi, 0.0, 1e-12, 200, ws, &result, &err);
    if (status != GSL_SUCCESS && status != GSL_EROUND) status_all = status;
    total += result;
  }
  gsl_integration_workspace_free(ws);
  gsl_set_error_handler(old);
  if (status_all != GSL_SUCCESS)
    throw CertificationError(std::string("ratio integral did not converge: ") + gsl_strerror(status_all));
  return total / std::pow(u.length(), s);
}

double l2_ratio(const GridDensity& h, const Interval& i, double eps) {
  double l1 = h.mass_in(i.left, i.right);
  if (!(l1 > 0.0)) return 0.0;
  double l2 = h.square_integral_in(i.left, i.right);
  return std::pow(i.length(), 1.0 + eps) * l2 / (l1 * l1);
}

Witness l2_condition(const GridDensity& h, double eps, const std::vector<Interval>& samples) {
  if (!(eps >= 0.0)) throw ConfigError("eps must be nonnegative");
  Witness w;
  for (const auto& i : samples) {
    if (!(h.mass_in(i.left, i.right) > 0.0)) continue;
    double v = l2_ratio(h, i, eps);
    w.rows.push_back({i, v});
    if (w.sample_count == 0 || v > w.value) {
      w.value = v;
      w.argmax = i;
    }
    ++w.sample_count;
  }
  return w;
}

std::vector<Interval> sample_intervals(std::size_t count, std::uint64_t seed, double min_length,
                                       std::size_t anchored_per_side) {
  if (!(min_length > 0.0 && min_length < 1.0)) throw ConfigError("minimum sample length must lie in (0,1)");
  // R2 sequence: additive recurrence with the inverse powers of the plastic number.
  const double g = 1.32471795724474602596;
  const double a1 = 1.0 / g, a2 = 1.0 / (g * g);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double o1 = unit(rng), o2 = unit(rng);
  double log_min = std::log(min_length);
  std::vector<Interval> out;
  out.reserve(count + 2 * anchored_per_side);
  for (std::size_t n = 1; n <= count; ++n) {
    double u1 = std::fmod(o1 + a1 * static_cast<double>(n), 1.0);
    double u2 = std::fmod(o2 + a2 * static_cast<double>(n), 1.0);
    double len = std::exp(log_min * (1.0 - u2));
    double lo = u1 * (1.0 - len);
    out.push_back({lo, lo + len});
  }
  for (std::size_t j = 0; j < anchored_per_side; ++j) {
    double frac = anchored_per_side == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(anchored_per_side - 1);
    double r = std::exp(log_min * frac);
    out.push_back({0.0, r});
    out.push_back({1.0 - r, 1.0});
  }
  return out;
}

std::vector<Interval> sample_subintervals(const Interval& i, std::size_t count, std::uint64_t seed,
                                          double min_relative_length) {
  check_interval(i, "interval I");
  auto unit = sample_intervals(count, seed, min_relative_length, 0);
  double len = i.length();
  for (auto& u : unit) {
    u.left = i.left + len * u.left;
    u.right = std::min(i.right, i.left + len * u.right);
  }
  std::erase_if(unit, [](const Interval& u) { return !(u.left < u.right); });
  return unit;
}

SelfSimilarity endpoint_selfsimilarity(const GridDensity& h, double lambda, const std::vector<double>& r_list) {
  if (!(lambda >= 0.5 && lambda < 1.0)) throw ConfigError("lambda must lie in [1/2, 1)");
  double limit = (1.0 - lambda) / lambda;
  auto g = [&](double r) {
    double l1 = h.mass_in(0.0, r);
    return r * h.square_integral_in(0.0, r) / (l1 * l1);
  };
  SelfSimilarity out;
  for (double r : r_list) {
    if (!(r > 0.0 && r < limit))
      throw ConfigError("radius " + format_real(r) + " is outside (0, (1-lambda)/lambda)");
    if (!(h.mass_in(0.0, lambda * r) > 0.0)) throw ConfigError("density vanishes near 0; g undefined");
    SelfSimilarityRow row{r, g(r), g(lambda * r), 0.0};
    row.relative_deviation = std::fabs(row.g_lambda_r - row.g_r) / row.g_r;
    out.max_relative_deviation = std::max(out.max_relative_deviation, row.relative_deviation);
    out.rows.push_back(row);
  }
  return out;
}

ThetaScaling theta_scaling(const GridDensity& h, double lambda, std::vector<double> r_list, int max_level) {
  if (!(lambda >= 0.5 && lambda < 1.0)) throw ConfigError("lambda must lie in [1/2, 1)");
  if (max_level < 0) throw ConfigError("max level must be nonnegative");
  ThetaScaling out;
  out.theta = -std::log(2.0) / std::log(lambda);
  double top = 1.0 - lambda;
  if (r_list.empty()) {
    int per_period = 16;
    for (int j = 0; j <= per_period * max_level; ++j)
      r_list.push_back(top * std::pow(lambda, static_cast<double>(j) / per_period));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (double r : r_list) {
    double mass = h.mass_in(0.0, r);
    out.rows.push_back({r, mass});
    if (mass > 0.0) {
      double x = std::log(r), y = std::log(mass);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
  }
  if (n >= 2) out.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.k_constant = h.mass_in(0.0, top);
  for (int k = 0; k <= max_level; ++k) {
    double ratio = h.mass_in(0.0, top * std::pow(lambda, k)) / out.k_constant;
    double expected = std::ldexp(1.0, -k);
    double dev = std::fabs(ratio - expected);
    out.levels.push_back({k, ratio, expected, dev});
    out.max_level_deviation = std::max(out.max_level_deviation, dev);
  }
  return out;
}

JensenYoungCheck jensen_young_chain(const GridDensity& h, const Interval& i, double t) {
  check_riesz_exponent(t);
  check_interval(i, "interval I");
  double md = static_cast<double>(h.resolution());
  if (std::floor(i.left * md) != i.left * md || std::floor(i.right * md) != i.right * md)
    throw ConfigError("interval endpoints must lie on the cell grid");
  GridDensity local = restrict(h, i);
  double w = local.cell_width();
  std::vector<double> pot = cell_averaged_potential(local, t);
  std::vector<double> inv, dir;
  for (std::size_t c = 0; c < local.resolution(); ++c) {
    double v = local.value(c);
    if (v == 0.0) continue;
    inv.push_back(v * w / pot[c]);
    dir.push_back(v * w * pot[c]);
  }
  JensenYoungCheck out;
  double mass = local.mass();
  out.inverse_potential_integral = pairwise_sum(inv);
  out.potential_integral = pairwise_sum(dir);
  if (out.potential_integral > 0.0) out.jensen_bound = mass * mass / out.potential_integral;
  out.young_bound = 2.0 / (1.0 - t) * std::pow(i.length(), 1.0 - t) * local.l2_norm_squared();
  const double rel = 1e-12;
  out.jensen_holds = out.inverse_potential_integral >= out.jensen_bound * (1.0 - rel);
  out.young_holds = out.potential_integral <= out.young_bound * (1.0 + rel);
  return out;
}

std::string witness_csv(const Witness& w) {
  std::string out = "interval_left,interval_right,witness_value\n";
  for (const auto& r : w.rows)
    out += csv_line({format_real(r.interval.left), format_real(r.interval.right), format_real(r.value)});
  return out;
}

std::string witness_summary_json(const Witness& w) {
  return "{\"max\": " + format_real(w.value) + ", \"argmax\": [" + format_real(w.argmax.left) + ", " +
         format_real(w.argmax.right) + "], \"sample_count\": " + std::to_string(w.sample_count) + "}\n";
}

}  // namespace frostnet
