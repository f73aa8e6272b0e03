// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "frostnet/errors.hpp"
#include "frostnet/fourier_side.hpp"
#include "frostnet/frostman_transform.hpp"
#include "frostnet/measures.hpp"
#include "frostnet/net_measure.hpp"
#include "frostnet/riesz_energy.hpp"
#include "frostnet/sweep_driver.hpp"
#include "oracles.hpp"

using namespace frostnet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome lebesgue_anchor() {
  auto t0 = std::chrono::steady_clock::now();
  const double target = 8.0 / 3.0;
  double spatial = energy(make_mu({0.5, 2.0, 12, 1.0}), 0.5).value;
  double fourier = energy_via_fourier(0.5, 2.0, 12, 0.5).value;
  double elapsed = seconds_since(t0);
  double dev = std::fabs(spatial - target) / target;
  double agree = std::fabs(fourier - spatial) / spatial;
  return {dev < 0.01 && agree < 0.01 && elapsed < 30.0,
          "k=12 spatial " + fmt("%.6f", spatial) + " vs 8/3 rel " + fmt("%.3g", dev) + ", fourier " +
              fmt("%.6f", fourier) + " rel " + fmt("%.3g", agree) + ", " + fmt("%.1f", elapsed) + " s"};
}

Outcome spatial_fourier_identity() {
  double worst = 0.0;
  int cells = 0;
  for (double alpha : {1.5, 2.0}) {
    double s = 1.0 / alpha - 0.05;
    double ratio = calibrate_cs(s, 10) / analytic_cs(s);
    for (double l : {0.5, 0.55, 0.6})
      for (int k : {4, 6, 8, 10}) {
        double spatial = energy(make_mu({l, alpha, k, 1.0}), s).value;
        double fourier = energy_via_fourier(l, alpha, k, s).value * ratio;
        worst = std::max(worst, std::fabs(spatial - fourier) / spatial);
        ++cells;
      }
  }
  return {worst < 0.01, std::to_string(cells) + " cells, max rel deviation " + fmt("%.3g", worst)};
}

Outcome tail_energy_bound() {
  std::mt19937_64 rng(301);
  int violations = 0, checks = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    auto mu = oracle::random_atom_measure(rng, 24);
    for (double s : {0.6, 0.8}) {
      double es = bump_energy(mu, s);
      for (double t : {0.3, 0.5})
        for (double m : {10.0, 100.0, 1000.0}) {
          double bound = es * (s / (s - t)) * std::pow(m, t / s - 1.0);
          double tail = truncated_tail_energy(mu, t, s, m);
          worst = std::max(worst, tail / bound);
          if (!(tail <= bound)) ++violations;
          ++checks;
        }
    }
  }
  return {violations == 0, std::to_string(checks) + " checks, " + std::to_string(violations) +
                               " violations, max tail/bound " + fmt("%.3g", worst)};
}

Outcome potential_ratio_bound() {
  std::mt19937_64 rng(401);
  int violations = 0, done = 0;
  double worst = 0.0;
  while (done < 500) {
    std::size_t m = std::size_t{1} << (2 + rng() % 7);
    auto h = oracle::random_step(rng, m, 0.4);
    Interval i = oracle::random_subinterval(rng, {0, 1});
    if (h.mass_in(i.left, i.right) <= 0.0) continue;
    Interval u = oracle::random_subinterval(rng, i);
    double s = 0.05 + 0.9 * std::uniform_real_distribution<double>(0, 1)(rng);
    double v = bounded_ratio(h, i, u, s);
    worst = std::max(worst, v);
    if (!(v <= 1.0 + 1e-9)) ++violations;
    ++done;
  }
  return {violations == 0, "500 densities, " + std::to_string(violations) + " violations, max ratio " + fmt("%.6f", worst)};
}

Outcome net_measure_oracle() {
  std::mt19937_64 rng(501);
  int mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto cells = oracle::random_cells(rng);
    auto e = oracle::from_cells(cells);
    for (double t : {0.3, 0.5, 0.7, 1.0})
      if (m_infty(e, t, oracle::kCoverDepth).value != oracle::min_cover_cost(cells, t)) ++mismatches;
  }
  auto two = IntervalUnion::from_intervals({{0.0, 0.25}, {0.5, 0.75}});
  double worst = 0.0;
  for (double t : {0.3, 0.7}) {
    double expected = std::min(1.0, 2.0 * std::pow(4.0, -t));
    worst = std::max(worst, std::fabs(m_infty(two, t).value - expected));
  }
  return {mismatches == 0 && worst < 1e-15,
          "200 oracle comparisons, " + std::to_string(mismatches) + " mismatches; closed form error " + fmt("%.3g", worst)};
}

Outcome functional_equation_residual() {
  double worst = 0.0;
  for (double l : {0.6, 0.7}) {
    auto h = iterate_functional_equation(l, 40, std::size_t{1} << 16);
    std::mt19937_64 rng(601);
    for (int trial = 0; trial < 100; ++trial) {
      Interval i = oracle::random_subinterval(rng, {0, 1});
      double lhs = h.mass_in(i.left, i.right);
      double rhs = 0.5 * h.mass_in(i.left / l, i.right / l) +
                   0.5 * h.mass_in((i.left - (1 - l)) / l, (i.right - (1 - l)) / l);
      worst = std::max(worst, std::fabs(lhs - rhs));
    }
  }
  return {worst <= 1e-4, "lambda 0.6 and 0.7, 200 intervals, max abs residual " + fmt("%.3g", worst)};
}

Outcome theta_scaling_check() {
  const double l = 0.7;
  auto h = iterate_functional_equation(l, 40, std::size_t{1} << 18);
  auto th = theta_scaling(h, l, {}, 8);
  double rel = std::fabs(th.fitted_exponent - th.theta) / th.theta;
  return {th.max_level_deviation <= 1e-3 && rel <= 0.05,
          "max |V_k ratio - 2^-k| " + fmt("%.3g", th.max_level_deviation) + ", fitted " + fmt("%.4f", th.fitted_exponent) +
              " vs theta " + fmt("%.4f", th.theta) + " rel " + fmt("%.3g", rel)};
}

Outcome selfsimilarity_check() {
  const double l = 0.6;
  std::vector<double> radii;
  for (int j = 0; j < 8; ++j) radii.push_back(std::pow(l, 3) * 0.1 * std::pow(l, j));
  std::vector<double> dev;
  for (int e : {16, 17, 18}) {
    auto h = iterate_functional_equation(l, 40, std::size_t{1} << e);
    dev.push_back(endpoint_selfsimilarity(h, l, radii).max_relative_deviation);
  }
  bool decreasing = dev[1] < dev[0] && dev[2] < dev[1];
  return {dev[2] < 0.02 && decreasing, "max rel deviation at 2^16, 2^17, 2^18: " + fmt("%.3g", dev[0]) + ", " +
                                           fmt("%.3g", dev[1]) + ", " + fmt("%.3g", dev[2])};
}

Outcome fourier_product_identity() {
  std::mt19937_64 rng(901);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    int k = 2 + static_cast<int>(rng() % 10);
    double xi = u(rng), den = std::sin(M_PI * xi / std::exp2(k));
    if (std::fabs(den) < 1e-3 || std::fabs(std::sin(2 * M_PI * xi)) < 1e-6) continue;
    double expected = std::sin(2 * M_PI * xi) / (std::exp2(k + 1) * den);
    worst = std::max(worst, std::fabs(cosine_product(xi, 0.5, k) - expected) / std::fabs(expected));
    ++done;
  }
  return {worst <= 1e-10, "100 frequencies, max rel error " + fmt("%.3g", worst)};
}

Outcome jensen_young() {
  std::mt19937_64 rng(1001);
  int jensen_fail = 0, young_fail = 0, done = 0;
  while (done < 200) {
    std::size_t m = std::size_t{1} << (4 + rng() % 5);
    auto h = oracle::random_step(rng, m, 0.3);
    std::size_t a = rng() % m, b = rng() % m;
    if (a > b) std::swap(a, b);
    Interval i{static_cast<double>(a) / m, static_cast<double>(b + 1) / m};
    if (h.mass_in(i.left, i.right) <= 0.0) continue;
    double t = 0.1 + 0.8 * std::uniform_real_distribution<double>(0, 1)(rng);
    auto c = jensen_young_chain(h, i, t);
    if (!c.jensen_holds) ++jensen_fail;
    if (!c.young_holds) ++young_fail;
    ++done;
  }
  return {jensen_fail == 0 && young_fail == 0,
          "200 instances, Jensen violations " + std::to_string(jensen_fail) + ", Young violations " + std::to_string(young_fail)};
}

Outcome convolution_support() {
  const double l = std::sqrt(0.55), alpha = 1.5, c = default_convolution_scale(alpha);
  const int k = 3;
  auto sc = convolve_squared(l, alpha, k, c, std::size_t{1} << 16);
  // Independent enumeration of every product support interval.
  auto factor = enumerate_digit_sums(1.0 - l, l * l, k);
  double half = (1.0 + l) * c * std::exp2(-2.0 * alpha * k);
  std::vector<Interval> supports;
  for (const auto& a : factor.points)
    for (const auto& b : factor.points) supports.push_back({a.value + l * b.value - half, a.value + l * b.value + half});
  auto support = IntervalUnion::from_intervals(supports);
  auto hood = build_level_set({l, alpha, 2 * k + 1, 1.0});
  bool contained = union_measure(intersect(support, hood)) == union_measure(support);
  for (const auto& p : support.intervals()) {
    bool inside = false;
    for (const auto& q : hood.intervals()) inside = inside || (q.left <= p.left && p.right <= q.right);
    contained = contained && inside;
  }
  // Grid cells that miss the neighbourhood carry no mass.
  std::size_t m = sc.density.resolution(), stray = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double a = static_cast<double>(i) / m, b = static_cast<double>(i + 1) / m;
    auto cell = IntervalUnion::from_intervals({{a, b}});
    if (sc.density.value(i) > 0 && union_measure(intersect(cell, hood)) == 0.0) ++stray;
  }
  return {contained && stray == 0, std::to_string(supports.size()) + " pair supports, contained " +
                                       (contained ? "yes" : "no") + ", stray cells " + std::to_string(stray)};
}

Outcome sweep_determinism() {
  SweepConfig cfg;
  cfg.lambda_grid = {0.5, 0.55, 0.6};
  cfg.alpha = 1.5;
  cfg.k_max = 6;
  cfg.seed = 12;
  cfg.l2_samples = 200;
  cfg.grid_resolution = std::size_t{1} << 12;
  std::string a = sweep_csv(run_sweep(cfg));
  std::string b = sweep_csv(run_sweep(cfg));
  return {a == b && a.size() > sweep_csv_header().size(), std::to_string(a.size()) + " bytes, identical " + (a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria{
      {"lebesgue anchor", lebesgue_anchor},
      {"spatial and fourier energies agree", spatial_fourier_identity},
      {"truncated tail energy bound", tail_energy_bound},
      {"potential ratio bound", potential_ratio_bound},
      {"net measure matches exhaustive covers", net_measure_oracle},
      {"functional equation residual", functional_equation_residual},
      {"theta scaling", theta_scaling_check},
      {"endpoint self-similarity", selfsimilarity_check},
      {"cosine product identity", fourier_product_identity},
      {"jensen and young inequalities", jensen_young},
      {"convolution square support", convolution_support},
      {"sweep determinism", sweep_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
