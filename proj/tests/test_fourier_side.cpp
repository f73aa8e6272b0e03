#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "frostnet/errors.hpp"
#include "frostnet/fourier_side.hpp"
#include "frostnet/riesz_energy.hpp"
#include "frostnet/spectral_quadrature.hpp"

using namespace frostnet;

TEST_CASE("half-angle telescoping at lambda 1/2") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  int checked = 0;
  for (int k : {3, 8}) {
    while (checked < 50 * (k == 3 ? 1 : 2)) {
      double xi = u(rng), den = std::sin(M_PI * xi / std::exp2(k));
      if (std::fabs(den) < 1e-3) continue;
      double expected = std::sin(2 * M_PI * xi) / (std::exp2(k + 1) * den);
      double got = cosine_product(xi, 0.5, k);
      CHECK(std::fabs(got - expected) <= 1e-10 * std::max(std::fabs(expected), 1e-3));
      ++checked;
    }
  }
}

TEST_CASE("product formula against a direct transform of the measure") {
  for (double l : {0.5, 0.6, 0.7}) {
    ExpansionParams p{l, 1.5, 5, 1.0};
    auto mu = make_mu(p);
    double r = mu.radius();
    for (double xi : {0.0, 0.37, 2.9, 11.3, 60.1}) {
      std::complex<double> sum = 0.0;
      double w = 1.0 / static_cast<double>(mu.centers().total_multiplicity());
      for (const auto& c : mu.centers().points)
        sum += w * static_cast<double>(c.multiplicity) * std::exp(std::complex<double>(0, -2 * M_PI * c.value * xi));
      double arg = 2 * M_PI * r * xi;
      double sinc = xi == 0.0 ? 1.0 : std::sin(arg) / arg;
      CHECK(hhat_modulus(xi, l, 1.5, 5) == doctest::Approx(std::abs(sum) * std::fabs(sinc)).epsilon(1e-10));
    }
  }
}

TEST_CASE("majorant dominates the spectrum") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 3000.0);
  for (int trial = 0; trial < 500; ++trial) {
    double xi = u(rng);
    CHECK(g_majorant(xi, 0.6, 1.5, 4, 0.5) + 1e-15 >= hhat_modulus(xi, 0.6, 1.5, 4, 0.5));
  }
  CHECK(eta_cutoff(1.5, 4, 1.0) == doctest::Approx(64.0));
  CHECK(eta_cutoff(1.5, 4, 0.05) == doctest::Approx(64.0 / (2 * M_PI * 0.05)));
}

TEST_CASE("riesz constant") {
  CHECK(analytic_cs(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  for (double s : {0.3, 0.5, 0.7})
    CHECK(calibrate_cs(s, 10) == doctest::Approx(analytic_cs(s)).epsilon(1e-3));
}

TEST_CASE("hat quadrature is exact for the bare weight") {
  ProductSpectrum one;
  for (double beta : {-0.5, 0.0, 1.0, -0.9}) {
    double a = 0.0, b = 3.0;
    double exact = (std::pow(b, beta + 1) - std::pow(a, beta + 1)) / (beta + 1);
    CHECK(hat_quadrature(one, 2, beta, a, b, 0.01) == doctest::Approx(exact).epsilon(1e-12));
    CHECK(hat_quadrature(one, 4, beta, 100.0, 200.0, 0.5) ==
          doctest::Approx((std::pow(200.0, beta + 1) - std::pow(100.0, beta + 1)) / (beta + 1)).epsilon(1e-12));
  }
  auto f = measure_spectrum(0.6, 1.5, 3);
  CHECK(envelope_bound(f, 2, -0.5, 500.0) >= envelope_tail(f, 2, -0.5, 500.0));
}

TEST_CASE("fourier energy matches spatial energy") {
  for (double l : {0.5, 0.6}) {
    for (int k : {4, 7}) {
      double spatial = energy(make_mu({l, 1.5, k, 1.0}), 0.5).value;
      auto f = energy_via_fourier(l, 1.5, k, 0.5);
      CHECK(f.method == EnergyMethod::fourier);
      CHECK(f.value == doctest::Approx(spatial).epsilon(1e-4));
    }
  }
  CHECK(energy_via_fourier(0.5, 1.0, 10, 0.5).value == doctest::Approx(8.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("tail gate") {
  QuadratureOptions opt;
  opt.window = 8.0;
  opt.tail_tolerance = 1e-12;
  CHECK_THROWS_AS(energy_via_fourier(0.6, 1.5, 4, 0.5, opt), CertificationError);
}

TEST_CASE("moment decomposition") {
  auto m4 = fourth_moment(0.6, 1.5, 4, 0.5);
  CHECK(m4.J1 + m4.J2 + m4.J3 == doctest::Approx(m4.total).epsilon(1e-12));
  CHECK(m4.cutoff == doctest::Approx(eta_cutoff(1.5, 4)));
  CHECK(m4.J1 > 0);
  CHECK(m4.J3 >= 0);
  auto m2 = second_moment(0.6, 1.5, 4, 0.5);
  double e = energy_via_fourier(0.6, 1.5, 4, 0.5).value;
  CHECK(2 * analytic_cs(0.5) * m2.total == doctest::Approx(e).epsilon(1e-6));
  CHECK(moment_csv_header() == "lambda,alpha,k,s,power,J1,J2,J3,total,cutoff\n");
}

TEST_CASE("growth fit recovers synthetic data") {
  std::vector<int> ks{2, 3, 4, 5, 6, 7};
  std::vector<double> totals;
  for (int k : ks) totals.push_back(3.0 * std::exp2(-0.5 * k) + 1.25);
  auto fit = fit_moment_growth(ks, totals, -0.5);
  CHECK(fit.amplitude == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.offset == doctest::Approx(1.25).epsilon(1e-10));
  CHECK(fit.rms_residual < 1e-10);
}

TEST_CASE("convolution chain") {
  double l = std::sqrt(0.55), alpha = 1.5;
  for (int k : {1, 3}) {
    auto chain = convolution_chain(l, alpha, k, 1.0 / alpha - 0.05, default_convolution_scale(alpha));
    CHECK(chain.energy > 0);
    CHECK(chain.holds);
    CHECK(chain.energy <= chain.bound);
  }
}
