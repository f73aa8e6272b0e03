#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "frostnet/errors.hpp"
#include "frostnet/expansion_sets.hpp"

using namespace frostnet;

namespace {

// Exact arithmetic in Z[phi] with phi^2 = 1 - phi, phi = (sqrt5 - 1)/2.
struct GoldenInt {
  long long a = 0, b = 0;  // a + b phi
  bool operator<(const GoldenInt& o) const { return a != o.a ? a < o.a : b < o.b; }
};

std::map<GoldenInt, std::uint64_t> golden_oracle(int n) {
  // phi^j = p + q phi with phi^{j+1} = q + (p - q) phi.
  std::vector<GoldenInt> powers{{1, 0}};
  for (int j = 1; j <= n; ++j) powers.push_back({powers.back().b, powers.back().a - powers.back().b});
  std::map<GoldenInt, std::uint64_t> counts;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n + 1)); ++code) {
    GoldenInt v;
    for (int j = 0; j <= n; ++j)
      if (code >> j & 1) {
        v.a += powers[j].a;
        v.b += powers[j].b;
      }
    ++counts[v];
  }
  return counts;
}

}  // namespace

TEST_CASE("dyadic points at lambda 1/2") {
  auto p = enumerate_points({0.5, 2.0, 1, 1.0});
  REQUIRE(p.points.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(p.points[j].value == j * 0.25);
    CHECK(p.points[j].multiplicity == 1);
  }
  for (int n : {0, 3, 9}) {
    auto q = enumerate_points({0.5, 2.0, n, 1.0});
    REQUIRE(q.points.size() == (std::size_t{1} << (n + 1)));
    for (std::size_t j = 0; j < q.points.size(); ++j) CHECK(q.points[j].value == std::ldexp(double(j), -(n + 1)));
  }
}

TEST_CASE("level zero has two points") {
  for (double l : {0.5, 0.6, 0.77}) {
    auto p = enumerate_points({l, 1.5, 0, 1.0});
    REQUIRE(p.points.size() == 2);
    CHECK(p.points[0].value == 0.0);
    CHECK(p.points[1].value == doctest::Approx(1.0 - l).epsilon(1e-15));
  }
}

TEST_CASE("golden ratio collisions match exact arithmetic") {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  auto p = enumerate_points({phi, 2.0, 2, 1.0});
  auto it = std::find_if(p.points.begin(), p.points.end(),
                         [&](const WeightedPoint& w) { return std::fabs(w.value - (1.0 - phi)) < 1e-12; });
  REQUIRE(it != p.points.end());
  CHECK(it->multiplicity == 2);

  for (int n : {2, 6, 11}) {
    auto exact = golden_oracle(n);
    auto got = enumerate_points({phi, 2.0, n, 1.0});
    REQUIRE(got.points.size() == exact.size());
    std::vector<std::pair<double, std::uint64_t>> expected;
    for (const auto& [v, c] : exact) expected.push_back({(1.0 - phi) * (v.a + v.b * phi), c});
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(got.points[i].value == doctest::Approx(expected[i].first).epsilon(1e-12));
      CHECK(got.points[i].multiplicity == expected[i].second);
    }
  }
}

TEST_CASE("multiset invariants") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lam(0.5, 0.95);
  for (int trial = 0; trial < 20; ++trial) {
    double l = lam(rng);
    int n = static_cast<int>(rng() % 12);
    auto p = enumerate_points({l, 1.5, n, 1.0});
    CHECK(p.total_multiplicity() == (std::uint64_t{1} << (n + 1)));
    CHECK(p.points.front().value == 0.0);
    CHECK(p.points.back().value == doctest::Approx(1.0 - std::pow(l, n + 1)).epsilon(1e-13));
    for (std::size_t i = 1; i < p.points.size(); ++i) CHECK(p.points[i].value > p.points[i - 1].value);
    // F_n is contained in F_{n+1}.
    auto next = enumerate_points({l, 1.5, n + 1, 1.0});
    for (const auto& w : p.points) {
      auto at = std::lower_bound(next.points.begin(), next.points.end(), w.value - 1e-12,
                                 [](const WeightedPoint& a, double v) { return a.value < v; });
      REQUIRE(at != next.points.end());
      CHECK(std::fabs(at->value - w.value) < 1e-12);
    }
  }
}

TEST_CASE("level sets") {
  auto full = build_level_set({0.5, 1.0, 1, 1.0});
  REQUIRE(full.size() == 1);
  CHECK(full.intervals()[0].left == 0.0);
  CHECK(full.intervals()[0].right == 1.0);

  auto e = build_level_set({0.5, 2.0, 2, 1.0});
  REQUIRE(e.size() == 1);
  CHECK(e.intervals()[0].left == 0.0);
  CHECK(e.intervals()[0].right == 15.0 / 16.0);
  CHECK(union_measure(e) == 0.9375);

  auto two = build_level_set({0.6, 1.5, 0, 0.01});
  REQUIRE(two.size() == 2);
  CHECK(two.intervals()[0].left == 0.0);
  CHECK(two.intervals()[0].right == doctest::Approx(0.01));
  CHECK(two.contains(0.4));
  CHECK_FALSE(two.contains(0.2));
}

TEST_CASE("interval union algebra") {
  auto a = IntervalUnion::from_intervals({{0.0, 0.5}, {0.75, 1.0}});
  auto b = IntervalUnion::from_intervals({{0.25, 0.875}});
  auto c = intersect(a, b);
  REQUIRE(c.size() == 2);
  CHECK(c.intervals()[0].left == 0.25);
  CHECK(c.intervals()[0].right == 0.5);
  CHECK(c.intervals()[1].left == 0.75);
  CHECK(c.intervals()[1].right == 0.875);
  CHECK(union_measure(IntervalUnion{}) == 0.0);
  CHECK(union_measure(unite(a, b)) == 1.0);

  // Order independence and idempotent merging.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.1, 1.1);
  std::vector<Interval> pieces;
  for (int i = 0; i < 40; ++i) {
    double x = u(rng), y = u(rng);
    pieces.push_back({std::min(x, y), std::min(x, y) + 0.02 * u(rng)});
  }
  auto first = IntervalUnion::from_intervals(pieces);
  std::shuffle(pieces.begin(), pieces.end(), rng);
  auto second = IntervalUnion::from_intervals(pieces);
  auto again = IntervalUnion::from_intervals(first.intervals());
  REQUIRE(first.size() == second.size());
  REQUIRE(first.size() == again.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first.intervals()[i].left == second.intervals()[i].left);
    CHECK(first.intervals()[i].right == again.intervals()[i].right);
    CHECK(first.intervals()[i].left >= 0.0);
    CHECK(first.intervals()[i].right <= 1.0);
    if (i) CHECK(first.intervals()[i].left > first.intervals()[i - 1].right);
  }
}

TEST_CASE("validation and guards") {
  CHECK_THROWS_AS(enumerate_points({0.4, 1.5, 2, 1.0}), ConfigError);
  CHECK_THROWS_AS(enumerate_points({1.0, 1.5, 2, 1.0}), ConfigError);
  CHECK_THROWS_AS(enumerate_points({0.6, 0.9, 2, 1.0}), ConfigError);
  CHECK_THROWS_AS(enumerate_points({0.6, 1.5, 2, 0.0}), ConfigError);
  CHECK_THROWS_AS(enumerate_points({0.6, 1.5, kMaxEnumerationLevel + 1, 1.0}), ConfigError);
}

TEST_CASE("csv output") {
  auto e = IntervalUnion::from_intervals({{0.0, 0.5}});
  CHECK(to_csv(e) == "left,right\n0,0.5\n");
  auto p = enumerate_points({0.5, 2.0, 0, 1.0});
  CHECK(to_csv(p) == "value,multiplicity\n0,1\n0.5,1\n");
}
