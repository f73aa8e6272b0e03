#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "frostnet/expansion_sets.hpp"
#include "frostnet/measures.hpp"

namespace frostnet::oracle {

inline constexpr int kCoverDepth = 5;

// Costs of every dyadic cover of the cube (level, index) down to kCoverDepth,
// where cells marks the grid cells of E. Cubes meeting E in a null set are
// never needed and are left out.
inline std::vector<double> all_cover_costs(const std::vector<bool>& cells, double t, int level, int index) {
  int span = 1 << (kCoverDepth - level);
  bool meets = false;
  for (int i = index * span; i < (index + 1) * span; ++i) meets = meets || cells[i];
  if (!meets) return {0.0};
  std::vector<double> out{std::exp2(-t * level)};
  if (level == kCoverDepth) return out;
  auto left = all_cover_costs(cells, t, level + 1, 2 * index);
  auto right = all_cover_costs(cells, t, level + 1, 2 * index + 1);
  for (double a : left)
    for (double b : right) out.push_back(a + b);
  return out;
}

inline double min_cover_cost(const std::vector<bool>& cells, double t) {
  auto costs = all_cover_costs(cells, t, 0, 0);
  return *std::min_element(costs.begin(), costs.end());
}

inline IntervalUnion from_cells(const std::vector<bool>& cells) {
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i]) pieces.push_back({std::ldexp(double(i), -kCoverDepth), std::ldexp(double(i + 1), -kCoverDepth)});
  return IntervalUnion::from_intervals(pieces);
}

inline std::vector<bool> random_cells(std::mt19937_64& rng) {
  std::vector<bool> cells(1 << kCoverDepth, false);
  int runs = 1 + static_cast<int>(rng() % 5);
  for (int r = 0; r < runs; ++r) {
    int a = static_cast<int>(rng() % 32), len = 1 + static_cast<int>(rng() % 8);
    for (int i = a; i < std::min(32, a + len); ++i) cells[i] = true;
  }
  return cells;
}

// Positive step density with a fraction of empty cells.
inline GridDensity random_step(std::mt19937_64& rng, std::size_t m, double zero_fraction) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(m);
  for (auto& x : v) x = u(rng) < zero_fraction ? 0.0 : std::exp(3.0 * (u(rng) - 0.5));
  return GridDensity(v);
}

inline Interval random_subinterval(std::mt19937_64& rng, const Interval& i) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double a = i.left + u(rng) * i.length(), b = i.left + u(rng) * i.length();
  if (a > b) std::swap(a, b);
  if (b - a < 1e-9) b = std::min(i.right, a + 1e-6);
  return {a, b};
}

// Mixture of uniform bumps of random widths around random atoms, total mass 1.
inline std::vector<Bump> random_atom_measure(std::mt19937_64& rng, int atoms) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Bump> out;
  double total = 0.0;
  for (int i = 0; i < atoms; ++i) {
    double c = u(rng), w = std::exp(std::log(1e-5) * u(rng)) * 0.05, m = 0.1 + u(rng);
    out.push_back({c - w, c + w, m});
    total += m;
  }
  for (auto& b : out) b.mass /= total;
  return out;
}

}  // namespace frostnet::oracle
