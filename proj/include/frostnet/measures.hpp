#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "frostnet/expansion_sets.hpp"

namespace frostnet {

// Uniform mass on [left, right].
struct Bump {
  double left = 0.0;
  double right = 0.0;
  double mass = 0.0;
  double center() const { return 0.5 * (left + right); }
  double half_width() const { return 0.5 * (right - left); }
  double density() const { return mass / (right - left); }
};

// Equal-weight mixture of uniform measures on B(y, r) over the points y of a
// multiset, scaled to total_mass. Balls are not clipped to [0,1].
class AtomSmoothedMeasure {
 public:
  AtomSmoothedMeasure(PointMultiset centers, double radius, double total_mass = 1.0);

  const PointMultiset& centers() const { return centers_; }
  double radius() const { return radius_; }
  double total_mass() const { return total_mass_; }

  // One bump per distinct center, mass proportional to multiplicity.
  std::vector<Bump> bumps() const;
  double mass_in(double a, double b) const;

 private:
  PointMultiset centers_;
  double radius_;
  double total_mass_;
};

// mu_{alpha,lambda,n,c}: the probability measure on B(y, c 2^{-alpha n}),
// y in F_{lambda,n}, each digit code weighted 2^{-(n+1)}.
AtomSmoothedMeasure make_mu(const ExpansionParams& params);

double total_mass(const std::vector<Bump>& bumps);
double mass_in(const std::vector<Bump>& bumps, double a, double b);
// Restriction to [0,1]: every bump is cut and keeps the mass of its remaining part.
std::vector<Bump> clip_to_unit(const std::vector<Bump>& bumps);
// Image under x -> scale*x + shift (scale > 0).
std::vector<Bump> push_forward(const std::vector<Bump>& bumps, double scale, double shift);

// Piecewise-constant density on m equal cells of [0,1]; m is a power of two.
class GridDensity {
 public:
  GridDensity() = default;
  explicit GridDensity(std::vector<double> values);
  static GridDensity uniform(std::size_t m);

  std::size_t resolution() const { return values_.size(); }
  double cell_width() const { return 1.0 / static_cast<double>(values_.size()); }
  const std::vector<double>& values() const { return values_; }
  double value(std::size_t i) const { return values_[i]; }
  // Density at x (right-continuous; x = 1 maps to the last cell).
  double at(double x) const;

  double mass() const;
  // Integrals of h and h^2 over [a,b] ∩ [0,1], exact for the step function.
  double mass_in(double a, double b) const;
  double square_integral_in(double a, double b) const;
  double l2_norm_squared() const;

 private:
  double partial_integral(const std::vector<double>& f, const std::vector<double>& prefix,
                          double a, double b) const;
  std::vector<double> values_;
  std::vector<double> squares_;
  std::vector<double> prefix_;
  std::vector<double> prefix_sq_;
};

struct GridProjection {
  GridDensity density;
  double exterior_mass = 0.0;   // mass falling outside [0,1]
  bool under_resolved = false;  // some bump narrower than one cell
};

// Exact cell averages: each bump adds its overlap with each cell.
GridProjection to_grid(const std::vector<Bump>& bumps, std::size_t m);
GridProjection to_grid(const AtomSmoothedMeasure& mu, std::size_t m);

// Density zeroed outside [a,b]; boundary cells keep their overlap fraction.
GridDensity restrict(const GridDensity& g, double a, double b);
inline GridDensity restrict(const GridDensity& g, const Interval& i) {
  return restrict(g, i.left, i.right);
}

// One application of h -> (1/(2 lambda)) (h∘S1^{-1} + h∘S2^{-1}) with
// S1 x = lambda x and S2 x = lambda x + 1 - lambda. Each source cell is mapped
// exactly and redistributed by overlap, so mass is conserved.
GridDensity apply_functional_operator(const GridDensity& h, double lambda);

// depth applications of the operator starting from the uniform density.
GridDensity iterate_functional_equation(double lambda, int depth = 40,
                                        std::size_t m = std::size_t{1} << 16);

struct SquaredConvolution {
  GridDensity density;
  double exterior_mass = 0.0;
  double radius_scale = 0.0;        // c of the factor measures
  double factor_radius = 0.0;       // c 2^{-2 alpha k}
  double support_half_width = 0.0;  // (1 + lambda) * factor_radius
  double neighbourhood_radius = 0.0;  // 2^{-alpha(2k+1)}
  std::size_t pair_count = 0;
};

inline double default_convolution_scale(double alpha) { return std::exp2(-(alpha + 1.0)); }

// mu^{(2)} = mu_A * (mu_A ∘ S1^{-1}) where mu_A has centers
// (1 - lambda) sum_{j<=k} a_j lambda^{2j} and radius c 2^{-2 alpha k}, so the
// product centers are exactly F_{lambda,2k+1}. Each pair contributes a
// trapezoid whose cell averages are computed exactly. Throws
// CertificationError if any trapezoid leaves the radius-2^{-alpha(2k+1)}
// neighbourhood of F_{lambda,2k+1}, and ConfigError for k > 10.
SquaredConvolution convolve_squared(double lambda, double alpha, int k, double c,
                                    std::size_t m = std::size_t{1} << 16);

std::string to_csv(const GridDensity& g);  // cell_index,density
std::vector<unsigned char> to_binary(const GridDensity& g);
GridDensity grid_from_binary(const std::vector<unsigned char>& bytes);

}  // namespace frostnet
