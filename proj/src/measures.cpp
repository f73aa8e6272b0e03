#include "frostnet/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"
#include "frostnet/parallel.hpp"

namespace frostnet {

AtomSmoothedMeasure::AtomSmoothedMeasure(PointMultiset centers, double radius, double total_mass)
    : centers_(std::move(centers)), radius_(radius), total_mass_(total_mass) {
  if (!(radius > 0.0)) throw ConfigError("bump radius must be positive");
  if (centers_.points.empty()) throw ConfigError("measure needs at least one center");
}

std::vector<Bump> AtomSmoothedMeasure::bumps() const {
  double unit = total_mass_ / static_cast<double>(centers_.total_multiplicity());
  std::vector<Bump> out;
  out.reserve(centers_.points.size());
  for (const auto& p : centers_.points)
    out.push_back({p.value - radius_, p.value + radius_, unit * static_cast<double>(p.multiplicity)});
  return out;
}

double AtomSmoothedMeasure::mass_in(double a, double b) const { return frostnet::mass_in(bumps(), a, b); }

AtomSmoothedMeasure make_mu(const ExpansionParams& params) {
  return AtomSmoothedMeasure(enumerate_points(params), params.radius(), 1.0);
}

double total_mass(const std::vector<Bump>& bumps) {
  std::vector<double> m(bumps.size());
  for (std::size_t i = 0; i < bumps.size(); ++i) m[i] = bumps[i].mass;
  return pairwise_sum(m);
}

double mass_in(const std::vector<Bump>& bumps, double a, double b) {
  double s = 0.0;
  for (const auto& q : bumps) {
    double lo = std::max(a, q.left), hi = std::min(b, q.right);
    if (lo < hi) s += q.density() * (hi - lo);
  }
  return s;
}

std::vector<Bump> clip_to_unit(const std::vector<Bump>& bumps) {
  std::vector<Bump> out;
  for (const auto& q : bumps) {
    double lo = std::max(q.left, 0.0), hi = std::min(q.right, 1.0);
    if (lo < hi) out.push_back({lo, hi, q.density() * (hi - lo)});
  }
  return out;
}

std::vector<Bump> push_forward(const std::vector<Bump>& bumps, double scale, double shift) {
  std::vector<Bump> out = bumps;
  for (auto& q : out) {
    q.left = scale * q.left + shift;
    q.right = scale * q.right + shift;
  }
  return out;
}

GridDensity::GridDensity(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2 || !std::has_single_bit(values_.size()))
    throw ConfigError("grid resolution must be a power of two >= 2");
  std::size_t m = values_.size();
  squares_.resize(m);
  prefix_.assign(m + 1, 0.0);
  prefix_sq_.assign(m + 1, 0.0);
  double w = cell_width();
  for (std::size_t i = 0; i < m; ++i) {
    if (!(values_[i] >= 0.0) || !std::isfinite(values_[i]))
      throw ConfigError("grid density values must be finite and nonnegative");
    squares_[i] = values_[i] * values_[i];
    prefix_[i + 1] = prefix_[i] + values_[i] * w;
    prefix_sq_[i + 1] = prefix_sq_[i] + squares_[i] * w;
  }
}

GridDensity GridDensity::uniform(std::size_t m) { return GridDensity(std::vector<double>(m, 1.0)); }

double GridDensity::at(double x) const {
  std::size_t m = values_.size();
  if (x < 0.0 || x > 1.0) return 0.0;
  auto i = static_cast<std::size_t>(x * static_cast<double>(m));
  return values_[std::min(i, m - 1)];
}

double GridDensity::mass() const { return pairwise_sum(values_) * cell_width(); }

double GridDensity::l2_norm_squared() const { return pairwise_sum(squares_) * cell_width(); }

double GridDensity::partial_integral(const std::vector<double>& f, const std::vector<double>& prefix,
                                     double a, double b) const {
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  if (!(a < b)) return 0.0;
  std::size_t m = f.size();
  double md = static_cast<double>(m);
  double w = cell_width();
  auto ia = std::min(static_cast<std::size_t>(a * md), m - 1);
  auto ib = std::min(static_cast<std::size_t>(b * md), m - 1);
  if (ia == ib) return f[ia] * (b - a);
  double head = f[ia] * (static_cast<double>(ia + 1) * w - a);
  double tail = f[ib] * (b - static_cast<double>(ib) * w);
  double middle;
  // Short spans are summed directly to avoid cancellation in prefix differences.
  if (ib - ia <= 64) {
    middle = 0.0;
    for (std::size_t i = ia + 1; i < ib; ++i) middle += f[i];
    middle *= w;
  } else {
    middle = prefix[ib] - prefix[ia + 1];
  }
  return head + middle + tail;
}

double GridDensity::mass_in(double a, double b) const { return partial_integral(values_, prefix_, a, b); }

double GridDensity::square_integral_in(double a, double b) const {
  return partial_integral(squares_, prefix_sq_, a, b);
}

GridProjection to_grid(const std::vector<Bump>& bumps, std::size_t m) {
  if (m < 2 || !std::has_single_bit(m)) throw ConfigError("grid resolution must be a power of two >= 2");
  std::vector<double> cell_mass(m, 0.0);
  double md = static_cast<double>(m);
  double w = 1.0 / md;
  GridProjection out;
  std::vector<double> outside;
  for (const auto& q : bumps) {
    if (q.right - q.left < w) out.under_resolved = true;
    double d = q.density();
    double lo = std::max(q.left, 0.0), hi = std::min(q.right, 1.0);
    outside.push_back(q.mass - (lo < hi ? d * (hi - lo) : 0.0));
    if (!(lo < hi)) continue;
    auto ia = std::min(static_cast<std::size_t>(lo * md), m - 1);
    auto ib = std::min(static_cast<std::size_t>(hi * md), m - 1);
    for (std::size_t i = ia; i <= ib; ++i) {
      double cl = std::max(lo, static_cast<double>(i) * w);
      double cr = std::min(hi, static_cast<double>(i + 1) * w);
      if (cl < cr) cell_mass[i] += d * (cr - cl);
    }
  }
  for (auto& v : cell_mass) v *= md;
  out.density = GridDensity(std::move(cell_mass));
  out.exterior_mass = pairwise_sum(outside);
  return out;
}

GridProjection to_grid(const AtomSmoothedMeasure& mu, std::size_t m) { return to_grid(mu.bumps(), m); }

GridDensity restrict(const GridDensity& g, double a, double b) {
  std::size_t m = g.resolution();
  double w = g.cell_width();
  std::vector<double> v(m, 0.0);
  a = std::max(a, 0.0);
  b = std::min(b, 1.0);
  for (std::size_t i = 0; a < b && i < m; ++i) {
    double cl = std::max(a, static_cast<double>(i) * w);
    double cr = std::min(b, static_cast<double>(i + 1) * w);
    if (cl < cr) v[i] = g.value(i) * ((cr - cl) / w);
  }
  return GridDensity(std::move(v));
}

namespace {

// Adds the uniform mass on [lo, hi] to the cell masses by overlap.
inline void deposit(std::vector<double>& cell_mass, double md, double lo, double hi, double mass) {
  std::size_t m = cell_mass.size();
  auto ia = std::min(static_cast<std::size_t>(lo * md), m - 1);
  auto ib = std::min(static_cast<std::size_t>(hi * md), m - 1);
  if (ia == ib) {
    cell_mass[ia] += mass;
    return;
  }
  double d = mass / (hi - lo);
  for (std::size_t i = ia; i <= ib; ++i) {
    double cl = std::max(lo, static_cast<double>(i) / md);
    double cr = std::min(hi, static_cast<double>(i + 1) / md);
    if (cl < cr) cell_mass[i] += d * (cr - cl);
  }
}

}  // namespace

GridDensity apply_functional_operator(const GridDensity& h, double lambda) {
  if (!(lambda >= 0.5 && lambda < 1.0)) throw ConfigError("lambda must lie in [1/2, 1)");
  std::size_t m = h.resolution();
  double md = static_cast<double>(m);
  std::vector<double> cell_mass(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    double mass = 0.5 * h.value(i) / md;
    if (mass == 0.0) continue;
    double lo = lambda * static_cast<double>(i) / md;
    double hi = lambda * static_cast<double>(i + 1) / md;
    deposit(cell_mass, md, lo, hi, mass);
    deposit(cell_mass, md, lo + (1.0 - lambda), hi + (1.0 - lambda), mass);
  }
  for (auto& v : cell_mass) v *= md;
  return GridDensity(std::move(cell_mass));
}

GridDensity iterate_functional_equation(double lambda, int depth, std::size_t m) {
  if (depth < 0) throw ConfigError("iteration depth must be nonnegative");
  GridDensity h = GridDensity::uniform(m);
  for (int d = 0; d < depth; ++d) h = apply_functional_operator(h, lambda);
  return h;
}

namespace {

// Integral of the unit-mass trapezoid U[-a,a] * U[-b,b] over (-inf, u].
inline double trapezoid_cdf(double u, double a, double b) {
  auto q = [](double v) { return v > 0.0 ? 0.5 * v * v : 0.0; };
  if (u <= -(a + b)) return 0.0;
  if (u >= a + b) return 1.0;
  return (q(u + a + b) - q(u + a - b) - q(u - a + b) + q(u - a - b)) / (4.0 * a * b);
}

}  // namespace

SquaredConvolution convolve_squared(double lambda, double alpha, int k, double c, std::size_t m) {
  ExpansionParams check{lambda, alpha, k, c};
  check.validate();
  if (!(lambda * lambda >= 0.5)) throw ConfigError("convolution square needs lambda^2 >= 1/2");
  if (k > 10) throw ConfigError("convolution square is limited to k <= 10");
  if (m < 2 || !std::has_single_bit(m)) throw ConfigError("grid resolution must be a power of two >= 2");

  SquaredConvolution out;
  out.radius_scale = c;
  out.factor_radius = c * std::exp2(-2.0 * alpha * k);
  out.support_half_width = (1.0 + lambda) * out.factor_radius;
  out.neighbourhood_radius = std::exp2(-alpha * (2 * k + 1));

  PointMultiset base = enumerate_digit_sums(1.0 - lambda, lambda * lambda, k);
  ExpansionParams fine{lambda, alpha, 2 * k + 1, 1.0};
  PointMultiset target = enumerate_points(fine);
  std::vector<double> target_values(target.points.size());
  for (std::size_t i = 0; i < target_values.size(); ++i) target_values[i] = target.points[i].value;

  double total = static_cast<double>(base.total_multiplicity());
  total *= total;
  double a = out.factor_radius, b = lambda * out.factor_radius;
  double half = out.support_half_width;
  double md = static_cast<double>(m);
  double slack = 1e-12 * out.neighbourhood_radius;

  std::size_t n_base = base.points.size();
  // Fixed partition of the outer centers; each block accumulates into a
  // private grid and blocks are added in order.
  std::size_t n_blocks = std::min<std::size_t>(16, n_base);
  std::vector<std::vector<double>> block_mass(n_blocks);
  std::vector<double> outside(n_blocks, 0.0);
  parallel_for(n_blocks, [&](std::size_t blk) {
    std::vector<double> acc(m, 0.0);
    double lost = 0.0;
    std::size_t begin = blk * n_base / n_blocks, end = (blk + 1) * n_base / n_blocks;
    for (std::size_t ia = begin; ia < end; ++ia) {
      const auto& pa = base.points[ia];
      for (const auto& pb : base.points) {
        double x = pa.value + lambda * pb.value;
        double mass = static_cast<double>(pa.multiplicity * pb.multiplicity) / total;
        auto it = std::lower_bound(target_values.begin(), target_values.end(), x);
        double gap = 1.0;
        if (it != target_values.end()) gap = std::min(gap, *it - x);
        if (it != target_values.begin()) gap = std::min(gap, x - *(it - 1));
        if (gap + half > out.neighbourhood_radius + slack)
          throw CertificationError(
              "convolution support leaves the neighbourhood of F_{lambda,2k+1}: gap " + format_real(gap) +
              " + half width " + format_real(half) + " > radius " + format_real(out.neighbourhood_radius) +
              "; reduce the radius scale c");
        double lo = x - half, hi = x + half;
        double clo = std::max(lo, 0.0), chi = std::min(hi, 1.0);
        double inside = 0.0;
        if (clo < chi) {
          auto i0 = std::min(static_cast<std::size_t>(clo * md), m - 1);
          auto i1 = std::min(static_cast<std::size_t>(chi * md), m - 1);
          double prev = trapezoid_cdf(std::max(static_cast<double>(i0) / md, lo) - x, a, b);
          double first = prev;
          for (std::size_t i = i0; i <= i1; ++i) {
            double edge = std::min(static_cast<double>(i + 1) / md, 1.0);
            double cur = trapezoid_cdf(edge - x, a, b);
            acc[i] += mass * (cur - prev);
            prev = cur;
          }
          inside = mass * (prev - first);
        }
        lost += mass - inside;
      }
    }
    block_mass[blk] = std::move(acc);
    outside[blk] = lost;
  });
  std::vector<double> cell_mass(m, 0.0);
  for (const auto& acc : block_mass)
    for (std::size_t i = 0; i < m; ++i) cell_mass[i] += acc[i];
  for (auto& v : cell_mass) v *= md;
  out.pair_count = n_base * n_base;
  out.density = GridDensity(std::move(cell_mass));
  out.exterior_mass = pairwise_sum(outside);
  return out;
}

std::string to_csv(const GridDensity& g) {
  std::string out = "cell_index,density\n";
  for (std::size_t i = 0; i < g.resolution(); ++i)
    out += csv_line({std::to_string(i), format_real(g.value(i))});
  return out;
}

std::vector<unsigned char> to_binary(const GridDensity& g) {
  static_assert(std::endian::native == std::endian::little, "binary grid format assumes little-endian host");
  std::vector<unsigned char> out(8 + 8 * g.resolution());
  std::memcpy(out.data(), "GRD1", 4);
  auto m = static_cast<std::uint32_t>(g.resolution());
  std::memcpy(out.data() + 4, &m, 4);
  std::memcpy(out.data() + 8, g.values().data(), 8 * g.resolution());
  return out;
}

GridDensity grid_from_binary(const std::vector<unsigned char>& bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), "GRD1", 4) != 0)
    throw ConfigError("not a GRD1 grid file");
  std::uint32_t m;
  std::memcpy(&m, bytes.data() + 4, 4);
  if (bytes.size() != 8 + 8 * static_cast<std::size_t>(m)) throw ConfigError("GRD1 file has wrong length");
  std::vector<double> v(m);
  std::memcpy(v.data(), bytes.data() + 8, 8 * static_cast<std::size_t>(m));
  return GridDensity(std::move(v));
}

}  // namespace frostnet
