#include "frostnet/expansion_sets.hpp"

#include <algorithm>
#include <cmath>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"

namespace frostnet {

void ExpansionParams::validate() const {
  if (!(lambda >= 0.5 && lambda < 1.0))
    throw ConfigError("lambda must lie in [1/2, 1), got " + format_real(lambda));
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be at least 1, got " + format_real(alpha));
  if (!(radius_scale > 0.0) || !std::isfinite(radius_scale))
    throw ConfigError("radius scale must be positive, got " + format_real(radius_scale));
  if (n < 0) throw ConfigError("level n must be nonnegative");
}

double ExpansionParams::radius() const { return radius_scale * std::exp2(-alpha * n); }

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> pieces) {
  IntervalUnion out;
  for (auto& p : pieces) {
    p.left = std::max(p.left, 0.0);
    p.right = std::min(p.right, 1.0);
  }
  std::erase_if(pieces, [](const Interval& p) { return !(p.left < p.right); });
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return a.left < b.left; });
  for (const auto& p : pieces) {
    if (!out.pieces_.empty() && p.left <= out.pieces_.back().right)
      out.pieces_.back().right = std::max(out.pieces_.back().right, p.right);
    else
      out.pieces_.push_back(p);
  }
  return out;
}

double IntervalUnion::measure() const {
  double m = 0.0;
  for (const auto& p : pieces_) m += p.length();
  return m;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Interval& p) { return v < p.left; });
  if (it == pieces_.begin()) return false;
  --it;
  return x <= it->right;
}

double union_measure(const IntervalUnion& e) { return e.measure(); }

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    double lo = std::max(x[i].left, y[j].left);
    double hi = std::min(x[i].right, y[j].right);
    if (lo < hi) out.push_back({lo, hi});
    if (x[i].right < y[j].right)
      ++i;
    else
      ++j;
  }
  return IntervalUnion::from_intervals(std::move(out));
}

IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalUnion::from_intervals(std::move(all));
}

std::uint64_t PointMultiset::total_multiplicity() const {
  std::uint64_t t = 0;
  for (const auto& p : points) t += p.multiplicity;
  return t;
}

namespace {

void snap_in_place(std::vector<WeightedPoint>& v, double tol) {
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    WeightedPoint cluster = v[i];
    std::size_t j = i + 1;
    while (j < v.size() && v[j].value - cluster.value <= tol) {
      cluster.multiplicity += v[j].multiplicity;
      ++j;
    }
    v[out++] = cluster;
    i = j;
  }
  v.resize(out);
}

}  // namespace

PointMultiset enumerate_digit_sums(double scale, double ratio, int n, double snap_tol) {
  if (n < 0) throw ConfigError("level n must be nonnegative");
  if (n > kMaxEnumerationLevel)
    throw ConfigError("point enumeration refused for n > " + std::to_string(kMaxEnumerationLevel) +
                      " (memory guard); use the Fourier path for large levels");
  std::vector<WeightedPoint> cur{{0.0, 1}};
  std::vector<WeightedPoint> shifted, merged;
  double w = scale;
  for (int j = 0; j <= n; ++j) {
    shifted = cur;
    for (auto& p : shifted) p.value += w;
    merged.resize(cur.size() + shifted.size());
    std::merge(cur.begin(), cur.end(), shifted.begin(), shifted.end(), merged.begin(),
               [](const WeightedPoint& a, const WeightedPoint& b) { return a.value < b.value; });
    snap_in_place(merged, snap_tol);
    cur.swap(merged);
    w *= ratio;
  }
  return PointMultiset{std::move(cur)};
}

PointMultiset enumerate_points(const ExpansionParams& params, double snap_tol) {
  params.validate();
  return enumerate_digit_sums(1.0 - params.lambda, params.lambda, params.n, snap_tol);
}

IntervalUnion ball_union(const PointMultiset& centers, double radius) {
  std::vector<Interval> pieces;
  pieces.reserve(centers.points.size());
  for (const auto& p : centers.points) pieces.push_back({p.value - radius, p.value + radius});
  return IntervalUnion::from_intervals(std::move(pieces));
}

IntervalUnion build_level_set(const ExpansionParams& params) {
  return ball_union(enumerate_points(params), params.radius());
}

std::string to_csv(const IntervalUnion& e) {
  std::string out = "left,right\n";
  for (const auto& p : e.intervals()) out += csv_line({format_real(p.left), format_real(p.right)});
  return out;
}

std::string to_csv(const PointMultiset& p) {
  std::string out = "value,multiplicity\n";
  for (const auto& q : p.points)
    out += csv_line({format_real(q.value), std::to_string(q.multiplicity)});
  return out;
}

}  // namespace frostnet
