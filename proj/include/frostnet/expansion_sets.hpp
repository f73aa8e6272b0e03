#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frostnet {

// Parameters of the level-n lambda-expansion set and its radius-c*2^{-alpha n}
// neighbourhood.
struct ExpansionParams {
  double lambda = 0.5;
  double alpha = 2.0;
  int n = 0;
  double radius_scale = 1.0;

  // Throws ConfigError unless 1/2 <= lambda < 1, alpha >= 1, c > 0, n >= 0.
  void validate() const;
  double radius() const;  // c * 2^{-alpha n}
};

struct Interval {
  double left = 0.0;
  double right = 0.0;
  double length() const { return right - left; }
};

// Sorted, pairwise disjoint closed subintervals of [0,1] with positive length.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  // Clips to [0,1], drops empty pieces, sorts and merges overlapping or
  // touching intervals.
  static IntervalUnion from_intervals(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }
  std::size_t size() const { return pieces_.size(); }
  double measure() const;
  bool contains(double x) const;

 private:
  std::vector<Interval> pieces_;
};

double union_measure(const IntervalUnion& e);
IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b);

struct WeightedPoint {
  double value = 0.0;
  std::uint64_t multiplicity = 1;
};

struct PointMultiset {
  std::vector<WeightedPoint> points;  // strictly increasing values
  std::uint64_t total_multiplicity() const;
};

inline constexpr double kDefaultSnapTolerance = 0x1p-40;
inline constexpr int kMaxEnumerationLevel = 24;

// All sums scale * sum_{j<=n} a_j ratio^j over a in {0,1}^{n+1}. Values closer
// than snap_tol to the smallest member of their cluster are merged and their
// multiplicities added. Throws ConfigError for n > kMaxEnumerationLevel.
PointMultiset enumerate_digit_sums(double scale, double ratio, int n,
                                   double snap_tol = kDefaultSnapTolerance);

// F_{lambda,n}: the sums (1-lambda) * sum_{j<=n} a_j lambda^j.
PointMultiset enumerate_points(const ExpansionParams& params,
                               double snap_tol = kDefaultSnapTolerance);

// Union of balls B(y, c 2^{-alpha n}) for y in F_{lambda,n}, clipped to [0,1].
IntervalUnion ball_union(const PointMultiset& centers, double radius);
IntervalUnion build_level_set(const ExpansionParams& params);

std::string to_csv(const IntervalUnion& e);   // left,right
std::string to_csv(const PointMultiset& p);   // value,multiplicity

}  // namespace frostnet
