#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "frostnet/expansion_sets.hpp"

namespace frostnet {

// [index 2^{-level}, (index+1) 2^{-level}]
struct DyadicInterval {
  int level = 0;
  std::uint64_t index = 0;
  double left() const;
  double right() const;
  double length() const;
  bool operator==(const DyadicInterval&) const = default;
};

struct NetMeasureResult {
  double value = 0.0;
  std::vector<DyadicInterval> optimal_cover;  // left to right
  bool exact = false;  // E already lay on the 2^{-max_depth} grid
};

inline constexpr int kDefaultNetDepth = 20;
inline constexpr int kMaxNetDepth = 40;

// Dyadic net measure of E after snapping E outward to the 2^{-max_depth}
// grid. Ties between a cube and its split go to the cube.
NetMeasureResult m_infty(const IntervalUnion& e, double t, int max_depth = kDefaultNetDepth);

struct RatioRow {
  DyadicInterval cube;
  double ratio = 0.0;  // M(E ∩ D) / |D|^{t+eps}
};

struct FrostmanRatio {
  double value = 0.0;          // minimum ratio over the depth range
  DyadicInterval argmin;
  std::vector<RatioRow> rows;  // by depth, then index
};

// Minimum over dyadic D with level in [depth_lo, depth_hi] of
// M^t(E ∩ D) / |D|^{t+eps}. One tree pass fills every level.
FrostmanRatio frostman_ratio(const IntervalUnion& e, double t, double eps, int depth_lo = 0,
                             int depth_hi = 8, int max_depth = kDefaultNetDepth);

struct LiminfRow {
  int n = 0;
  double ratio = 0.0;
  double running_min = 0.0;
};

struct LiminfTable {
  std::vector<LiminfRow> rows;
  // Minimum over the later half of the sequence is positive, above threshold,
  // and at least half the minimum over the earlier half.
  bool stabilized = false;
};

LiminfTable liminf_probe(const std::vector<ExpansionParams>& sequence, double t, double eps,
                         int depth_lo = 0, int depth_hi = 8, double threshold = 0.0,
                         int max_depth = kDefaultNetDepth);

std::string ratio_csv(const FrostmanRatio& r);            // depth,index,ratio
std::string cover_json(const NetMeasureResult& r);        // [[level,index],...]

}  // namespace frostnet
