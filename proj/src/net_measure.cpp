#include "frostnet/net_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"

namespace frostnet {

double DyadicInterval::left() const { return std::ldexp(static_cast<double>(index), -level); }
double DyadicInterval::right() const { return std::ldexp(static_cast<double>(index + 1), -level); }
double DyadicInterval::length() const { return std::ldexp(1.0, -level); }

namespace {

// E as sorted disjoint half-open cell ranges [lo, hi) of the 2^{depth} grid.
class SnappedSet {
 public:
  SnappedSet(const IntervalUnion& e, int depth) : depth_(depth) {
    double n = std::ldexp(1.0, depth);
    exact_ = true;
    for (const auto& p : e.intervals()) {
      double lo = std::floor(p.left * n), hi = std::ceil(p.right * n);
      if (lo != p.left * n || hi != p.right * n) exact_ = false;
      auto a = static_cast<std::uint64_t>(lo), b = static_cast<std::uint64_t>(hi);
      if (!lo_.empty() && a <= hi_.back()) {
        hi_.back() = std::max(hi_.back(), b);
      } else {
        lo_.push_back(a);
        hi_.push_back(b);
      }
    }
  }

  bool exact() const { return exact_; }
  int depth() const { return depth_; }

  // Number of grid cells of [a, b) covered by E.
  std::uint64_t covered(std::uint64_t a, std::uint64_t b) const {
    auto first = std::upper_bound(hi_.begin(), hi_.end(), a) - hi_.begin();
    std::uint64_t c = 0;
    for (auto i = static_cast<std::size_t>(first); i < lo_.size() && lo_[i] < b; ++i)
      c += std::min(b, hi_[i]) - std::max(a, lo_[i]);
    return c;
  }

 private:
  int depth_;
  bool exact_;
  std::vector<std::uint64_t> lo_, hi_;
};

enum class Coverage { empty, full, partial };

struct TreeSolver {
  const SnappedSet& set;
  std::vector<double> weight;  // |D|^t by level
  std::vector<DyadicInterval>* cover = nullptr;
  // Optional per-level tables of M(E ∩ D) for levels <= table_depth.
  std::vector<std::vector<double>>* table = nullptr;
  int table_depth = -1;

  TreeSolver(const SnappedSet& s, double t) : set(s) {
    for (int j = 0; j <= s.depth(); ++j) weight.push_back(std::exp2(-t * j));
  }

  Coverage classify(int level, std::uint64_t index, std::uint64_t& cells) const {
    int shift = set.depth() - level;
    std::uint64_t a = index << shift, b = (index + 1) << shift;
    cells = set.covered(a, b);
    if (cells == 0) return Coverage::empty;
    if (cells == (b - a)) return Coverage::full;
    return Coverage::partial;
  }

  void fill_uniform(int level, std::uint64_t index, bool full) {
    if (!table) return;
    for (int j = level; j <= table_depth; ++j) {
      std::uint64_t span = std::uint64_t{1} << (j - level);
      for (std::uint64_t i = index * span; i < (index + 1) * span; ++i)
        (*table)[j][i] = full ? weight[j] : 0.0;
    }
  }

  double solve(int level, std::uint64_t index) {
    std::uint64_t cells;
    Coverage c = classify(level, index, cells);
    if (c == Coverage::empty) {
      if (level <= table_depth) fill_uniform(level, index, false);
      return 0.0;
    }
    if (c == Coverage::full || level == set.depth()) {
      if (level <= table_depth) fill_uniform(level, index, true);
      if (cover) cover->push_back({level, index});
      return weight[level];
    }
    std::size_t mark = cover ? cover->size() : 0;
    double split = solve(level + 1, 2 * index) + solve(level + 1, 2 * index + 1);
    double v;
    if (weight[level] <= split) {
      v = weight[level];
      if (cover) {
        cover->resize(mark);
        cover->push_back({level, index});
      }
    } else {
      v = split;
    }
    if (table && level <= table_depth) (*table)[level][index] = v;
    return v;
  }
};

void check_depth(int max_depth) {
  if (max_depth < 0 || max_depth > kMaxNetDepth)
    throw ConfigError("net measure depth must lie in [0, " + std::to_string(kMaxNetDepth) + "]");
}

}  // namespace

NetMeasureResult m_infty(const IntervalUnion& e, double t, int max_depth) {
  if (!(t > 0.0 && t <= 1.0)) throw ConfigError("net measure exponent t must lie in (0,1], got " + format_real(t));
  check_depth(max_depth);
  SnappedSet set(e, max_depth);
  TreeSolver solver(set, t);
  NetMeasureResult out;
  solver.cover = &out.optimal_cover;
  out.value = solver.solve(0, 0);
  out.exact = set.exact();
  return out;
}

FrostmanRatio frostman_ratio(const IntervalUnion& e, double t, double eps, int depth_lo, int depth_hi,
                             int max_depth) {
  if (!(t > 0.0 && t <= 1.0)) throw ConfigError("net measure exponent t must lie in (0,1], got " + format_real(t));
  if (!(eps >= 0.0)) throw ConfigError("eps must be nonnegative");
  check_depth(max_depth);
  if (depth_lo < 0 || depth_hi < depth_lo || depth_hi > max_depth || depth_hi > 30)
    throw ConfigError("invalid depth range for Frostman ratios");
  SnappedSet set(e, max_depth);
  TreeSolver solver(set, t);
  std::vector<std::vector<double>> table(depth_hi + 1);
  for (int j = 0; j <= depth_hi; ++j) table[j].assign(std::size_t{1} << j, 0.0);
  solver.table = &table;
  solver.table_depth = depth_hi;
  solver.solve(0, 0);

  FrostmanRatio out;
  out.value = std::numeric_limits<double>::infinity();
  for (int j = depth_lo; j <= depth_hi; ++j) {
    double scale = std::exp2((t + eps) * j);  // 1 / |D|^{t+eps}
    for (std::uint64_t i = 0; i < table[j].size(); ++i) {
      RatioRow row{{j, i}, table[j][i] * scale};
      if (row.ratio < out.value) {
        out.value = row.ratio;
        out.argmin = row.cube;
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

LiminfTable liminf_probe(const std::vector<ExpansionParams>& sequence, double t, double eps, int depth_lo,
                         int depth_hi, double threshold, int max_depth) {
  if (sequence.empty()) throw ConfigError("liminf probe needs a nonempty parameter sequence");
  for (std::size_t i = 1; i < sequence.size(); ++i)
    if (sequence[i].n <= sequence[i - 1].n) throw ConfigError("liminf probe needs strictly increasing n");
  LiminfTable out;
  double running = std::numeric_limits<double>::infinity();
  for (const auto& p : sequence) {
    double r = frostman_ratio(build_level_set(p), t, eps, depth_lo, depth_hi, max_depth).value;
    running = std::min(running, r);
    out.rows.push_back({p.n, r, running});
  }
  std::size_t half = out.rows.size() / 2;
  double early = std::numeric_limits<double>::infinity(), late = early;
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    double& slot = i < half ? early : late;
    slot = std::min(slot, out.rows[i].ratio);
  }
  if (half == 0) early = late;
  out.stabilized = late > 0.0 && late > threshold && late >= 0.5 * early;
  return out;
}

std::string ratio_csv(const FrostmanRatio& r) {
  std::string out = "depth,index,ratio\n";
  for (const auto& row : r.rows)
    out += csv_line({std::to_string(row.cube.level), std::to_string(row.cube.index), format_real(row.ratio)});
  return out;
}

std::string cover_json(const NetMeasureResult& r) {
  std::string out = "[";
  for (std::size_t i = 0; i < r.optimal_cover.size(); ++i) {
    if (i) out += ',';
    out += "[" + std::to_string(r.optimal_cover[i].level) + "," + std::to_string(r.optimal_cover[i].index) + "]";
  }
  return out + "]";
}

}  // namespace frostnet
