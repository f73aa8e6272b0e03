#include "frostnet/sweep_driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <json.hpp>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"
#include "frostnet/expansion_sets.hpp"
#include "frostnet/fourier_side.hpp"
#include "frostnet/frostman_transform.hpp"
#include "frostnet/measures.hpp"
#include "frostnet/net_measure.hpp"
#include "frostnet/parallel.hpp"
#include "frostnet/riesz_energy.hpp"

namespace frostnet {

std::string to_string(SweepMode m) { return m == SweepMode::direct ? "direct" : "convolution2"; }

void SweepConfig::validate() const {
  if (lambda_grid.empty()) throw ConfigError("lambda_grid must be nonempty");
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be at least 1");
  if (!(s_margin > 0.0)) throw ConfigError("s_margin must be positive");
  if (!(s() > 0.0 && s() < 1.0)) throw ConfigError("s = 1/alpha - s_margin must lie in (0,1)");
  if (k_max < 1) throw ConfigError("k_max must be at least 1");
  for (double l : lambda_grid) {
    if (mode == SweepMode::direct && !(l >= 0.5 && l < 0.64))
      throw ConfigError("direct mode needs lambda in [1/2, 0.64), got " + format_real(l));
    if (mode == SweepMode::convolution2 && !(l * l > 0.5 && l * l < 0.64))
      throw ConfigError("convolution2 mode needs lambda^2 in (1/2, 0.64), got lambda " + format_real(l));
  }
  if (mode == SweepMode::convolution2 && k_max > 10)
    throw ConfigError("convolution2 mode supports k_max <= 10");
  if (mode == SweepMode::direct && k_max > kMaxEnumerationLevel)
    throw ConfigError("k_max exceeds the enumeration limit");
  if (spatial_k_max < 0 || spatial_k_max > kMaxPairwiseLevel)
    throw ConfigError("spatial_k_max must lie in [0, " + std::to_string(kMaxPairwiseLevel) + "]");
  if (!(bounded_factor > 0.0) || bounded_window < 1) throw ConfigError("invalid boundedness proxy settings");
  if (!(frostman_eps >= 0.0)) throw ConfigError("frostman_eps must be nonnegative");
  if (frostman_depth_lo < 0 || frostman_depth_hi < frostman_depth_lo || frostman_depth_hi > net_max_depth ||
      net_max_depth > kMaxNetDepth)
    throw ConfigError("invalid Frostman depth range");
  if (!(l2_eps >= 0.0) || l2_samples == 0) throw ConfigError("invalid L2 sampling settings");
  if (grid_resolution < 2 || (grid_resolution & (grid_resolution - 1)) != 0)
    throw ConfigError("grid_resolution must be a power of two >= 2");
  if (functional_depth < 0) throw ConfigError("functional_depth must be nonnegative");
  if (convolution_c < 0.0) throw ConfigError("convolution_c must be nonnegative");
  if (node_budget < 1024) throw ConfigError("node_budget must be at least 1024");
  if (!(tail_tolerance > 0.0)) throw ConfigError("tail_tolerance must be positive");
}

SweepConfig sweep_config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  SweepConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const auto& v = it.value();
      if (key == "lambda_grid") c.lambda_grid = v.get<std::vector<double>>();
      else if (key == "alpha") c.alpha = v.get<double>();
      else if (key == "s_margin") c.s_margin = v.get<double>();
      else if (key == "k_max") c.k_max = v.get<int>();
      else if (key == "mode") {
        auto m = v.get<std::string>();
        if (m == "direct") c.mode = SweepMode::direct;
        else if (m == "convolution2") c.mode = SweepMode::convolution2;
        else throw ConfigError("mode must be direct or convolution2");
      }
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "spatial_k_max") c.spatial_k_max = v.get<int>();
      else if (key == "fourier") c.fourier = v.get<bool>();
      else if (key == "node_budget") c.node_budget = v.get<std::size_t>();
      else if (key == "tail_tolerance") c.tail_tolerance = v.get<double>();
      else if (key == "bounded_factor") c.bounded_factor = v.get<double>();
      else if (key == "bounded_window") c.bounded_window = v.get<int>();
      else if (key == "frostman_eps") c.frostman_eps = v.get<double>();
      else if (key == "frostman_depth_lo") c.frostman_depth_lo = v.get<int>();
      else if (key == "frostman_depth_hi") c.frostman_depth_hi = v.get<int>();
      else if (key == "net_max_depth") c.net_max_depth = v.get<int>();
      else if (key == "l2_eps") c.l2_eps = v.get<double>();
      else if (key == "l2_samples") c.l2_samples = v.get<std::size_t>();
      else if (key == "grid_resolution") c.grid_resolution = v.get<std::size_t>();
      else if (key == "functional_depth") c.functional_depth = v.get<int>();
      else if (key == "convolution_c") c.convolution_c = v.get<double>();
      else throw ConfigError("unknown config key: " + key);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

namespace {

template <class F>
std::optional<double> certified(F&& f) {
  try {
    return f();
  } catch (const CertificationError&) {
    return std::nullopt;
  }
}

// All rows for one lambda, ordered by k.
std::vector<SweepRow> lambda_rows(const SweepConfig& cfg, double lambda) {
  double s = cfg.s();
  QuadratureOptions q;
  q.node_budget = cfg.node_budget;
  q.tail_tolerance = cfg.tail_tolerance;
  double conv_c = cfg.convolution_c > 0.0 ? cfg.convolution_c : default_convolution_scale(cfg.alpha);

  GridDensity h = iterate_functional_equation(lambda, cfg.functional_depth, cfg.grid_resolution);
  double c_eps = l2_condition(h, cfg.l2_eps, sample_intervals(cfg.l2_samples, cfg.seed)).value;

  std::vector<SweepRow> rows;
  for (int k = 1; k <= cfg.k_max; ++k) {
    SweepRow row;
    row.lambda = lambda;
    row.k = k;
    row.witnessed_C_eps = c_eps;
    int level = k;
    if (cfg.mode == SweepMode::direct) {
      if (cfg.fourier)
        row.fourier_energy = certified([&] { return energy_via_fourier(lambda, cfg.alpha, k, s, q).value; });
      if (k <= cfg.spatial_k_max)
        row.energy = energy(make_mu({lambda, cfg.alpha, k, 1.0}), s).value;
      else
        row.energy = row.fourier_energy;
      if (cfg.fourier)
        row.fourth_moment_total = certified([&] { return fourth_moment(lambda, cfg.alpha, k, s, q).total; });
    } else {
      level = 2 * k + 1;
      try {
        ConvolutionChain chain = convolution_chain(lambda, cfg.alpha, k, s, conv_c, q);
        row.energy = chain.energy;
        row.fourier_energy = chain.energy;
        row.fourth_moment_total = chain.fourth_moment;
        row.chain_bound = chain.bound;
      } catch (const CertificationError&) {
      }
    }
    if (level <= kMaxEnumerationLevel) {
      IntervalUnion e = build_level_set({lambda, cfg.alpha, level, 1.0});
      row.frostman_ratio =
          frostman_ratio(e, s, cfg.frostman_eps, cfg.frostman_depth_lo, cfg.frostman_depth_hi, cfg.net_max_depth)
              .value;
    }
    rows.push_back(row);
  }

  // Boundedness proxy: reference is the median of the first energies; row k is
  // flagged when the minimum over the last window energies up to k stays
  // within bounded_factor of it.
  std::vector<double> seen;
  std::optional<double> reference;
  std::size_t ref_count = static_cast<std::size_t>(cfg.bounded_window);
  for (auto& row : rows) {
    if (row.energy) seen.push_back(*row.energy);
    if (seen.empty()) continue;
    std::vector<double> head(seen.begin(), seen.begin() + std::min(seen.size(), ref_count));
    std::sort(head.begin(), head.end());
    reference = head.size() % 2 ? head[head.size() / 2]
                                : 0.5 * (head[head.size() / 2 - 1] + head[head.size() / 2]);
    std::size_t from = seen.size() > ref_count ? seen.size() - ref_count : 0;
    double window_min = *std::min_element(seen.begin() + static_cast<std::ptrdiff_t>(from), seen.end());
    row.bounded_flag = window_min <= cfg.bounded_factor * *reference;
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  cfg.validate();
  std::size_t n = cfg.lambda_grid.size();
  std::vector<std::vector<SweepRow>> per_lambda(n);
  parallel_for(n, [&](std::size_t i) { per_lambda[i] = lambda_rows(cfg, cfg.lambda_grid[i]); });
  std::vector<SweepRow> rows;
  for (int k = 1; k <= cfg.k_max; ++k)
    for (std::size_t i = 0; i < n; ++i) rows.push_back(per_lambda[i][static_cast<std::size_t>(k - 1)]);
  return rows;
}

std::string sweep_csv_header() {
  return "lambda,k,energy,fourier_energy,fourth_moment_total,bounded_flag,frostman_ratio,witnessed_C_eps,chain_bound\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = sweep_csv_header();
  for (const auto& r : rows)
    out += csv_line({format_real(r.lambda), std::to_string(r.k), format_real(r.energy), format_real(r.fourier_energy),
                     format_real(r.fourth_moment_total), r.bounded_flag ? "true" : "false",
                     format_real(r.frostman_ratio), format_real(r.witnessed_C_eps), format_real(r.chain_bound)});
  return out;
}

std::vector<std::string> emit_report(const std::vector<SweepRow>& rows, const std::string& dir, bool plots) {
  if (rows.empty()) throw ConfigError("no rows to report");
  std::filesystem::path base(dir);
  std::error_code ec;
  std::filesystem::create_directories(base, ec);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    std::string path = (base / name).string();
    write_text_file(path, text);
    written.push_back(path);
  };
  put("sweep.csv", sweep_csv(rows));
  if (plots) {
    std::string by_lambda = "series,x,y\n", by_k = "series,x,y\n";
    for (const auto& r : rows) {
      if (!r.energy) continue;
      by_lambda += csv_line({std::to_string(r.k), format_real(r.lambda), format_real(*r.energy)});
    }
    std::vector<SweepRow> sorted = rows;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.lambda < b.lambda; });
    for (const auto& r : sorted) {
      if (!r.energy) continue;
      by_k += csv_line({format_real(r.lambda), std::to_string(r.k), format_real(*r.energy)});
    }
    put("plot_lambda_energy.csv", by_lambda);
    put("plot_k_energy.csv", by_k);
  }
  return written;
}

}  // namespace frostnet
