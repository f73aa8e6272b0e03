// Command-line front end for the frostnet library.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "frostnet/csv_io.hpp"
#include "frostnet/errors.hpp"
#include "frostnet/expansion_sets.hpp"
#include "frostnet/fourier_side.hpp"
#include "frostnet/frostman_transform.hpp"
#include "frostnet/measures.hpp"
#include "frostnet/net_measure.hpp"
#include "frostnet/parallel.hpp"
#include "frostnet/riesz_energy.hpp"
#include "frostnet/sweep_driver.hpp"

namespace fs = std::filesystem;
using namespace frostnet;

namespace {

struct Globals {
  std::string config;
  std::string out;
  unsigned threads = 0;
  std::uint64_t seed = 1;
  bool seed_set = false;
};

// Writes to <out>/<name> when --out is given, stdout otherwise.
void emit(const Globals& g, const std::string& name, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  fs::create_directories(g.out);
  write_text_file((fs::path(g.out) / name).string(), text);
}

void emit_binary(const Globals& g, const std::string& name, const std::vector<unsigned char>& bytes) {
  if (g.out.empty()) throw ConfigError("binary output needs --out");
  fs::create_directories(g.out);
  write_binary_file((fs::path(g.out) / name).string(), bytes);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// "a:b,c:d" -> interval union
IntervalUnion parse_union(const std::string& text) {
  std::vector<Interval> pieces;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("intervals must look like a:b,c:d");
    try {
      pieces.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ConfigError("cannot parse interval '" + item + "'");
    }
  }
  return IntervalUnion::from_intervals(std::move(pieces));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frostman-type criterion toolkit for lambda-expansion limsup sets"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "JSON config file (sweep)");
  app.add_option("--out", g.out, "output directory (default: stdout)");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--seed", g.seed, "sampler seed")->each([&](const std::string&) { g.seed_set = true; });

  ExpansionParams p;
  double s = 0.5, t = 0.5, eps = 0.05;
  int depth_lo = 0, depth_hi = 8, max_depth = kDefaultNetDepth;
  std::size_t m = std::size_t{1} << 16;

  auto* points = app.add_subcommand("points", "enumerate F_{lambda,n}");
  points->add_option("--lambda", p.lambda)->required();
  points->add_option("--n", p.n)->required();

  auto* level = app.add_subcommand("level-set", "interval union E_{lambda,n}(alpha)");
  level->add_option("--lambda", p.lambda)->required();
  level->add_option("--alpha", p.alpha)->required();
  level->add_option("--n", p.n)->required();
  level->add_option("--c", p.radius_scale, "radius scale");

  std::string method = "pairwise";
  auto* en = app.add_subcommand("energy", "Riesz s-energy of mu_{alpha,lambda,k,c}");
  en->add_option("--lambda", p.lambda)->required();
  en->add_option("--alpha", p.alpha)->required();
  en->add_option("--k", p.n)->required();
  en->add_option("--s", s)->required();
  en->add_option("--c", p.radius_scale);
  en->add_option("--method", method, "pairwise | grid | fourier")->check(CLI::IsMember({"pairwise", "grid", "fourier"}));
  en->add_option("--grid-m", m, "grid resolution for --method grid");

  std::string intervals;
  auto* net = app.add_subcommand("net-measure", "dyadic net measure and Frostman ratios");
  net->add_option("--lambda", p.lambda);
  net->add_option("--alpha", p.alpha);
  net->add_option("--n", p.n);
  net->add_option("--c", p.radius_scale);
  net->add_option("--intervals", intervals, "explicit set a:b,c:d instead of E_{lambda,n}(alpha)");
  net->add_option("--t", t)->required();
  net->add_option("--eps", eps);
  net->add_option("--depth-lo", depth_lo);
  net->add_option("--depth-hi", depth_hi);
  net->add_option("--max-depth", max_depth);

  double il = 0.0, ir = 1.0, l2_eps = 0.1;
  std::size_t samples = 1000;
  int depth = 40;
  auto* fr = app.add_subcommand("frostman", "reweighted measure bounds for the iterated density");
  fr->add_option("--lambda", p.lambda)->required();
  fr->add_option("--t", t)->required();
  fr->add_option("--eps", eps);
  fr->add_option("--interval-left", il);
  fr->add_option("--interval-right", ir);
  fr->add_option("--samples", samples);
  fr->add_option("--l2-eps", l2_eps);
  fr->add_option("--grid-m", m);
  fr->add_option("--depth", depth, "functional-equation iterations");

  std::string format = "csv";
  auto* dens = app.add_subcommand("density", "iterate the functional equation from the uniform density");
  dens->add_option("--lambda", p.lambda)->required();
  dens->add_option("--depth", depth);
  dens->add_option("--grid-m", m);
  dens->add_option("--format", format, "csv | binary")->check(CLI::IsMember({"csv", "binary"}));

  std::string power = "fourth";
  QuadratureOptions q;
  auto* fou = app.add_subcommand("fourier", "Fourier moments and energy");
  fou->add_option("--lambda", p.lambda)->required();
  fou->add_option("--alpha", p.alpha)->required();
  fou->add_option("--k", p.n)->required();
  fou->add_option("--s", s)->required();
  fou->add_option("--c", p.radius_scale);
  fou->add_option("--power", power, "second | fourth")->check(CLI::IsMember({"second", "fourth"}));
  fou->add_option("--window", q.window, "integration window (0 = default)");
  fou->add_option("--node-budget", q.node_budget);
  fou->add_option("--tail-tolerance", q.tail_tolerance);

  bool plots = false;
  auto* sw = app.add_subcommand("sweep", "parameter sweep from --config");
  sw->add_flag("--plots", plots, "also write plot series");

  double conv_c = 0.0;
  auto* conv = app.add_subcommand("convolve2", "convolution-squared measure mu^(2) on a grid");
  conv->add_option("--lambda", p.lambda)->required();
  conv->add_option("--alpha", p.alpha)->required();
  conv->add_option("--k", p.n)->required();
  conv->add_option("--c", conv_c, "factor radius scale (0 = 2^{-(alpha+1)})");
  conv->add_option("--grid-m", m);
  conv->add_option("--format", format, "csv | binary")->check(CLI::IsMember({"csv", "binary"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    set_thread_count(g.threads);
    if (*points) {
      emit(g, "points.csv", to_csv(enumerate_points(p)));
    } else if (*level) {
      emit(g, "level_set.csv", to_csv(build_level_set(p)));
    } else if (*en) {
      p.validate();
      EnergyReport r;
      if (method == "pairwise") {
        r = energy(make_mu(p), s);
      } else if (method == "grid") {
        r.method = EnergyMethod::grid_quadrature;
        r.s = s;
        r.value = grid_energy(to_grid(make_mu(p), m).density, s);
        r.truncation = static_cast<double>(m);
      } else {
        r = energy_via_fourier(p.lambda, p.alpha, p.n, s, {}, p.radius_scale);
      }
      r.lambda = p.lambda;
      r.alpha = p.alpha;
      r.k = p.n;
      emit(g, "energy.csv", energy_csv_header() + to_csv_row(r));
    } else if (*net) {
      IntervalUnion e = intervals.empty() ? build_level_set(p) : parse_union(intervals);
      NetMeasureResult r = m_infty(e, t, max_depth);
      FrostmanRatio fr_r = frostman_ratio(e, t, eps, depth_lo, depth_hi, max_depth);
      nlohmann::json j;
      j["value"] = r.value;
      j["exact"] = r.exact;
      j["cover"] = nlohmann::json::parse(cover_json(r));
      j["frostman_ratio"] = fr_r.value;
      j["argmin"] = {fr_r.argmin.level, fr_r.argmin.index};
      if (g.out.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        emit(g, "net_measure.json", j.dump(2) + "\n");
        emit(g, "ratios.csv", ratio_csv(fr_r));
      }
    } else if (*fr) {
      GridDensity h = iterate_functional_equation(p.lambda, depth, m);
      Interval i{il, ir};
      NuMeasure nu = build_nu(h, i, t);
      Witness w = nu_interval_bound(nu, eps, sample_subintervals(i, samples, g.seed));
      Witness l2 = l2_condition(h, l2_eps, sample_intervals(samples, g.seed));
      nlohmann::json j = nlohmann::json::parse(witness_summary_json(w));
      j["l2_condition"] = nlohmann::json::parse(witness_summary_json(l2));
      j["composite_bound"] = 2.0 * l2_ratio(h, i, eps) / (1.0 - t);
      if (g.out.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        emit(g, "frostman.csv", witness_csv(w));
        emit(g, "frostman_summary.json", j.dump(2) + "\n");
      }
    } else if (*dens) {
      GridDensity h = iterate_functional_equation(p.lambda, depth, m);
      if (format == "binary")
        emit_binary(g, "density.grd", to_binary(h));
      else
        emit(g, "density.csv", to_csv(h));
    } else if (*fou) {
      p.validate();
      FourierMomentReport r = power == "fourth" ? fourth_moment(p.lambda, p.alpha, p.n, s, q, p.radius_scale)
                                                : second_moment(p.lambda, p.alpha, p.n, s, q, p.radius_scale);
      emit(g, "fourier.csv", moment_csv_header() + to_csv_row(r));
    } else if (*sw) {
      if (g.config.empty()) throw ConfigError("sweep needs --config");
      SweepConfig cfg = sweep_config_from_json(read_file(g.config));
      if (g.seed_set) cfg.seed = g.seed;
      auto rows = run_sweep(cfg);
      if (g.out.empty())
        std::cout << sweep_csv(rows);
      else
        for (const auto& path : emit_report(rows, g.out, plots)) std::cerr << "wrote " << path << "\n";
    } else if (*conv) {
      double c = conv_c > 0.0 ? conv_c : default_convolution_scale(p.alpha);
      SquaredConvolution r = convolve_squared(p.lambda, p.alpha, p.n, c, m);
      std::cerr << "support check passed: half width " << format_real(r.support_half_width)
                << " <= radius " << format_real(r.neighbourhood_radius) << "; exterior mass "
                << format_real(r.exterior_mass) << "\n";
      if (format == "binary")
        emit_binary(g, "convolution.grd", to_binary(r.density));
      else
        emit(g, "convolution.csv", to_csv(r.density));
    }
  } catch (const CertificationError& e) {
    std::cerr << "certification failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
