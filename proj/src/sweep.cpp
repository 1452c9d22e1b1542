#include "floq/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "floq/fourier.hpp"
#include "floq/fz1.hpp"
#include "floq/fz2.hpp"
#include "floq/oracle.hpp"

namespace floq {

void SweepConfig::validate() const {
  if (algorithm != "fz1" && algorithm != "fz2" && algorithm != "both") {
    throw ConfigError("algorithm must be one of fz1, fz2, both (got '" + algorithm + "')");
  }
  if (!(omega > 0.0)) throw ConfigError("omega must be positive");
  if (!(a_min <= a_max)) throw ConfigError("a-min must not exceed a-max");
  if (a_steps < 1) throw ConfigError("a-steps must be at least 1");
  if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
  if (trotter_steps < 1) throw ConfigError("trotter-steps must be at least 1");
  if (shots < 0) throw ConfigError("shots must be non-negative (0 selects exact mode)");
  if (iqpe_bits < 1) throw ConfigError("iqpe-bits must be at least 1");
  if (iqpe_shots < 1) throw ConfigError("iqpe-shots must be at least 1");
  if (iqpe_repeats < 1) throw ConfigError("iqpe-repeats must be at least 1");
  if (j_max < 0) throw ConfigError("jmax must be non-negative");
  if (restarts < 1) throw ConfigError("restarts must be at least 1");
  if (out_path.empty()) throw ConfigError("out must not be empty");
}

std::vector<double> linspace_inclusive(double a_min, double a_max, int a_steps) {
  if (a_steps < 1) throw ConfigError("a-steps must be at least 1");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(a_steps));
  if (a_steps == 1) {
    grid.push_back(a_min);
    return grid;
  }
  const double step = (a_max - a_min) / static_cast<double>(a_steps - 1);
  for (int i = 0; i < a_steps; ++i) {
    grid.push_back(i == a_steps - 1 ? a_max : a_min + step * static_cast<double>(i));
  }
  return grid;
}

SweepConfig parse_config(const std::vector<std::string>& args) {
  SweepConfig cfg;
  CLI::App app{"floq-sweep: variational Floquet band solvers over a drive-amplitude grid"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "flat key = value file; flags take precedence");

  app.add_option("--algorithm", cfg.algorithm, "fz1 | fz2 | both")->capture_default_str();
  app.add_option("--delta", cfg.delta, "static splitting")->capture_default_str();
  app.add_option("--omega", cfg.omega, "drive angular frequency")->capture_default_str();
  app.add_option("--a-min", cfg.a_min, "smallest drive amplitude")->capture_default_str();
  app.add_option("--a-max", cfg.a_max, "largest drive amplitude")->capture_default_str();
  app.add_option("--a-steps", cfg.a_steps, "number of inclusive grid points")->capture_default_str();
  app.add_option("--lambda", cfg.lambda, "deflation penalty weight")->capture_default_str();
  app.add_option("--trotter-steps", cfg.trotter_steps, "one-period product-formula slices")->capture_default_str();
  app.add_option("--shots", cfg.shots, "shots per estimator, 0 = exact expectations")->capture_default_str();
  app.add_option("--iqpe-bits", cfg.iqpe_bits, "phase bits")->capture_default_str();
  app.add_option("--iqpe-shots", cfg.iqpe_shots, "shots per phase bit")->capture_default_str();
  app.add_option("--iqpe-repeats", cfg.iqpe_repeats, "independent phase readouts")->capture_default_str();
  app.add_option("--jmax", cfg.j_max, "harmonic cutoff of the extended space")->capture_default_str();
  app.add_option("--restarts", cfg.restarts, "optimizer restarts per branch")->capture_default_str();
  app.add_option("--seed", cfg.seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", cfg.out_path, "CSV output path")->capture_default_str();
  app.add_option("--svg", cfg.svg_path, "optional SVG output path");

  // CLI11 wants argv-style ordering; it parses right-to-left.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }
  cfg.validate();
  return cfg;
}

namespace {

SolverConfig to_solver_config(const SweepConfig& sweep, std::uint64_t point_seed) {
  SolverConfig sc;
  sc.lambda = sweep.lambda;
  sc.trotter_steps = sweep.trotter_steps;
  sc.shots = sweep.shots;
  sc.iqpe_bits = sweep.iqpe_bits;
  sc.iqpe_shots = sweep.iqpe_shots;
  sc.iqpe_repeats = sweep.iqpe_repeats;
  sc.restarts = sweep.restarts;
  sc.seed = point_seed;
  sc.optimizer.restarts = sweep.restarts;
  sc.optimizer.seed = point_seed;
  return sc;
}

double nearest_value(const std::vector<double>& candidates, double target) {
  double best = kNaN;
  double best_dist = std::numeric_limits<double>::infinity();
  for (double c : candidates) {
    const double d = std::abs(c - target);
    if (d < best_dist) {
      best_dist = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

SweepOutcome run_sweep(const SweepConfig& config) {
  config.validate();
  const bool want_fz1 = config.algorithm == "fz1" || config.algorithm == "both";
  const bool want_fz2 = config.algorithm == "fz2" || config.algorithm == "both";
  const std::vector<double> grid =
      linspace_inclusive(config.a_min, config.a_max, config.a_steps);

  SweepOutcome outcome;
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const double amplitude = grid[idx];
    const std::uint64_t point_seed = config.seed ^ static_cast<std::uint64_t>(idx);
    const FourierHamiltonian h = driven_spin_half(config.delta, amplitude, config.omega);
    const SolverConfig solver_cfg = to_solver_config(config, point_seed);
    const QuasiEnergySpectrum oracle = exact_quasienergies(h);

    if (want_fz1) {
      const std::vector<FloquetSolution> sols = solve_band_fz1(h, solver_cfg);
      for (std::size_t b = 0; b < sols.size(); ++b) {
        SweepRecord rec;
        rec.algorithm = "fz1";
        rec.amplitude = amplitude;
        rec.branch = static_cast<int>(b);
        rec.epsilon = sols[b].epsilon;
        rec.epsilon_sigma = sols[b].epsilon_sigma;
        rec.epsilon_exact = nearest_value(oracle.energies, sols[b].epsilon);
        rec.fidelity = sols[b].fidelity_vs_oracle;
        rec.loss_star = sols[b].loss_star;
        rec.seed = point_seed;
        rec.converged = sols[b].converged;
        outcome.all_converged = outcome.all_converged && sols[b].converged;
        outcome.records.push_back(std::move(rec));
      }
    }
    if (want_fz2) {
      const auto truncated = truncated_exact_spectrum(h, config.j_max);
      std::vector<double> truncated_values;
      truncated_values.reserve(truncated.size());
      for (const auto& [value, mode] : truncated) truncated_values.push_back(value);

      const std::vector<FloquetSolution> sols = solve_band_fz2(h, config.j_max, solver_cfg);
      for (std::size_t b = 0; b < sols.size(); ++b) {
        SweepRecord rec;
        rec.algorithm = "fz2";
        rec.amplitude = amplitude;
        rec.branch = static_cast<int>(b);
        rec.epsilon = sols[b].epsilon;
        rec.epsilon_sigma = sols[b].epsilon_sigma;
        rec.epsilon_raw = sols[b].epsilon_raw;
        rec.epsilon_exact = nearest_value(oracle.energies, sols[b].epsilon);
        rec.epsilon_truncated = nearest_value(truncated_values, sols[b].epsilon_raw);
        rec.fidelity = sols[b].fidelity_vs_oracle;
        rec.loss_star = sols[b].loss_star;
        rec.seed = point_seed;
        rec.converged = sols[b].converged;
        outcome.all_converged = outcome.all_converged && sols[b].converged;
        outcome.records.push_back(std::move(rec));
      }
    }
  }

  std::stable_sort(outcome.records.begin(), outcome.records.end(),
                   [](const SweepRecord& a, const SweepRecord& b) {
                     if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                     if (a.amplitude != b.amplitude) return a.amplitude < b.amplitude;
                     return a.branch < b.branch;
                   });
  return outcome;
}

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string csv_string(const std::vector<SweepRecord>& records) {
  std::string out =
      "algorithm,amplitude,branch,epsilon,epsilon_sigma,epsilon_raw,"
      "epsilon_exact,epsilon_truncated,fidelity,loss_star,seed\n";
  for (const SweepRecord& r : records) {
    out += r.algorithm;
    out += ',';
    out += format_double(r.amplitude);
    out += ',';
    out += std::to_string(r.branch);
    out += ',';
    out += format_double(r.epsilon);
    out += ',';
    out += format_double(r.epsilon_sigma);
    out += ',';
    out += format_double(r.epsilon_raw);
    out += ',';
    out += format_double(r.epsilon_exact);
    out += ',';
    out += format_double(r.epsilon_truncated);
    out += ',';
    out += format_double(r.fidelity);
    out += ',';
    out += format_double(r.loss_star);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  const std::string body = csv_string(records);
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  file.flush();
  if (!file) throw IoError("failed while writing '" + path + "'");
}

namespace {

struct PlotBox {
  double x0, y0, width, height;  // pixel rectangle
  double a_lo, a_hi, e_lo, e_hi; // data rectangle
  double px(double a) const {
    const double span = (a_hi > a_lo) ? (a_hi - a_lo) : 1.0;
    return x0 + (a - a_lo) / span * width;
  }
  double py(double e) const {
    const double span = (e_hi > e_lo) ? (e_hi - e_lo) : 1.0;
    return y0 + height - (e - e_lo) / span * height;
  }
};

void append_axes(std::string& svg, const PlotBox& box, const std::string& title) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "<rect x='%.1f' y='%.1f' width='%.1f' height='%.1f' fill='none' "
                "stroke='#444' stroke-width='1'/>\n",
                box.x0, box.y0, box.width, box.height);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x='%.1f' y='%.1f' font-size='14' text-anchor='middle' "
                "fill='#222'>%s</text>\n",
                box.x0 + box.width / 2, box.y0 - 8, title.c_str());
  svg += buf;
  for (int i = 0; i <= 4; ++i) {
    const double a = box.a_lo + (box.a_hi - box.a_lo) * i / 4.0;
    const double e = box.e_lo + (box.e_hi - box.e_lo) * i / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-size='10' text-anchor='middle' "
                  "fill='#555'>%.2f</text>\n",
                  box.px(a), box.y0 + box.height + 14, a);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x='%.1f' y='%.1f' font-size='10' text-anchor='end' "
                  "fill='#555'>%.2f</text>\n",
                  box.x0 - 4, box.py(e) + 3, e);
    svg += buf;
  }
}

// One polyline per sorted-rank oracle value at each amplitude.
void append_oracle_curves(std::string& svg, const PlotBox& box,
                          const std::vector<SweepRecord>& records,
                          bool use_truncated) {
  std::vector<double> amplitudes;
  for (const SweepRecord& r : records) {
    if (amplitudes.empty() || amplitudes.back() != r.amplitude) amplitudes.push_back(r.amplitude);
  }
  std::sort(amplitudes.begin(), amplitudes.end());
  amplitudes.erase(std::unique(amplitudes.begin(), amplitudes.end()), amplitudes.end());

  std::size_t ranks = 0;
  std::vector<std::vector<double>> per_amplitude;
  for (double a : amplitudes) {
    std::vector<double> vals;
    for (const SweepRecord& r : records) {
      if (r.amplitude != a) continue;
      const double v = use_truncated ? r.epsilon_truncated : r.epsilon_exact;
      if (!std::isnan(v)) vals.push_back(v);
    }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    ranks = std::max(ranks, vals.size());
    per_amplitude.push_back(std::move(vals));
  }
  for (std::size_t rank = 0; rank < ranks; ++rank) {
    std::string points;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
      if (rank >= per_amplitude[i].size()) continue;
      char pt[64];
      std::snprintf(pt, sizeof(pt), "%.2f,%.2f ", box.px(amplitudes[i]),
                    box.py(per_amplitude[i][rank]));
      points += pt;
    }
    if (points.empty()) continue;
    svg += "<polyline fill='none' stroke='#999' stroke-width='1' "
           "stroke-dasharray='4,3' points='" + points + "'/>\n";
  }
}

void append_points(std::string& svg, const PlotBox& box,
                   const std::vector<SweepRecord>& records, bool raw,
                   const std::string& color) {
  char buf[512];
  for (const SweepRecord& r : records) {
    const double value = raw ? r.epsilon_raw : r.epsilon;
    if (std::isnan(value)) continue;
    const double x = box.px(r.amplitude);
    const double y = box.py(value);
    if (!raw && r.epsilon_sigma > 0.0) {
      const double y1 = box.py(value - r.epsilon_sigma);
      const double y2 = box.py(value + r.epsilon_sigma);
      std::snprintf(buf, sizeof(buf),
                    "<line x1='%.2f' y1='%.2f' x2='%.2f' y2='%.2f' stroke='%s' "
                    "stroke-width='1'/>\n",
                    x, y1, x, y2, color.c_str());
      svg += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "<circle cx='%.2f' cy='%.2f' r='3' fill='%s' fill-opacity='0.85'/>\n",
                  x, y, color.c_str());
    svg += buf;
  }
}

}  // namespace

std::string svg_string(const std::vector<SweepRecord>& records) {
  std::vector<SweepRecord> fz1_records, fz2_records;
  double a_lo = 0.0, a_hi = 1.0;
  bool have_a = false;
  for (const SweepRecord& r : records) {
    if (!have_a) {
      a_lo = a_hi = r.amplitude;
      have_a = true;
    } else {
      a_lo = std::min(a_lo, r.amplitude);
      a_hi = std::max(a_hi, r.amplitude);
    }
    if (r.algorithm == "fz1") fz1_records.push_back(r);
    else if (r.algorithm == "fz2") fz2_records.push_back(r);
  }
  if (a_hi <= a_lo) a_hi = a_lo + 1.0;
  const double pad_a = 0.05 * (a_hi - a_lo);
  a_lo -= pad_a;
  a_hi += pad_a;

  auto data_range = [](const std::vector<SweepRecord>& recs, bool raw) {
    double lo = -1.0, hi = 1.0;
    bool have = false;
    for (const SweepRecord& r : recs) {
      for (double v : {raw ? r.epsilon_raw : r.epsilon,
                       raw ? r.epsilon_truncated : r.epsilon_exact}) {
        if (std::isnan(v)) continue;
        if (!have) {
          lo = hi = v;
          have = true;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
    }
    if (hi <= lo) hi = lo + 1.0;
    const double pad = 0.08 * (hi - lo);
    return std::pair<double, double>{lo - pad, hi + pad};
  };

  std::string svg =
      "<svg xmlns='http://www.w3.org/2000/svg' width='880' height='420' "
      "viewBox='0 0 880 420'>\n<rect width='880' height='420' fill='white'/>\n";

  const auto [f1_lo, f1_hi] = data_range(fz1_records, false);
  PlotBox left{60, 40, 340, 330, a_lo, a_hi, f1_lo, f1_hi};
  append_axes(svg, left, "folded quasi-energies (overlap + phase readout)");
  append_oracle_curves(svg, left, fz1_records, false);
  append_points(svg, left, fz1_records, false, "#1f77b4");

  const auto [f2_lo, f2_hi] = data_range(fz2_records, true);
  PlotBox right{500, 40, 340, 330, a_lo, a_hi, f2_lo, f2_hi};
  append_axes(svg, right, "extended-space band ladder (variational)");
  append_oracle_curves(svg, right, fz2_records, true);
  append_points(svg, right, fz2_records, true, "#d62728");

  svg += "</svg>\n";
  return svg;
}

void emit_svg(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  const std::string body = svg_string(records);
  file.write(body.data(), static_cast<std::streamsize>(body.size()));
  file.flush();
  if (!file) throw IoError("failed while writing '" + path + "'");
}

}  // namespace floq
