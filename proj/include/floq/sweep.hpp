#pragma once

// Batch driver: parse a sweep configuration from CLI flags and an optional
// key=value file, run either or both band solvers across an amplitude grid
// against the exact oracles, and serialize CSV (canonical) and SVG
// (convenience) outputs.
//
// Reproducibility contract: identical configuration (including seed) yields
// byte-identical CSV. Each amplitude point derives its own seed as
// seed XOR point-index so points are independent and order-insensitive.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "floq/solution.hpp"

namespace floq {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by parse_config when --help is requested; carries the help text.
struct HelpRequested {
  std::string text;
};

struct SweepConfig {
  std::string algorithm = "both";  // fz1 | fz2 | both
  double delta = 1.0;
  double omega = 2.5;
  double a_min = 0.0;
  double a_max = 2.0;
  int a_steps = 9;
  double lambda = 5.0;
  int trotter_steps = 100;
  int shots = 10000;  // 0 = exact-expectation mode
  int iqpe_bits = 5;
  int iqpe_shots = 100;
  int iqpe_repeats = 20;
  int j_max = 1;
  int restarts = 8;
  std::uint64_t seed = 1;
  std::string out_path = "sweep.csv";
  std::string svg_path;  // empty: skip the SVG

  void validate() const;
};

struct SweepRecord {
  std::string algorithm;  // "fz1" or "fz2"
  double amplitude = 0.0;
  int branch = 0;
  double epsilon = 0.0;
  double epsilon_sigma = 0.0;
  double epsilon_raw = kNaN;        // second solver only
  double epsilon_exact = kNaN;      // folded oracle quasi-energy
  double epsilon_truncated = kNaN;  // second solver only
  double fidelity = kNaN;
  double loss_star = 0.0;
  std::uint64_t seed = 0;
  bool converged = true;  // not serialized; drives the exit code
};

// Inclusive linear grid: a_steps points from a_min to a_max.
std::vector<double> linspace_inclusive(double a_min, double a_max, int a_steps);

// Flags override file values override defaults. The file (via --config) is
// flat `key = value` with `#` comments; unknown keys are errors.
SweepConfig parse_config(const std::vector<std::string>& args);

struct SweepOutcome {
  std::vector<SweepRecord> records;  // sorted by (algorithm, amplitude, branch)
  bool all_converged = true;
};

SweepOutcome run_sweep(const SweepConfig& config);

// Header: algorithm,amplitude,branch,epsilon,epsilon_sigma,epsilon_raw,
// epsilon_exact,epsilon_truncated,fidelity,loss_star,seed
// Floats as shortest round-trip decimals, NaN as empty field, LF endings.
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);
std::string csv_string(const std::vector<SweepRecord>& records);

void emit_svg(const std::vector<SweepRecord>& records, const std::string& path);
std::string svg_string(const std::vector<SweepRecord>& records);

}  // namespace floq
