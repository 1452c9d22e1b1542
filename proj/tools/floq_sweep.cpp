// Command-line sweep driver.
//
// Exit codes: 0 success, 1 at least one unconverged branch (outputs are still
// written), 2 configuration error, 3 output I/O error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "floq/sweep.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  floq::SweepConfig config;
  try {
    config = floq::parse_config(args);
  } catch (const floq::HelpRequested& help) {
    std::fputs(help.text.c_str(), stdout);
    return 0;
  } catch (const floq::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  }

  floq::SweepOutcome outcome;
  try {
    outcome = floq::run_sweep(config);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sweep failed: %s\n", e.what());
    return 2;
  }

  try {
    floq::emit_csv(outcome.records, config.out_path);
    if (!config.svg_path.empty()) {
      floq::emit_svg(outcome.records, config.svg_path);
    }
  } catch (const floq::IoError& e) {
    std::fprintf(stderr, "output error: %s\n", e.what());
    return 3;
  }

  if (!outcome.all_converged) {
    std::fprintf(stderr, "warning: at least one branch did not converge\n");
    return 1;
  }
  return 0;
}
