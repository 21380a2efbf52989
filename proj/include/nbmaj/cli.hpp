#pragma once

// Command-line front end: radii, series, integrate, compare, validate-bounds.

#include <string>
#include <vector>

#include "nbmaj/integrator.hpp"

namespace nbmaj::cli {

inline constexpr const char* kVersion = "1.0.0";
// Default output directory when --out is not given.
inline constexpr const char* kOutDirEnv = "NBMAJ_OUT_DIR";

// Runs the CLI; returns the process exit code.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

struct CompareSummary {
  std::string run;
  std::size_t body = 0;
  std::size_t steps = 0;
  double max_err = 0.0;
  double median_err = 0.0;
  double max_over_median = 0.0;
  int spikes = 0;  // steps with error above 10 x median
};

// Per-body statistics of the local position errors of a probe.
std::vector<CompareSummary> summarize(const std::string& run, const ProbeResult& probe);

}  // namespace nbmaj::cli
