#pragma once

#include <functional>
#include <iosfwd>
#include <string>

#include "config.hpp"
#include "csv.hpp"
#include "strongfield/peaks.hpp"

namespace strongfield::cli {

struct RunResult {
  SpectrumGrid spectrum;
  Metadata metadata;
};

using Logger = std::function<void(const std::string&)>;

/// Runs the configured method over the configured energy grid. Deterministic for a
/// fixed config; solver failures propagate as Error.
RunResult run(const RunConfig& config, const Logger& log = {});

/// Metadata lines describing the config (field, state, method, grid, tdse block).
Metadata describe(const RunConfig& config);

/// Saddle-point table for each energy of the grid, as CSV.
void write_saddle_table(std::ostream& os, const RunConfig& config);

/// Effective-charge tuning for the 1s (l = 0) and 2p (l = 1) states at the
/// configured r_c and I_p, plus the uncut hydrogen-like limits, as CSV.
void write_eigen_table(std::ostream& os, const RunConfig& config);

void write_comparison(std::ostream& os, const ComparisonReport& report, const std::string& name_a,
                      const std::string& name_b);

}  // namespace strongfield::cli
