#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strongfield/field.hpp"
#include "strongfield/quadrature.hpp"
#include "strongfield/spectrum.hpp"
#include "strongfield/states.hpp"
#include "strongfield/tdse.hpp"

namespace strongfield::cli {

struct TdseConfig {
  double dr = 0.1;
  double r_max = 400.0;
  int l_max = 30;
  double dt = 0.025;
  double r_c = 2.0;
  std::optional<double> z_eff;  // empty means "auto": tune to the configured I_p
  CutShape cut = CutShape::kHard;
  double mask_start = 0.9;
  std::string checkpoint;  // optional path for the final wavefunction
};

// Flat `section.key = value` text. Blank lines and `#` comments are ignored.
// Every key has a default, so an empty file is the Fig. 1 setup with an s state,
// length-gauge SFA by direct quadrature.
struct RunConfig {
  PulseParams field;
  StateKind state = StateKind::kSEven;
  double ip = 0.5;
  Method method = Method::kSfaDirect;
  Gauge gauge = Gauge::kLength;
  bool gauge_set = false;
  double e_min = 0.05;
  double e_max = 1.05;
  int n_points = 500;
  double theta = 0.0;
  QuadratureSpec quad;
  bool boundary_corrected = true;
  TdseConfig tdse;
  std::string output_csv;
  std::string output_plot;
  std::vector<std::string> warnings;

  /// Throws Error(kConfig) naming the offending key.
  void validate() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// "emin:emax" as used by --window.
std::pair<double, double> parse_window(std::string_view text);

}  // namespace strongfield::cli
