#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "strongfield/states.hpp"

namespace strongfield {

enum class Gauge { kLength, kVelocity };
enum class Method { kSfaDirect, kSfaSpa, kTdse };

std::string_view to_string(Gauge gauge);
std::string_view to_string(Method method);

/// |M_p|^2 tabulated over final kinetic energies at a fixed emission angle
/// theta (measured from the polarization axis).
struct SpectrumGrid {
  std::vector<double> energies;
  double theta = 0.0;
  std::vector<double> values;
  Method method = Method::kSfaDirect;
  std::optional<Gauge> gauge;  // empty for TDSE
  StateKind state_kind = StateKind::kSEven;
  /// Energies dropped from the grid because the value could not be computed
  /// honestly (e.g. saddle coalescence).
  std::vector<double> flagged_energies;
  std::vector<std::string> warnings;

  std::size_t size() const { return energies.size(); }
  /// Throws Error(kInvalidArgument) unless energies ascend strictly and every value
  /// is finite and non-negative.
  void validate() const;
};

/// Ascending uniform grid of n points on [e_min, e_max].
std::vector<double> linear_grid(double e_min, double e_max, int n);

}  // namespace strongfield
