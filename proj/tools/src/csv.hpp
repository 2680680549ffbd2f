#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "strongfield/spectrum.hpp"

namespace strongfield::cli {

inline constexpr const char* kSpectrumHeader =
    "energy_au,momentum_au,theta_rad,value,method,gauge,state";

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// `# key: value` metadata lines, one column-header line, then one row per energy.
/// With `timestamp` set, a `# generated: <UTC ISO-8601>` line comes first; it is the
/// only content that varies between identical runs.
void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid, const Metadata& metadata,
                        bool timestamp = true);

struct SpectrumFile {
  SpectrumGrid grid;
  Metadata metadata;

  /// Metadata value for `key`, or empty.
  std::string get(const std::string& key) const;
};

/// Throws Error(kIo) for unreadable or malformed files.
SpectrumFile read_spectrum_csv(const std::filesystem::path& path);
SpectrumFile read_spectrum_csv(std::istream& is, const std::string& name = "<stream>");

std::string iso_timestamp();

}  // namespace strongfield::cli
