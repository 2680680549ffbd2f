#include "csv.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "strongfield/error.hpp"

namespace strongfield::cli {

std::string iso_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void write_spectrum_csv(std::ostream& os, const SpectrumGrid& grid, const Metadata& metadata,
                        bool timestamp) {
  if (timestamp) os << "# generated: " << iso_timestamp() << '\n';
  for (const auto& [key, value] : metadata) os << "# " << key << ": " << value << '\n';
  if (!grid.flagged_energies.empty()) {
    os << "# flagged_energies:";
    char buf[32];
    for (double e : grid.flagged_energies) {
      std::snprintf(buf, sizeof buf, " %.10g", e);
      os << buf;
    }
    os << '\n';
  }
  for (const auto& w : grid.warnings) os << "# warning: " << w << '\n';
  os << kSpectrumHeader << '\n';

  const std::string method(to_string(grid.method));
  const std::string gauge = grid.gauge ? std::string(to_string(*grid.gauge)) : "n/a";
  const std::string state(to_string(grid.state_kind));
  char row[160];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double e = grid.energies[i];
    std::snprintf(row, sizeof row, "%.10g,%.12g,%.10g,%.12e,", e, std::sqrt(2.0 * e), grid.theta,
                  grid.values[i]);
    os << row << method << ',' << gauge << ',' << state << '\n';
  }
}

std::string SpectrumFile::get(const std::string& key) const {
  for (const auto& [k, v] : metadata) {
    if (k == key) return v;
  }
  return {};
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

SpectrumFile read_spectrum_csv(std::istream& is, const std::string& name) {
  SpectrumFile out;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kIo, name + ":" + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        const auto key_begin = line.find_first_not_of("# ");
        std::string key = line.substr(key_begin, colon - key_begin);
        std::string value = line.substr(std::min(line.size(), colon + 2));
        if (key == "flagged_energies") {
          std::istringstream vals(value);
          double e;
          while (vals >> e) out.grid.flagged_energies.push_back(e);
        } else if (key == "warning") {
          out.grid.warnings.push_back(value);
        }
        out.metadata.emplace_back(std::move(key), std::move(value));
      }
      continue;
    }
    if (!header_seen) {
      if (line != kSpectrumHeader) fail("unexpected column header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != 7) fail("expected 7 columns");
    try {
      out.grid.energies.push_back(std::stod(cells[0]));
      out.grid.theta = std::stod(cells[2]);
      out.grid.values.push_back(std::stod(cells[3]));
    } catch (const std::exception&) {
      fail("malformed number");
    }
    if (out.grid.size() == 1) {
      if (cells[4] == "sfa_direct") {
        out.grid.method = Method::kSfaDirect;
      } else if (cells[4] == "sfa_spa") {
        out.grid.method = Method::kSfaSpa;
      } else if (cells[4] == "tdse") {
        out.grid.method = Method::kTdse;
      } else {
        fail("unknown method '" + cells[4] + "'");
      }
      if (cells[5] == "length") {
        out.grid.gauge = Gauge::kLength;
      } else if (cells[5] == "velocity") {
        out.grid.gauge = Gauge::kVelocity;
      }
      out.grid.state_kind = cells[6] == "p" ? StateKind::kPOdd : StateKind::kSEven;
    }
  }
  if (!header_seen) fail("missing column header");
  if (out.grid.size() == 0) fail("no data rows");
  try {
    out.grid.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kIo, name + ": " + e.what());
  }
  return out;
}

SpectrumFile read_spectrum_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return read_spectrum_csv(in, path.string());
}

}  // namespace strongfield::cli
