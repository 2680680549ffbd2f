#include "config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "strongfield/error.hpp"

namespace strongfield::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  std::ostringstream msg;
  msg << "config key '" << key << "': invalid value '" << value << "' (expected " << expected << ")";
  throw Error(ErrorCode::kConfig, msg.str());
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, value, "a number");
  return out;
}

int to_int(std::string_view key, std::string_view value) {
  int out = 0;
  const auto* end = value.data() + value.size();
  const auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, value, "an integer");
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view key, std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"field.e0", [](RunConfig& c, auto k, auto v) { c.field.e0 = to_double(k, v); }},
      {"field.omega", [](RunConfig& c, auto k, auto v) { c.field.omega = to_double(k, v); }},
      {"field.n_cycles", [](RunConfig& c, auto k, auto v) { c.field.n_cycles = to_int(k, v); }},
      {"field.cep", [](RunConfig& c, auto k, auto v) { c.field.cep = to_double(k, v); }},
      {"state.kind",
       [](RunConfig& c, auto k, auto v) {
         if (v == "s" || v == "1s") {
           c.state = StateKind::kSEven;
         } else if (v == "p" || v == "2p") {
           c.state = StateKind::kPOdd;
         } else {
           bad_value(k, v, "s|p");
         }
       }},
      {"state.ip", [](RunConfig& c, auto k, auto v) { c.ip = to_double(k, v); }},
      {"method.kind",
       [](RunConfig& c, auto k, auto v) {
         if (v == "sfa_direct") {
           c.method = Method::kSfaDirect;
         } else if (v == "sfa_spa") {
           c.method = Method::kSfaSpa;
         } else if (v == "tdse") {
           c.method = Method::kTdse;
         } else {
           bad_value(k, v, "sfa_direct|sfa_spa|tdse");
         }
       }},
      {"method.gauge",
       [](RunConfig& c, auto k, auto v) {
         if (v == "length" || v == "L") {
           c.gauge = Gauge::kLength;
         } else if (v == "velocity" || v == "V") {
           c.gauge = Gauge::kVelocity;
         } else {
           bad_value(k, v, "length|velocity");
         }
         c.gauge_set = true;
       }},
      {"grid.e_min", [](RunConfig& c, auto k, auto v) { c.e_min = to_double(k, v); }},
      {"grid.e_max", [](RunConfig& c, auto k, auto v) { c.e_max = to_double(k, v); }},
      {"grid.n_points", [](RunConfig& c, auto k, auto v) { c.n_points = to_int(k, v); }},
      {"grid.theta", [](RunConfig& c, auto k, auto v) { c.theta = to_double(k, v); }},
      {"sfa.panels_per_cycle",
       [](RunConfig& c, auto k, auto v) { c.quad.panels_per_cycle = to_int(k, v); }},
      {"sfa.order", [](RunConfig& c, auto k, auto v) { c.quad.order = to_int(k, v); }},
      {"sfa.max_panels_per_cycle",
       [](RunConfig& c, auto k, auto v) { c.quad.max_panels_per_cycle = to_int(k, v); }},
      {"sfa.rel_tol", [](RunConfig& c, auto k, auto v) { c.quad.rel_tol = to_double(k, v); }},
      {"sfa.amplitude",
       [](RunConfig& c, auto k, auto v) {
         if (v == "full") {
           c.boundary_corrected = true;
         } else if (v == "windowed") {
           c.boundary_corrected = false;
         } else {
           bad_value(k, v, "full|windowed");
         }
       }},
      {"tdse.dr", [](RunConfig& c, auto k, auto v) { c.tdse.dr = to_double(k, v); }},
      {"tdse.r_max", [](RunConfig& c, auto k, auto v) { c.tdse.r_max = to_double(k, v); }},
      {"tdse.l_max", [](RunConfig& c, auto k, auto v) { c.tdse.l_max = to_int(k, v); }},
      {"tdse.dt", [](RunConfig& c, auto k, auto v) { c.tdse.dt = to_double(k, v); }},
      {"tdse.r_c", [](RunConfig& c, auto k, auto v) { c.tdse.r_c = to_double(k, v); }},
      {"tdse.z_eff",
       [](RunConfig& c, auto k, auto v) {
         if (v == "auto") {
           c.tdse.z_eff.reset();
         } else {
           c.tdse.z_eff = to_double(k, v);
         }
       }},
      {"tdse.cut",
       [](RunConfig& c, auto k, auto v) {
         if (v == "hard") {
           c.tdse.cut = CutShape::kHard;
         } else if (v == "continuous") {
           c.tdse.cut = CutShape::kContinuous;
         } else {
           bad_value(k, v, "hard|continuous");
         }
       }},
      {"tdse.mask_start", [](RunConfig& c, auto k, auto v) { c.tdse.mask_start = to_double(k, v); }},
      {"output.csv", [](RunConfig& c, auto, auto v) { c.output_csv = std::string(v); }},
      {"output.plot", [](RunConfig& c, auto, auto v) { c.output_plot = std::string(v); }},
      {"output.checkpoint", [](RunConfig& c, auto, auto v) { c.tdse.checkpoint = std::string(v); }},
  };
  return table;
}

void require(bool ok, std::string_view key, std::string_view what) {
  if (!ok) {
    throw Error(ErrorCode::kConfig, "config key '" + std::string(key) + "': " + std::string(what));
  }
}

}  // namespace

void RunConfig::validate() const {
  require(field.e0 >= 0.0, "field.e0", "must be non-negative");
  require(field.omega > 0.0, "field.omega", "must be positive");
  require(field.n_cycles >= 2, "field.n_cycles", "must be at least 2");
  require(ip > 0.0, "state.ip", "must be positive");
  require(e_min > 0.0, "grid.e_min", "must be positive");
  require(e_max > e_min, "grid.e_max", "must exceed grid.e_min");
  require(n_points >= 2, "grid.n_points", "must be at least 2");
  require(quad.panels_per_cycle >= 1, "sfa.panels_per_cycle", "must be positive");
  require(quad.order >= 2, "sfa.order", "must be at least 2");
  require(quad.max_panels_per_cycle >= quad.panels_per_cycle, "sfa.max_panels_per_cycle",
          "must not be below sfa.panels_per_cycle");
  require(quad.rel_tol > 0.0, "sfa.rel_tol", "must be positive");
  require(tdse.dr > 0.0, "tdse.dr", "must be positive");
  require(tdse.r_max > 20.0 * tdse.dr, "tdse.r_max", "must span many grid points");
  require(tdse.l_max >= 1, "tdse.l_max", "must be at least 1");
  require(tdse.dt > 0.0, "tdse.dt", "must be positive");
  require(tdse.r_c > 0.0, "tdse.r_c", "must be positive");
  require(!tdse.z_eff || *tdse.z_eff > 0.0, "tdse.z_eff", "must be positive or 'auto'");
  require(tdse.mask_start > 0.5 && tdse.mask_start < 1.0, "tdse.mask_start", "must lie in (0.5, 1)");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig,
                  "config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw Error(ErrorCode::kConfig, "config key '" + std::string(key) + "': unknown key");
    }
    it->second(cfg, key, value);
  }
  if (cfg.method == Method::kTdse && cfg.gauge_set) {
    cfg.warnings.push_back("method.gauge is ignored for tdse runs (length gauge is used)");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::pair<double, double> parse_window(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) bad_value("--window", text, "emin:emax");
  const double lo = to_double("--window", trim(text.substr(0, colon)));
  const double hi = to_double("--window", trim(text.substr(colon + 1)));
  if (!(hi > lo)) bad_value("--window", text, "emin < emax");
  return {lo, hi};
}

}  // namespace strongfield::cli
