#include "strongfield/spectrum.hpp"

#include <cmath>

#include "strongfield/error.hpp"

namespace strongfield {

std::string_view to_string(Gauge gauge) {
  return gauge == Gauge::kLength ? "length" : "velocity";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kSfaDirect: return "sfa_direct";
    case Method::kSfaSpa: return "sfa_spa";
    case Method::kTdse: return "tdse";
  }
  return "unknown";
}

void SpectrumGrid::validate() const {
  if (values.size() != energies.size()) {
    throw Error(ErrorCode::kInvalidArgument, "spectrum: energies/values size mismatch");
  }
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (i > 0 && !(energies[i] > energies[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "spectrum: energies must be strictly increasing");
    }
    if (!std::isfinite(values[i]) || values[i] < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "spectrum: values must be finite and non-negative");
    }
  }
}

std::vector<double> linear_grid(double e_min, double e_max, int n) {
  if (n < 1 || !(e_max >= e_min)) throw Error(ErrorCode::kInvalidArgument, "bad energy grid");
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = e_min;
    return out;
  }
  for (int i = 0; i < n; ++i) out[i] = e_min + (e_max - e_min) * i / (n - 1);
  return out;
}

}  // namespace strongfield
