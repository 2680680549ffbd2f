#include "strongfield/peaks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "strongfield/error.hpp"

namespace strongfield {

namespace {

std::vector<double> log10_values(std::span<const double> values) {
  std::vector<double> out(values.size());
  // Zeros would become -inf; clamp to something far below any physical value.
  std::transform(values.begin(), values.end(), out.begin(),
                 [](double v) { return std::log10(std::max(v, 1e-300)); });
  return out;
}

double prominence(std::span<const double> y, std::size_t i) {
  double left_min = y[i];
  for (std::size_t k = i; k-- > 0;) {
    if (y[k] > y[i]) break;
    left_min = std::min(left_min, y[k]);
  }
  double right_min = y[i];
  for (std::size_t k = i + 1; k < y.size(); ++k) {
    if (y[k] > y[i]) break;
    right_min = std::min(right_min, y[k]);
  }
  return y[i] - std::max(left_min, right_min);
}

}  // namespace

std::vector<Peak> find_peaks(std::span<const double> energies, std::span<const double> y,
                             const PeakOptions& options) {
  if (energies.size() != y.size()) {
    throw Error(ErrorCode::kInvalidArgument, "find_peaks: size mismatch");
  }
  std::vector<std::size_t> candidates;
  const std::size_t n = y.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1])) continue;
    // Flat tops count once, at their middle.
    std::size_t end = i;
    while (end + 1 < n && y[end + 1] == y[i]) ++end;
    if (end + 1 < n && y[end + 1] < y[i]) candidates.push_back((i + end) / 2);
    i = end;
  }

  if (options.min_separation > 0.0) {
    std::vector<std::size_t> by_height = candidates;
    std::sort(by_height.begin(), by_height.end(),
              [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
    std::vector<std::size_t> kept;
    for (std::size_t i : by_height) {
      const bool crowded = std::any_of(kept.begin(), kept.end(), [&](std::size_t k) {
        return std::abs(energies[k] - energies[i]) < options.min_separation;
      });
      if (!crowded) kept.push_back(i);
    }
    std::sort(kept.begin(), kept.end());
    candidates = std::move(kept);
  }

  std::vector<Peak> out;
  for (std::size_t i : candidates) {
    if (energies[i] < options.e_min || energies[i] > options.e_max) continue;
    const double prom = prominence(y, i);
    if (prom >= options.min_prominence) out.push_back({i, energies[i], y[i], prom});
  }
  return out;
}

std::vector<Peak> spectrum_peaks(const SpectrumGrid& grid, const PeakOptions& options) {
  const auto y = log10_values(grid.values);
  return find_peaks(grid.energies, y, options);
}

std::vector<double> smoothed_log(std::span<const double> energies, std::span<const double> values,
                                 double width) {
  const std::size_t n = values.size();
  const auto y = log10_values(values);
  if (n < 3) return y;
  const double h = (energies.back() - energies.front()) / static_cast<double>(n - 1);
  long half = std::lround(width / h) / 2;
  half = std::max(0L, half);
  // Box average with the end values repeated past the edges.
  std::vector<double> out(n);
  const long last = static_cast<long>(n) - 1;
  for (long i = 0; i <= last; ++i) {
    double s = 0.0;
    for (long k = i - half; k <= i + half; ++k) s += y[static_cast<std::size_t>(std::clamp(k, 0L, last))];
    out[static_cast<std::size_t>(i)] = s / static_cast<double>(2 * half + 1);
  }
  return out;
}

EnvelopeExtrema envelope_extrema(const SpectrumGrid& grid, double width, double e_min,
                                 double e_max, double min_prominence) {
  auto s = smoothed_log(grid.energies, grid.values, width);
  PeakOptions opts;
  opts.min_prominence = min_prominence;
  opts.e_min = e_min;
  opts.e_max = e_max;
  EnvelopeExtrema out;
  for (const auto& p : find_peaks(grid.energies, s, opts)) out.maxima.push_back(p.energy);
  for (double& v : s) v = -v;
  for (const auto& p : find_peaks(grid.energies, s, opts)) out.minima.push_back(p.energy);
  return out;
}

bool all_within(std::span<const double> points, std::span<const double> targets, double tolerance,
                double* worst) {
  double max_distance = 0.0;
  for (double x : points) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : targets) best = std::min(best, std::abs(x - t));
    max_distance = std::max(max_distance, best);
  }
  if (worst) *worst = max_distance;
  return max_distance <= tolerance;
}

namespace {

double interpolate_log(const SpectrumGrid& g, const std::vector<double>& log_g, double e) {
  auto it = std::lower_bound(g.energies.begin(), g.energies.end(), e);
  if (it == g.energies.end()) return log_g.back();
  const auto k = static_cast<std::size_t>(it - g.energies.begin());
  if (*it == e || k == 0) return log_g[k];
  const double x0 = g.energies[k - 1], x1 = g.energies[k];
  const double f = (e - x0) / (x1 - x0);
  return (1.0 - f) * log_g[k - 1] + f * log_g[k];
}

}  // namespace

ComparisonReport compare_spectra(const SpectrumGrid& a, const SpectrumGrid& b, double e_min,
                                 double e_max, double omega, std::size_t max_peaks) {
  a.validate();
  b.validate();
  if (!(omega > 0.0) || !(e_max > e_min)) {
    throw Error(ErrorCode::kInvalidArgument, "compare: need omega > 0 and a non-empty window");
  }
  const double lo = std::max({e_min, a.energies.front(), b.energies.front()});
  const double hi = std::min({e_max, a.energies.back(), b.energies.back()});
  if (!(hi > lo)) throw Error(ErrorCode::kInvalidArgument, "compare: spectra do not overlap in the window");

  const auto log_a = log10_values(a.values);
  const auto log_b = log10_values(b.values);
  // Mean of log(a) - log(b) on the points of both grids inside the window keeps
  // scale(a, b) * scale(b, a) = 1 exactly.
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.energies[i] < lo || a.energies[i] > hi) continue;
    sum += log_a[i] - interpolate_log(b, log_b, a.energies[i]);
    ++count;
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b.energies[i] < lo || b.energies[i] > hi) continue;
    sum += interpolate_log(a, log_a, b.energies[i]) - log_b[i];
    ++count;
  }
  ComparisonReport report;
  report.omega = omega;
  report.scale_factor = std::pow(10.0, sum / static_cast<double>(count));

  PeakOptions opts;
  opts.min_prominence = 0.2;
  opts.min_separation = 0.5 * omega;
  opts.e_min = lo;
  opts.e_max = hi;
  const auto pa = find_peaks(a.energies, log_a, opts);
  const auto pb = find_peaks(b.energies, log_b, opts);
  report.peaks_a = pa.size();
  report.peaks_b = pb.size();
  if (pa.size() < 3 || pb.size() < 3) {
    throw Error(ErrorCode::kNoPeaks, "compare: fewer than 3 peaks in the window (" +
                                         std::to_string(pa.size()) + " vs " +
                                         std::to_string(pb.size()) + ")");
  }

  // Closest pairs first, each peak used once; symmetric in a and b.
  struct Pair {
    double distance;
    std::size_t ia, ib;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      pairs.push_back({std::abs(pa[i].energy - pb[j].energy), i, j});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.distance != y.distance) return x.distance < y.distance;
    return std::tie(x.ia, x.ib) < std::tie(y.ia, y.ib);
  });
  std::vector<char> used_a(pa.size(), 0), used_b(pb.size(), 0);
  for (const auto& p : pairs) {
    if (used_a[p.ia] || used_b[p.ib]) continue;
    used_a[p.ia] = used_b[p.ib] = 1;
    report.peak_table.push_back({pa[p.ia].energy, pb[p.ib].energy, pa[p.ia].energy - pb[p.ib].energy});
  }
  std::sort(report.peak_table.begin(), report.peak_table.end(), [](const PeakMatch& x, const PeakMatch& y) {
    return std::min(x.energy_a, x.energy_b) < std::min(y.energy_a, y.energy_b);
  });
  if (report.peak_table.size() > max_peaks) report.peak_table.resize(max_peaks);
  for (const auto& m : report.peak_table) report.max_offset = std::max(report.max_offset, std::abs(m.offset));
  return report;
}

double median_peak_spacing(const SpectrumGrid& grid, double e_min, double e_max, double omega,
                           double min_prominence) {
  PeakOptions opts;
  opts.min_prominence = min_prominence;
  opts.min_separation = 0.5 * omega;
  opts.e_min = e_min;
  opts.e_max = e_max;
  const auto peaks = spectrum_peaks(grid, opts);
  if (peaks.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> gaps;
  for (std::size_t i = 1; i < peaks.size(); ++i) gaps.push_back(peaks[i].energy - peaks[i - 1].energy);
  std::sort(gaps.begin(), gaps.end());
  const std::size_t m = gaps.size() / 2;
  return gaps.size() % 2 ? gaps[m] : 0.5 * (gaps[m - 1] + gaps[m]);
}

}  // namespace strongfield
