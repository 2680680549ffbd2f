#pragma once

#include <span>
#include <vector>

#include "strongfield/spectrum.hpp"

// Peak bookkeeping on log-scale spectra. Everything here works on log10 of the
// spectral values, so prominences are in decades.

namespace strongfield {

struct Peak {
  std::size_t index;
  double energy;
  double log_value;
  double prominence;  // decades
};

struct PeakOptions {
  double min_prominence = 0.2;  // decades
  double min_separation = 0.0;  // a.u. of energy; lower peaks this close to a higher one are dropped
  double e_min = -1e300;
  double e_max = 1e300;
};

/// Local maxima of `log_values`, filtered by separation (higher peaks win) and then
/// by topographic prominence. Returned in ascending energy.
std::vector<Peak> find_peaks(std::span<const double> energies, std::span<const double> log_values,
                             const PeakOptions& options);

/// Peaks of log10(values).
std::vector<Peak> spectrum_peaks(const SpectrumGrid& grid, const PeakOptions& options);

/// Running mean of log10(values) over an energy window of the given full width.
/// Averaging over one photon energy washes out the ATI comb and leaves the
/// interference envelope.
std::vector<double> smoothed_log(std::span<const double> energies, std::span<const double> values,
                                 double width);

struct EnvelopeExtrema {
  std::vector<double> maxima;
  std::vector<double> minima;
};

/// Humps and dips of the smoothed log spectrum inside [e_min, e_max].
EnvelopeExtrema envelope_extrema(const SpectrumGrid& grid, double width, double e_min,
                                 double e_max, double min_prominence = 0.05);

/// True when each energy in `points` lies within `tolerance` of some energy in `targets`.
/// Reports the worst distance through `worst` when given.
bool all_within(std::span<const double> points, std::span<const double> targets, double tolerance,
                double* worst = nullptr);

struct PeakMatch {
  double energy_a;
  double energy_b;
  double offset;  // energy_a - energy_b
};

struct ComparisonReport {
  double scale_factor = 1.0;  // a ~ scale_factor * b
  std::vector<PeakMatch> peak_table;
  double max_offset = 0.0;
  double omega = 0.0;
  std::size_t peaks_a = 0;
  std::size_t peaks_b = 0;

  double max_offset_in_omega() const { return omega > 0.0 ? max_offset / omega : 0.0; }
};

/// Rescales b onto a with a single constant (least squares in log), pairs their
/// ATI peaks (prominence 0.2 decades, separation omega/2) closest-first and keeps
/// the `max_peaks` lowest pairs. b is interpolated onto a's energies when the
/// grids differ. Throws Error(kNoPeaks) if either side has fewer than 3 peaks.
ComparisonReport compare_spectra(const SpectrumGrid& a, const SpectrumGrid& b, double e_min,
                                 double e_max, double omega, std::size_t max_peaks = 10);

/// Median distance between neighbouring local maxima in [e_min, e_max] that are at
/// least omega/2 apart. NaN with fewer than two maxima.
double median_peak_spacing(const SpectrumGrid& grid, double e_min, double e_max, double omega,
                           double min_prominence = 0.02);

}  // namespace strongfield
