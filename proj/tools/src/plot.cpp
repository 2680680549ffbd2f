#include "plot.hpp"

#include <cstdio>
#include <ostream>

#include "csv.hpp"
#include "strongfield/error.hpp"
#include "strongfield/field.hpp"

namespace strongfield::cli {

namespace {

std::string curve_title(const SpectrumGrid& g) {
  std::string t(to_string(g.method));
  if (g.gauge) t += *g.gauge == Gauge::kLength ? " L" : " V";
  t += g.state_kind == StateKind::kPOdd ? " p" : " s";
  return t;
}

void emit_panel(std::ostream& os, const std::vector<std::size_t>& members, const std::string& title) {
  os << "set title '" << title << "'\nplot ";
  for (std::size_t k = 0; k < members.size(); ++k) {
    if (k) os << ", \\\n     ";
    os << "$d" << members[k] << " using 1:2 with lines lw 1.5 title t" << members[k];
  }
  os << '\n';
}

}  // namespace

void write_plot_script(std::ostream& os, const std::vector<std::filesystem::path>& csvs,
                       PlotStyle style, const std::string& image) {
  if (csvs.empty()) throw Error(ErrorCode::kConfig, "plot: no CSV files given");
  std::vector<SpectrumFile> files;
  for (const auto& p : csvs) files.push_back(read_spectrum_csv(p));

  os << "# gnuplot script; data embedded below\n"
     << "set terminal pngcairo size 900," << (style == PlotStyle::kGauges ? 1100 : 600) << '\n'
     << "set output '" << image << "'\n"
     << "set logscale y\nset format y '10^{%L}'\n"
     << "set xlabel 'E (a.u.)'\nset ylabel '|M_p|^2 (a.u.)'\n"
     << "set x2tics\nset link x2 via x*" << kHartreeEv << " inverse x/" << kHartreeEv << '\n'
     << "set x2label 'E (eV)'\nset key top right\n";
  char buf[64];
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto& g = files[k].grid;
    os << "t" << k << " = '" << curve_title(g) << "'\n$d" << k << " << EOD\n";
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.10g %.8e\n", g.energies[i], g.values[i]);
      os << buf;
    }
    os << "EOD\n";
  }

  if (style == PlotStyle::kOverlay) {
    std::vector<std::size_t> all(files.size());
    for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
    emit_panel(os, all, "photoelectron spectra");
    return;
  }
  std::vector<std::size_t> length, velocity;
  for (std::size_t k = 0; k < files.size(); ++k) {
    const auto& g = files[k].grid.gauge;
    (g && *g == Gauge::kVelocity ? velocity : length).push_back(k);
  }
  os << "set multiplot layout 2,1\n";
  if (!length.empty()) emit_panel(os, length, "length gauge (and gauge-free curves)");
  if (!velocity.empty()) emit_panel(os, velocity, "velocity gauge");
  os << "unset multiplot\n";
}

}  // namespace strongfield::cli
