#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "config.hpp"
#include "csv.hpp"
#include "plot.hpp"
#include "run.hpp"
#include "strongfield/peaks.hpp"

namespace strongfield::cli {

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig:
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kIo:
      return kExitConfig;
    default:
      return kExitSolver;
  }
}

namespace {

// Writes through `fallback` when the path is empty or "-".
template <class Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + path);
  fn(file);
  if (!file) throw Error(ErrorCode::kIo, "failed writing " + path);
}

RunConfig config_with_window(const std::string& path, const std::string& window) {
  RunConfig cfg = path.empty() ? parse_config("") : load_config(path);
  if (!window.empty()) {
    std::tie(cfg.e_min, cfg.e_max) = parse_window(window);
    cfg.validate();
  }
  return cfg;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photoelectron spectra from the strong-field approximation, its saddle-point "
               "evaluation and the time-dependent Schroedinger equation"};
  app.require_subcommand(1);

  std::string config_path, out_path, window;
  bool no_timestamp = false;

  auto* spectrum_cmd = app.add_subcommand("spectrum", "compute one spectrum and write it as CSV");
  spectrum_cmd->add_option("--config", config_path, "flat key=value run configuration");
  spectrum_cmd->add_option("--out", out_path, "CSV path (default: output.csv from the config, else stdout)");
  spectrum_cmd->add_option("--window", window, "energy window emin:emax (a.u.), overrides grid.e_min/e_max");
  spectrum_cmd->add_flag("--no-timestamp", no_timestamp, "omit the generated-at comment line");

  std::vector<std::string> compare_files;
  std::optional<double> omega_opt;
  std::size_t max_peaks = 10;
  auto* compare_cmd = app.add_subcommand("compare", "rescale spectrum b onto a and match their ATI peaks");
  compare_cmd->add_option("files", compare_files, "two spectrum CSVs: a b")->required()->expected(2);
  compare_cmd->add_option("--window", window, "energy window emin:emax (a.u.)");
  compare_cmd->add_option("--omega", omega_opt, "photon energy (default: field.omega metadata of a)");
  compare_cmd->add_option("--max-peaks", max_peaks, "number of lowest peak pairs reported");
  compare_cmd->add_option("--out", out_path, "report path (default stdout)");

  auto* saddles_cmd = app.add_subcommand("saddles", "tabulate complex ionization times over the energy grid");
  saddles_cmd->add_option("--config", config_path, "run configuration");
  saddles_cmd->add_option("--out", out_path, "CSV path (default stdout)");
  saddles_cmd->add_option("--window", window, "energy window emin:emax (a.u.)");

  auto* eigen_cmd = app.add_subcommand("eigen", "tune z_eff of the cut Coulomb potential for 1s and 2p");
  eigen_cmd->add_option("--config", config_path, "run configuration (state.ip and tdse.* keys)");
  eigen_cmd->add_option("--out", out_path, "CSV path (default stdout)");

  std::vector<std::string> plot_files;
  std::string style = "overlay";
  std::string image = "spectrum.png";
  auto* plot_cmd = app.add_subcommand("plot", "write a gnuplot script for one or more spectrum CSVs");
  plot_cmd->add_option("files", plot_files, "spectrum CSVs");
  plot_cmd->add_option("--style", style, "overlay | gauges (length-gauge panel above velocity-gauge panel)")
      ->check(CLI::IsMember({"overlay", "gauges"}));
  plot_cmd->add_option("--image", image, "image file the script renders");
  plot_cmd->add_option("--out", out_path, "script path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (*spectrum_cmd) {
      const RunConfig cfg = config_with_window(config_path, window);
      for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';
      const auto result = run(cfg, [&](const std::string& s) { err << s << '\n'; });
      for (const auto& w : result.spectrum.warnings) err << "warning: " << w << '\n';
      if (!result.spectrum.flagged_energies.empty()) {
        err << "warning: " << result.spectrum.flagged_energies.size()
            << " energies flagged (saddle coalescence or no saddle); see CSV metadata\n";
      }
      const std::string path = out_path.empty() ? cfg.output_csv : out_path;
      with_output(path, out, [&](std::ostream& os) {
        write_spectrum_csv(os, result.spectrum, result.metadata, !no_timestamp);
      });
      if (!cfg.output_plot.empty() && !path.empty() && path != "-") {
        with_output(cfg.output_plot, out, [&](std::ostream& os) {
          write_plot_script(os, {path}, PlotStyle::kOverlay, path + ".png");
        });
      }
    } else if (*compare_cmd) {
      const auto a = read_spectrum_csv(compare_files[0]);
      const auto b = read_spectrum_csv(compare_files[1]);
      double omega = 0.0;
      if (omega_opt) {
        omega = *omega_opt;
      } else if (const auto w = a.get("field.omega"); !w.empty()) {
        omega = std::stod(w);
      } else {
        throw Error(ErrorCode::kConfig, "compare: no field.omega metadata; pass --omega");
      }
      double lo = -1e300, hi = 1e300;
      if (!window.empty()) std::tie(lo, hi) = parse_window(window);
      const auto report = compare_spectra(a.grid, b.grid, lo, hi, omega, max_peaks);
      with_output(out_path, out, [&](std::ostream& os) {
        write_comparison(os, report, compare_files[0], compare_files[1]);
      });
    } else if (*saddles_cmd) {
      const RunConfig cfg = config_with_window(config_path, window);
      with_output(out_path, out, [&](std::ostream& os) { write_saddle_table(os, cfg); });
    } else if (*eigen_cmd) {
      const RunConfig cfg = config_with_window(config_path, "");
      with_output(out_path, out, [&](std::ostream& os) { write_eigen_table(os, cfg); });
    } else if (*plot_cmd) {
      std::vector<std::filesystem::path> paths(plot_files.begin(), plot_files.end());
      with_output(out_path, out, [&](std::ostream& os) {
        write_plot_script(os, paths, style == "gauges" ? PlotStyle::kGauges : PlotStyle::kOverlay, image);
      });
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace strongfield::cli
