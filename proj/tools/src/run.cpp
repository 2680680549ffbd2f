#include "run.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "strongfield/error.hpp"
#include "strongfield/saddle.hpp"
#include "strongfield/sfa.hpp"
#include "strongfield/tdse.hpp"

namespace strongfield::cli {

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

int initial_ell(StateKind kind) { return kind == StateKind::kPOdd ? 1 : 0; }

RadialGrid tdse_grid(const TdseConfig& t) {
  return RadialGrid::from_extent(t.dr, t.r_max, t.mask_start);
}

}  // namespace

Metadata describe(const RunConfig& c) {
  Metadata m = {
      {"field.e0", num(c.field.e0)},
      {"field.omega", num(c.field.omega)},
      {"field.n_cycles", std::to_string(c.field.n_cycles)},
      {"field.cep", num(c.field.cep)},
      {"state.kind", std::string(to_string(c.state))},
      {"state.ip", num(c.ip)},
      {"method.kind", std::string(to_string(c.method))},
      {"grid.theta", num(c.theta)},
  };
  if (c.method != Method::kTdse) {
    m.emplace_back("method.gauge", std::string(to_string(c.gauge)));
  }
  if (c.method == Method::kSfaDirect) {
    m.emplace_back("sfa.amplitude", c.boundary_corrected ? "full" : "windowed");
  }
  if (c.method == Method::kTdse) {
    m.emplace_back("tdse.dr", num(c.tdse.dr));
    m.emplace_back("tdse.r_max", num(c.tdse.r_max));
    m.emplace_back("tdse.l_max", std::to_string(c.tdse.l_max));
    m.emplace_back("tdse.dt", num(c.tdse.dt));
    m.emplace_back("tdse.r_c", num(c.tdse.r_c));
    m.emplace_back("tdse.cut", c.tdse.cut == CutShape::kHard ? "hard" : "continuous");
    m.emplace_back("tdse.mask_start", num(c.tdse.mask_start));
  }
  for (const auto& w : c.warnings) m.emplace_back("warning", w);
  return m;
}

RunResult run(const RunConfig& c, const Logger& log) {
  c.validate();
  auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  const auto energies = linear_grid(c.e_min, c.e_max, c.n_points);
  RunResult out;
  out.metadata = describe(c);

  switch (c.method) {
    case Method::kSfaDirect: {
      const auto state = BoundStateModel::make(c.state, c.ip);
      SfaOptions opts;
      opts.quad = c.quad;
      opts.boundary_corrected = c.boundary_corrected;
      out.spectrum = spectrum(state, c.gauge, c.field, energies, c.theta, opts);
      break;
    }
    case Method::kSfaSpa: {
      const auto state = BoundStateModel::make(c.state, c.ip);
      out.spectrum = spa_spectrum(state, c.gauge, c.field, energies, c.theta);
      break;
    }
    case Method::kTdse: {
      const RadialGrid grid = tdse_grid(c.tdse);
      const int ell = initial_ell(c.state);
      double z = 0.0;
      if (c.tdse.z_eff) {
        z = *c.tdse.z_eff;
        out.metadata.emplace_back("tdse.z_eff", num(z));
      } else {
        z = find_zeff(c.ip, ell, c.tdse.r_c, grid, c.tdse.cut);
        out.metadata.emplace_back("tdse.z_eff", num(z) + " (auto)");
        say("tuned z_eff = " + num(z));
      }
      const CutCoulomb potential{z, c.tdse.r_c, c.tdse.cut};
      const auto bound = radial_eigenstate(potential, ell, 0, grid);
      out.metadata.emplace_back("tdse.initial_energy", num(bound.energy));

      PropagationOptions opts;
      opts.dt = c.tdse.dt;
      opts.progress = [&](double t, double norm) {
        say("t = " + num(t) + " / " + num(c.field.duration()) + ", norm = " + num(norm));
      };
      auto prop = propagate(PartialWaveFunction::from_radial(grid, c.tdse.l_max, ell, bound.u),
                            potential, Field(c.field), opts);
      if (!c.tdse.checkpoint.empty()) {
        std::ofstream ck(c.tdse.checkpoint, std::ios::binary);
        prop.wavefunction.save(ck);
      }
      const auto projection =
          project_continuum(prop.wavefunction, potential, energies, prop.absorbed_norm);
      out.metadata.emplace_back("tdse.bound_population", num(projection.bound_norm));
      out.metadata.emplace_back("tdse.ionized_in_box", num(projection.ionized_norm));
      out.metadata.emplace_back("tdse.absorbed", num(prop.absorbed_norm));
      out.spectrum = projection.spectrum(c.theta, c.state);
      break;
    }
  }
  return out;
}

void write_saddle_table(std::ostream& os, const RunConfig& c) {
  c.validate();
  const auto state = BoundStateModel::make(c.state, c.ip);
  const Field field(c.field);
  for (const auto& [k, v] : describe(c)) os << "# " << k << ": " << v << '\n';
  os << "energy_au,momentum_au,theta_rad,index,t_r,t_i,v_z_re,v_z_im,phase_re,phase_im,"
        "curvature_re,curvature_im,residual\n";
  char buf[400];
  for (double e : linear_grid(c.e_min, c.e_max, c.n_points)) {
    const Vec3 p = Vec3::polar(std::sqrt(2.0 * e), c.theta);
    std::vector<SaddleSolution> saddles;
    try {
      saddles = solve_saddles(p, field, state);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kEmptyResult) throw;
      os << "# no saddle at energy " << num(e) << '\n';
      continue;
    }
    for (std::size_t i = 0; i < saddles.size(); ++i) {
      const auto& s = saddles[i];
      std::snprintf(buf, sizeof buf,
                    "%.10g,%.12g,%.10g,%zu,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.3e\n", e,
                    p.norm(), c.theta, i, s.t_s.t_r, s.t_s.t_i, s.velocity.z.real(),
                    s.velocity.z.imag(), s.action_phase.real(), s.action_phase.imag(),
                    s.curvature.real(), s.curvature.imag(), s.residual);
      os << buf;
    }
  }
}

void write_eigen_table(std::ostream& os, const RunConfig& c) {
  c.validate();
  const RadialGrid grid = tdse_grid(c.tdse);
  os << "# tdse.dr: " << num(c.tdse.dr) << "\n# tdse.r_max: " << num(c.tdse.r_max) << '\n';
  os << "state,ell,r_c,cut,z_eff,energy_au,target_ip\n";
  const char* cut = c.tdse.cut == CutShape::kHard ? "hard" : "continuous";
  for (int ell : {0, 1}) {
    const double z = find_zeff(c.ip, ell, c.tdse.r_c, grid, c.tdse.cut);
    const auto st = radial_eigenstate({z, c.tdse.r_c, c.tdse.cut}, ell, 0, grid);
    os << (ell == 0 ? "1s" : "2p") << ',' << ell << ',' << num(c.tdse.r_c) << ',' << cut << ','
       << num(z) << ',' << num(st.energy) << ',' << num(c.ip) << '\n';
  }
  // Uncut references: hydrogen 1s and the Z = 2 hydrogen-like 2p, both at -0.5.
  for (auto [ell, z] : {std::pair{0, 1.0}, std::pair{1, 2.0}}) {
    const auto st = radial_eigenstate({z, 2.0 * grid.r_max(), CutShape::kHard}, ell, 0, grid);
    os << (ell == 0 ? "1s" : "2p") << ',' << ell << ",inf,none," << num(z) << ','
       << num(st.energy) << ",0.5\n";
  }
}

void write_comparison(std::ostream& os, const ComparisonReport& r, const std::string& name_a,
                      const std::string& name_b) {
  char buf[200];
  os << "# a: " << name_a << "\n# b: " << name_b << '\n';
  std::snprintf(buf, sizeof buf, "# scale_factor: %.12g\n# max_offset_au: %.6g\n# max_offset_omega: %.4f\n",
                r.scale_factor, r.max_offset, r.max_offset_in_omega());
  os << buf;
  os << "# peaks_a: " << r.peaks_a << "\n# peaks_b: " << r.peaks_b << '\n';
  os << "peak_a_au,peak_b_au,offset_au,offset_omega\n";
  for (const auto& m : r.peak_table) {
    std::snprintf(buf, sizeof buf, "%.8g,%.8g,%.6g,%.4f\n", m.energy_a, m.energy_b, m.offset,
                  m.offset / r.omega);
    os << buf;
  }
}

}  // namespace strongfield::cli
