#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "strongfield/error.hpp"
#include "strongfield/tdse.hpp"

namespace strongfield {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Asymptote {
  double amplitude;  // amplitude of the free-wave oscillation at r -> infinity
  double phase;
};

// The three-point Numerov equation for a free wave u_j = sin(j theta + phi) has the
// exact dispersion cos theta = (12 - 10 E h^2) / (12 + 2 E h^2). Amplitude and phase
// are read off two neighbouring samples and carried to r -> infinity with the
// discrete group-velocity (WKB) factor.
struct DiscreteWave {
  double theta;
  double group_velocity;  // dE/dk with k = theta / h
};

DiscreteWave discrete_wave(double energy, double h) {
  const double eh2 = energy * h * h;
  const double cos_t = (12.0 - 10.0 * eh2) / (12.0 + 2.0 * eh2);
  if (!(cos_t > -1.0 && cos_t < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "energy outside the band of the radial grid");
  }
  const double theta = std::acos(cos_t);
  const double denom = 10.0 + 2.0 * cos_t;
  return {theta, 144.0 * std::sin(theta) / (h * denom * denom)};
}

// Regular solution of the discrete radial equation, scaled to stay finite.
std::vector<double> outward(const RadialHamiltonian& ham, double energy) {
  const std::size_t n = ham.size();
  std::vector<double> u(n);
  u[0] = 1e-20;
  double prev = 0.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double lower = j > 0 ? ham.k_lower[j] - energy * ham.m_off : 0.0;
    const double diag = ham.k_diag[j] - energy * ham.m_diag[j];
    const double upper = ham.k_upper[j] - energy * ham.m_off;
    u[j + 1] = -(lower * prev + diag * u[j]) / upper;
    prev = u[j];
    if (std::abs(u[j + 1]) > 1e150) {
      for (std::size_t k = 0; k <= j + 1; ++k) u[k] *= 1e-150;
      prev *= 1e-150;
    }
  }
  return u;
}

Asymptote asymptote(const std::vector<double>& u, const RadialGrid& grid, int ell, double energy) {
  const std::size_t j = u.size() - 2;
  const double r_mid = grid.r(static_cast<int>(j)) + 0.5 * grid.dr;
  const double local = energy - 0.5 * ell * (ell + 1) / (r_mid * r_mid);
  const DiscreteWave here = discrete_wave(local, grid.dr);
  const DiscreteWave far = discrete_wave(energy, grid.dr);
  const double c = std::cos(here.theta);
  const double s = std::sin(here.theta);
  const double a0 = u[j], a1 = u[j + 1];
  const double amp_local = std::sqrt(std::max(0.0, a0 * a0 + a1 * a1 - 2.0 * c * a0 * a1)) / s;
  const double phase = std::atan2(a0 * s, a1 - a0 * c);
  return {amp_local * std::sqrt(here.group_velocity / far.group_velocity), phase};
}

double wrap(double phase) { return std::remainder(phase, 2.0 * kPi); }

double legendre(int ell, double x) {
  double p0 = 1.0, p1 = x;
  if (ell == 0) return p0;
  for (int k = 2; k <= ell; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

ContinuumWave continuum_wave(const CutCoulomb& potential, int ell, double energy,
                             const RadialGrid& grid) {
  if (!(energy > 0.0)) throw Error(ErrorCode::kInvalidArgument, "continuum energy must be positive");
  if (potential.r_c >= 0.9 * grid.r_max()) {
    throw Error(ErrorCode::kInvalidArgument, "continuum matching needs r_c well inside the grid");
  }
  const RadialHamiltonian full(grid, potential, ell);
  const RadialHamiltonian free(grid, CutCoulomb{potential.z_eff, 1e-300, potential.shape}, ell);

  ContinuumWave out;
  out.u = outward(full, energy);
  const Asymptote a_full = asymptote(out.u, grid, ell, energy);
  const Asymptote a_free = asymptote(outward(free, energy), grid, ell, energy);

  // Energy normalization: <u_E|u_E'> = delta(E - E').
  const double v = discrete_wave(energy, grid.dr).group_velocity;
  const double scale = std::sqrt(2.0 / (kPi * v)) / a_full.amplitude;
  for (double& x : out.u) x *= scale;
  out.phase_shift = wrap(a_full.phase - a_free.phase);
  return out;
}

ContinuumProjection project_continuum(const PartialWaveFunction& psi, const CutCoulomb& potential,
                                      std::span<const double> energies, double absorbed_norm) {
  const RadialGrid& grid = psi.grid;
  const int n_l = psi.l_max + 1;
  const double h = grid.dr;

  // Remove every bound component channel by channel.
  std::vector<std::vector<cplx>> waves(static_cast<std::size_t>(n_l));
  double bound_norm = 0.0, ionized = 0.0;
  for (int l = 0; l < n_l; ++l) {
    auto src = psi.wave(l);
    std::vector<cplx> w(src.begin(), src.end());
    for (const auto& state : bound_states(potential, l, grid)) {
      cplx overlap = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) overlap += state.u[j] * w[j];
      overlap *= h;
      bound_norm += std::norm(overlap);
      for (std::size_t j = 0; j < w.size(); ++j) w[j] -= overlap * state.u[j];
    }
    for (cplx c : w) ionized += std::norm(c) * h;
    waves[static_cast<std::size_t>(l)] = std::move(w);
  }

  ContinuumProjection out;
  out.energies.assign(energies.begin(), energies.end());
  out.l_max = psi.l_max;
  out.bound_norm = bound_norm;
  out.ionized_norm = ionized;
  out.absorbed_norm = absorbed_norm;
  out.amplitudes.assign(energies.size() * static_cast<std::size_t>(n_l), cplx{});

  const double r_edge = grid.r(grid.n_r - 2) + 0.5 * h;
  detail::parallel_for(static_cast<std::ptrdiff_t>(energies.size()), [&](std::ptrdiff_t i) {
    for (int l = 0; l < n_l; ++l) {
      // Channels still behind their centrifugal barrier at the box edge have no
      // oscillatory region to normalize against; their overlap is left at zero.
      if (energies[i] - 0.5 * l * (l + 1) / (r_edge * r_edge) <= 0.25 * energies[i]) break;
      const ContinuumWave cw = continuum_wave(potential, l, energies[i], grid);
      const auto& w = waves[static_cast<std::size_t>(l)];
      cplx overlap = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) overlap += cw.u[j] * w[j];
      overlap *= h;
      out.amplitudes[static_cast<std::size_t>(i) * n_l + l] =
          std::pow(-kI, l) * std::exp(kI * cw.phase_shift) * overlap;
    }
  });

  const double total_ionized = absorbed_norm + ionized;
  if (total_ionized > 0.0 && absorbed_norm > 0.2 * total_ionized) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "ABSORBER_LOSS: the absorber removed " << 100.0 * absorbed_norm / total_ionized
        << "% of the ionized population; fast electrons are under-represented";
    out.warnings.push_back(msg.str());
  }
  return out;
}

SpectrumGrid ContinuumProjection::spectrum(double theta, StateKind initial_state) const {
  const int n_l = l_max + 1;
  const double x = std::cos(theta);
  std::vector<double> ylm(static_cast<std::size_t>(n_l));
  for (int l = 0; l < n_l; ++l) {
    ylm[static_cast<std::size_t>(l)] = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi)) * legendre(l, x);
  }
  SpectrumGrid out;
  out.energies = energies;
  out.values.resize(energies.size());
  out.theta = theta;
  out.method = Method::kTdse;
  out.state_kind = initial_state;
  out.warnings = warnings;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    cplx a = 0.0;
    for (int l = 0; l < n_l; ++l) a += amplitudes[i * n_l + l] * ylm[static_cast<std::size_t>(l)];
    out.values[i] = std::norm(a) / std::sqrt(2.0 * energies[i]);
  }
  out.validate();
  return out;
}

SpectrumGrid photoelectron_spectrum(const PartialWaveFunction& psi, const CutCoulomb& potential,
                                    std::span<const double> energies, double theta,
                                    StateKind initial_state, double absorbed_norm) {
  return project_continuum(psi, potential, energies, absorbed_norm).spectrum(theta, initial_state);
}

}  // namespace strongfield
