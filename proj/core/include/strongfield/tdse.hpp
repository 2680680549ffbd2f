#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "strongfield/field.hpp"
#include "strongfield/spectrum.hpp"

// Single-active-electron TDSE on a uniform radial grid with m = 0 partial waves,
// length-gauge coupling and a truncated Coulomb potential.
//
// Radial discretization: Numerov-improved three-point stencil,
//   H_l = -1/2 M^-1 D + V(r) + l(l+1)/2r^2,   M = 1 + h^2/12 D,
// with D the three-point second difference and, for l = 0, the origin
// correction D_00 = -2/h^2 (1 - Z h / (12 - 10 Z h)). M and D commute, so H_l is
// symmetric in the plain sum_j h |u_j|^2 inner product.

namespace strongfield {

enum class CutShape {
  kHard,        // -Z/r for r <= r_c, 0 beyond
  kContinuous,  // -Z/r + Z/r_c for r <= r_c, 0 beyond
};

struct CutCoulomb {
  double z_eff = 1.0;
  double r_c = 2.0;
  CutShape shape = CutShape::kHard;

  double operator()(double r) const;
  void validate() const;
};

struct RadialGrid {
  double dr = 0.1;
  int n_r = 4000;
  double mask_start = 0.9;  // fraction of r_max where the absorber begins

  static RadialGrid from_extent(double dr, double r_max, double mask_start = 0.9);
  double r_max() const { return n_r * dr; }
  double r(int j) const { return (j + 1) * dr; }
  void validate() const;
};

/// Tridiagonal pieces of one partial-wave Hamiltonian. `k_*` hold K = -1/2 D + M W,
/// the Hamiltonian multiplied through by M, with W = V + l(l+1)/2r^2.
struct RadialHamiltonian {
  RadialHamiltonian(const RadialGrid& grid, const CutCoulomb& potential, int ell);

  int ell;
  double h;
  std::vector<double> w;       // effective potential
  std::vector<double> m_diag;  // M
  double m_off;
  std::vector<double> k_diag;  // K = -1/2 D + M W
  std::vector<double> k_lower; // K_{j,j-1}, index j (entry 0 unused)
  std::vector<double> k_upper; // K_{j,j+1}, index j (last entry unused)

  std::size_t size() const { return w.size(); }
  /// Number of eigenvalues of H below `energy` (Sylvester inertia of M(H - E)M).
  int count_below(double energy) const;
};

struct RadialEigenstate {
  double energy;
  std::vector<double> u;  // normalized: sum_j dr u_j^2 = 1, positive first lobe
};

/// n_index-th (0 = lowest) bound eigenpair of the l-channel.
/// Throws Error(kNotBound) if it does not lie below zero.
RadialEigenstate radial_eigenstate(const CutCoulomb& potential, int ell, int n_index,
                                   const RadialGrid& grid);

/// Every eigenpair of the l-channel with negative energy, lowest first.
std::vector<RadialEigenstate> bound_states(const CutCoulomb& potential, int ell,
                                           const RadialGrid& grid);

/// Effective charge such that the lowest l-state sits at -target_ip.
/// Throws Error(kBracketFail) when z_eff in [0.5, 10] does not bracket it.
double find_zeff(double target_ip, int ell, double r_c, const RadialGrid& grid,
                 CutShape shape = CutShape::kHard);

/// psi(r, theta) = sum_l coeffs_l(r)/r Y_l0(theta); coefficients stored l-major.
struct PartialWaveFunction {
  RadialGrid grid;
  int l_max = 0;
  std::vector<cplx> coeffs;

  PartialWaveFunction() = default;
  PartialWaveFunction(const RadialGrid& grid, int l_max);

  /// A single partial wave `ell` initialized from a real radial function.
  static PartialWaveFunction from_radial(const RadialGrid& grid, int l_max, int ell,
                                         std::span<const double> u);

  std::span<cplx> wave(int ell);
  std::span<const cplx> wave(int ell) const;
  double norm() const;
  double norm(int ell) const;

  /// Checkpoint: one text header line, then the coefficients as raw doubles.
  void save(std::ostream& os) const;
  static PartialWaveFunction load(std::istream& is);
};

struct PropagationOptions {
  double dt = 0.025;
  bool absorber = true;
  /// Propagation end time; defaults to the end of the field span.
  double t_final = -1.0;
  /// Called every `progress_every` steps with (time, norm).
  std::function<void(double, double)> progress;
  int progress_every = 2000;
};

struct PropagationResult {
  PartialWaveFunction wavefunction;
  double absorbed_norm = 0.0;
  int steps = 0;
  double max_step_norm_change = 0.0;
};

/// Strang-split Crank-Nicolson propagation from t = 0: half-step dipole coupling
/// (2x2 Cayley rotations of adjacent l pairs, even then odd pairs), full-step
/// tridiagonal atomic CN per l, mirrored half-step coupling; then the
/// cos^(1/8) absorber beyond mask_start * r_max.
/// Throws Error(kUnstable) if the norm grows by more than 1e-6 in a step.
PropagationResult propagate(PartialWaveFunction initial, const CutCoulomb& potential,
                            const Field& field, const PropagationOptions& options = {});

/// Energy-normalized regular continuum solution of the discretized radial
/// equation, with its phase shift relative to the free (V = 0) solution.
struct ContinuumWave {
  std::vector<double> u;
  double phase_shift = 0.0;
};

ContinuumWave continuum_wave(const CutCoulomb& potential, int ell, double energy,
                             const RadialGrid& grid);

/// Partial-wave amplitudes c_l(E) = (-i)^l e^{i delta_l} <u_El|psi_l> after the
/// bound components of every l have been projected out.
struct ContinuumProjection {
  std::vector<double> energies;
  int l_max = 0;
  std::vector<cplx> amplitudes;  // [energy][l]
  double bound_norm = 0.0;       // population removed with the bound states
  double ionized_norm = 0.0;     // norm left after removal
  double absorbed_norm = 0.0;
  std::vector<std::string> warnings;

  /// |sum_l c_l Y_l0(theta)|^2 / sqrt(2E): momentum-space density d^3P/dp^3.
  SpectrumGrid spectrum(double theta, StateKind initial_state) const;
};

ContinuumProjection project_continuum(const PartialWaveFunction& psi, const CutCoulomb& potential,
                                      std::span<const double> energies,
                                      double absorbed_norm = 0.0);

SpectrumGrid photoelectron_spectrum(const PartialWaveFunction& psi, const CutCoulomb& potential,
                                    std::span<const double> energies, double theta,
                                    StateKind initial_state, double absorbed_norm = 0.0);

}  // namespace strongfield
