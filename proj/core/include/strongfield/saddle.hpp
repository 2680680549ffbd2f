#pragma once

#include <span>
#include <vector>

#include "strongfield/field.hpp"
#include "strongfield/spectrum.hpp"
#include "strongfield/states.hpp"

namespace strongfield {

struct ComplexInstant {
  double t_r = 0.0;
  double t_i = 0.0;
  cplx value() const { return {t_r, t_i}; }
};

/// A complex ionization time t_s solving (p - eA(t_s))^2 = -2 I_p.
struct SaddleSolution {
  ComplexInstant t_s;
  CVec3 velocity;      // p - eA(t_s)
  cplx action_phase;   // S_p(t_s) + I_p t_s
  cplx curvature;      // second time derivative of the phase: e E(t_s).(p - eA(t_s))
  cplx prefactor;      // sqrt(2 pi i / curvature), principal branch
  cplx form_factor_v;  // <p|V|0>
  /// <p - eA(t_s)|V|0>. For the p state the velocity sits exactly on the pole of the
  /// form factor, so this field holds the residue numerator -N (v.axis)/2 instead and
  /// `l_gauge_pole` is set.
  cplx form_factor_l;
  bool l_gauge_pole = false;
  double residual = 0.0;  // |(p - eA)^2 + 2 I_p|
};

struct SaddleOptions {
  int max_newton_iterations = 80;
  double residual_tol = 1e-9;
  /// Roots closer than dedup_tol / omega are treated as the same saddle.
  double dedup_tol = 1e-6;
};

/// Newton iteration with analytic derivative from a deterministic seed grid
/// (quarter-cycle steps in Re t over the field span, Im t in {0.2, 1}/omega).
/// Keeps roots with Im t_s > 0 and 0 <= Re t_s <= T, sorted by Re t_s.
/// Throws Error(kEmptyResult) when no root survives.
std::vector<SaddleSolution> solve_saddles(const Vec3& p, const Field& field,
                                          const BoundStateModel& state,
                                          const SaddleOptions& options = {});

std::vector<CVec3> saddle_velocities(std::span<const SaddleSolution> solutions);

/// Saddle-point amplitude sum_s V_s sqrt(2 pi i / Phi''_s) e^{i Phi_s} (times the
/// -i of the direct amplitude, so it approximates the same complex number).
/// For the p state in length gauge each saddle coincides with a simple pole of the
/// form factor; that contribution is the half-residue pi h(t_s) e^{i Phi_s} / f'(t_s),
/// with f = (p - eA)^2 + kappa^2.
/// Throws Error(kSaddleCoalescence) if |E(t_s).(p - eA(t_s))| < 1e-8 for any saddle.
cplx spa_amplitude(std::span<const SaddleSolution> solutions, Gauge gauge,
                   const BoundStateModel& state, const Field& field);
cplx spa_amplitude(const Vec3& p, Gauge gauge, const BoundStateModel& state, const Field& field);

/// Saddle-point spectrum; energies with coalescing or missing saddles are moved to
/// `flagged_energies` instead of being tabulated.
SpectrumGrid spa_spectrum(const BoundStateModel& state, Gauge gauge, const PulseParams& pulse,
                          std::span<const double> energies, double theta);

}  // namespace strongfield
