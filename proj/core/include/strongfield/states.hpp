#pragma once

#include <string_view>

#include "strongfield/vec.hpp"

namespace strongfield {

enum class StateKind { kSEven, kPOdd };

std::string_view to_string(StateKind kind);

/// Short-range initial state with ionization potential `ip`.
///
/// Momentum-space wave functions (unit normalized, real conventions):
///   s:  <q|0> = sqrt(kappa) / (pi (q^2 + kappa^2))
///   p:  <q|0> = N (q.axis) / (q^2 + kappa^2)^2,   N = sqrt(24 kappa^3) / pi
/// The p lobe is aligned with the polarization axis (m = 0).
struct BoundStateModel {
  StateKind kind = StateKind::kSEven;
  double ip = 0.5;
  double kappa = 1.0;
  Vec3 axis{0.0, 0.0, 1.0};

  /// kappa = sqrt(2 ip). Throws Error(kInvalidArgument) for ip <= 0.
  static BoundStateModel make(StateKind kind, double ip);

  double p_normalization() const;
};

cplx momentum_wavefunction(const CVec3& q, const BoundStateModel& state);

/// Gradient of <q|0> with respect to q; <q|r|0> = i grad_q <q|0>.
CVec3 momentum_wavefunction_gradient(const CVec3& q, const BoundStateModel& state);

/// <q|V|0> = -(q^2 + kappa^2)/2 <q|0>, written in closed form so the
/// (q^2 + kappa^2) factor cancels analytically.
///   s:  -sqrt(kappa) / (2 pi)
///   p:  -N (q.axis) / (2 (q^2 + kappa^2))
/// Complex q is the analytic continuation of the same rational expression.
cplx form_factor(const CVec3& q, const BoundStateModel& state);

/// Numerator h(q) of the p-state form factor h / (q^2 + kappa^2), i.e. -N (q.axis)/2.
/// Its value at a saddle point is the residue strength of the pole there.
/// For the s state this is the (constant) form factor times (q^2 + kappa^2) and is
/// not used.
cplx form_factor_numerator(const CVec3& q, const BoundStateModel& state);

}  // namespace strongfield
