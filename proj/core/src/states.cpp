#include "strongfield/states.hpp"

#include <cmath>

#include "strongfield/error.hpp"
#include "strongfield/field.hpp"

namespace strongfield {

std::string_view to_string(StateKind kind) {
  return kind == StateKind::kSEven ? "s" : "p";
}

BoundStateModel BoundStateModel::make(StateKind kind, double ip) {
  if (!(ip > 0.0) || !std::isfinite(ip)) {
    throw Error(ErrorCode::kInvalidArgument, "ionization potential must be positive");
  }
  BoundStateModel s;
  s.kind = kind;
  s.ip = ip;
  s.kappa = std::sqrt(2.0 * ip);
  return s;
}

double BoundStateModel::p_normalization() const {
  return std::sqrt(24.0 * kappa * kappa * kappa) / kPi;
}

cplx momentum_wavefunction(const CVec3& q, const BoundStateModel& state) {
  const double k2 = state.kappa * state.kappa;
  const cplx d = q.dot(q) + k2;
  if (state.kind == StateKind::kSEven) return std::sqrt(state.kappa) / (kPi * d);
  return state.p_normalization() * q.dot(state.axis) / (d * d);
}

CVec3 momentum_wavefunction_gradient(const CVec3& q, const BoundStateModel& state) {
  const double k2 = state.kappa * state.kappa;
  const cplx d = q.dot(q) + k2;
  if (state.kind == StateKind::kSEven) {
    // d/dq [c / d] = -2 c q / d^2
    return q * (-2.0 * std::sqrt(state.kappa) / (kPi * d * d));
  }
  const double n = state.p_normalization();
  const cplx qa = q.dot(state.axis);
  // N [axis / d^2 - 4 (q.axis) q / d^3]
  return CVec3(state.axis) * (n / (d * d)) - q * (4.0 * n * qa / (d * d * d));
}

cplx form_factor(const CVec3& q, const BoundStateModel& state) {
  if (state.kind == StateKind::kSEven) return -std::sqrt(state.kappa) / (2.0 * kPi);
  const double k2 = state.kappa * state.kappa;
  return form_factor_numerator(q, state) / (q.dot(q) + k2);
}

cplx form_factor_numerator(const CVec3& q, const BoundStateModel& state) {
  if (state.kind == StateKind::kSEven) {
    const double k2 = state.kappa * state.kappa;
    return -std::sqrt(state.kappa) / (2.0 * kPi) * (q.dot(q) + k2);
  }
  return -0.5 * state.p_normalization() * q.dot(state.axis);
}

}  // namespace strongfield
