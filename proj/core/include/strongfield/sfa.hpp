#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "strongfield/field.hpp"
#include "strongfield/quadrature.hpp"
#include "strongfield/spectrum.hpp"
#include "strongfield/states.hpp"

namespace strongfield {

/// Conjugate Volkov phase e^{+iS_p(t)} and the plane-wave momentum of the Volkov
/// bra: p in velocity gauge, p - eA(t) in length gauge.
struct VolkovBra {
  cplx phase;
  Vec3 momentum;
};

VolkovBra volkov_bra_factor(const Vec3& p, double t, Gauge gauge, const Field& field);

/// Direct time quadrature of the SFA amplitude over the field support [0, T].
///
/// Two representations are available:
///  - form-factor:  M = -i int dt e^{i[S_p + I_p t]} <k(t)|V|0>
///  - interaction:  M = -i int dt e^{i[S_p + I_p t]} <k(t)|H_I(t)|0>
/// On a finite window they differ by the boundary term
///   B = [<k(t)|0> e^{i[S_p(t) + I_p t]}]_0^T,   M_interaction = M_form - B.
/// Because H_I vanishes outside the pulse, M_interaction is the full-time
/// amplitude; `amplitude()` returns it (computed as M_form - B).
class SfaIntegrator {
 public:
  explicit SfaIntegrator(Field field, QuadratureSpec quad = {});

  cplx amplitude_form_factor(const Vec3& p, Gauge gauge, const BoundStateModel& state) const;
  cplx amplitude_interaction_form(const Vec3& p, Gauge gauge, const BoundStateModel& state) const;
  cplx boundary_term(const Vec3& p, Gauge gauge, const BoundStateModel& state) const;
  cplx amplitude(const Vec3& p, Gauge gauge, const BoundStateModel& state) const;

  const Field& field() const { return field_; }
  const QuadratureSpec& quadrature() const { return quad_; }

 private:
  struct TimeTable {
    std::vector<double> t, w, a, e, int_a, int_a2;
  };
  enum class Integrand { kFormFactor, kInteraction };

  std::shared_ptr<const TimeTable> table(int panels) const;
  cplx integrate(const TimeTable& tab, const Vec3& p, Gauge gauge, const BoundStateModel& state,
                 Integrand kind, double* mass = nullptr) const;
  cplx converge(const Vec3& p, Gauge gauge, const BoundStateModel& state, Integrand kind,
                cplx offset) const;

  Field field_;
  QuadratureSpec quad_;
  GaussLegendre rule_;
  int cycles_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::shared_ptr<const TimeTable>> cache_;
};

cplx amplitude_form_factor(const Vec3& p, Gauge gauge, const BoundStateModel& state,
                           const PulseParams& pulse, const QuadratureSpec& quad = {});
cplx amplitude_interaction_form(const Vec3& p, Gauge gauge, const BoundStateModel& state,
                                const PulseParams& pulse, const QuadratureSpec& quad = {});

struct SfaOptions {
  QuadratureSpec quad;
  /// Report the full-time amplitude (form factor minus the window boundary term).
  /// When false the raw windowed form-factor integral is tabulated.
  bool boundary_corrected = true;
};

/// |M_p|^2 for p_i = sqrt(2 E_i) (sin theta, 0, cos theta).
SpectrumGrid spectrum(const BoundStateModel& state, Gauge gauge, const PulseParams& pulse,
                      std::span<const double> energies, double theta, const SfaOptions& options = {});

}  // namespace strongfield
