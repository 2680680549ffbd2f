#pragma once

#include <vector>

#include "strongfield/vec.hpp"

// Atomic units throughout: hbar = m = 1, electron charge e = -1. The field is
// linearly polarized along z, so p - eA(t) = p + A(t) z^.

namespace strongfield {

inline constexpr double kElectronCharge = -1.0;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHartreeEv = 27.211386;

/// Carrier/envelope description of a sin^2 pulse:
/// E(t) = e0 sin^2(omega t / 2n) cos(omega t + cep) on [0, T_p], zero elsewhere.
struct PulseParams {
  double e0 = 0.0834;
  double omega = 0.056;
  int n_cycles = 4;
  double cep = 0.0;

  double period() const { return 2.0 * kPi / omega; }
  double duration() const { return n_cycles * period(); }
  double ponderomotive_energy() const { return e0 * e0 / (4.0 * omega * omega); }

  /// Throws Error(kInvalidArgument). e0 == 0 is accepted as the field-free limit.
  void validate() const;
};

/// A(t) = offset + sum_k amp_k sin(freq_k t + phase_k): every field used here
/// (the sin^2 pulse and the monochromatic reference) is such a series, which
/// makes A, E and the Volkov action entire functions of complex time.
struct TrigSeries {
  struct Term {
    double amp;
    double freq;
    double phase;
  };
  double offset = 0.0;
  std::vector<Term> terms;

  cplx value(cplx t) const;
  cplx derivative(cplx t) const;
  /// Integral of the series from 0 to t.
  cplx integral(cplx t) const;
  /// Integral of the squared series from 0 to t.
  cplx integral_of_square(cplx t) const;
};

/// Linearly polarized laser field with closed-form A(t), E(t) = -dA/dt and
/// Volkov action S_p(t) = 1/2 int_0^t (p - eA)^2.
class Field {
 public:
  /// The sin^2 pulse. Real-time evaluation is zero outside [0, T_p]; complex-time
  /// evaluation uses the entire closed form.
  explicit Field(const PulseParams& pulse);

  /// A(t) = amplitude cos(omega t), unwindowed; [0, t_end] only sets the span
  /// used for saddle-point seeding.
  static Field monochromatic(double amplitude, double omega, double t_end);

  double vector_potential(double t) const;
  cplx vector_potential(cplx t) const;
  double electric_field(double t) const;
  cplx electric_field(cplx t) const;

  /// S_p(t) with the lower limit fixed at t = 0.
  cplx action(const Vec3& p, double t) const;
  cplx action(const Vec3& p, cplx t) const;

  double omega() const { return omega_; }
  double t_begin() const { return 0.0; }
  double t_end() const { return t_end_; }
  bool windowed() const { return windowed_; }
  const TrigSeries& series() const { return a_; }

 private:
  Field(TrigSeries a, double omega, double t_end, bool windowed);
  cplx action_closed_form(const Vec3& p, cplx t) const;

  TrigSeries a_;
  double omega_;
  double t_end_;
  bool windowed_;
};

double electric_field(double t, const PulseParams& pulse);
double vector_potential(double t, const PulseParams& pulse);
cplx vector_potential(cplx t, const PulseParams& pulse);
cplx action(const Vec3& p, cplx t, const PulseParams& pulse);

}  // namespace strongfield
