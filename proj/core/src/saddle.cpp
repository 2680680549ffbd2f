#include "strongfield/saddle.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "strongfield/error.hpp"

namespace strongfield {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kCoalescenceTol = 1e-8;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

CVec3 kinetic_momentum(const Vec3& p, const Field& field, cplx t) {
  CVec3 v = p;
  v.z -= kElectronCharge * field.vector_potential(t);
  return v;
}

}  // namespace

std::vector<SaddleSolution> solve_saddles(const Vec3& p, const Field& field,
                                          const BoundStateModel& state,
                                          const SaddleOptions& options) {
  const double omega = field.omega();
  const double quarter = 0.5 * kPi / omega;
  const double t_end = field.t_end();
  const double two_ip = 2.0 * state.ip;

  std::vector<cplx> roots;
  const int n_real = static_cast<int>(std::floor(t_end / quarter + 1e-9));
  for (int i = 0; i <= n_real; ++i) {
    for (double im : {0.2 / omega, 1.0 / omega}) {
      cplx t(i * quarter, im);
      bool ok = false;
      for (int iter = 0; iter < options.max_newton_iterations; ++iter) {
        const CVec3 v = kinetic_momentum(p, field, t);
        const cplx f = v.dot(v) + two_ip;
        const cplx df = 2.0 * kElectronCharge * field.electric_field(t) * v.z;
        if (!finite(f) || !finite(df) || df == 0.0) break;
        const cplx step = f / df;
        t -= step;
        if (!finite(t)) break;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(t))) {
          ok = true;
          break;
        }
      }
      if (!ok) continue;
      const CVec3 v = kinetic_momentum(p, field, t);
      if (!(std::abs(v.dot(v) + two_ip) < options.residual_tol)) continue;
      if (!(t.imag() > 0.0) || t.real() < 0.0 || t.real() > t_end) continue;
      const bool duplicate = std::any_of(roots.begin(), roots.end(), [&](cplx r) {
        return std::abs(r - t) < options.dedup_tol / omega;
      });
      if (!duplicate) roots.push_back(t);
    }
  }
  if (roots.empty()) {
    throw Error(ErrorCode::kEmptyResult, "no saddle point with Im t > 0 inside the field span");
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return a.real() < b.real(); });

  std::vector<SaddleSolution> out;
  out.reserve(roots.size());
  for (cplx t : roots) {
    SaddleSolution s;
    s.t_s = {t.real(), t.imag()};
    s.velocity = kinetic_momentum(p, field, t);
    s.residual = std::abs(s.velocity.dot(s.velocity) + two_ip);
    s.action_phase = field.action(p, t) + state.ip * t;
    s.curvature = kElectronCharge * field.electric_field(t) * s.velocity.z;
    s.prefactor = std::sqrt(2.0 * kPi * kI / s.curvature);
    s.form_factor_v = form_factor(p, state);
    if (state.kind == StateKind::kPOdd) {
      s.form_factor_l = form_factor_numerator(s.velocity, state);
      s.l_gauge_pole = true;
    } else {
      s.form_factor_l = form_factor(s.velocity, state);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<CVec3> saddle_velocities(std::span<const SaddleSolution> solutions) {
  std::vector<CVec3> out;
  out.reserve(solutions.size());
  for (const auto& s : solutions) out.push_back(s.velocity);
  return out;
}

cplx spa_amplitude(std::span<const SaddleSolution> solutions, Gauge gauge,
                   const BoundStateModel& state, const Field& field) {
  (void)state;
  cplx sum = 0.0;
  for (const auto& s : solutions) {
    const cplx e_dot_v = field.electric_field(s.t_s.value()) * s.velocity.z;
    if (std::abs(e_dot_v) < kCoalescenceTol) {
      throw Error(ErrorCode::kSaddleCoalescence,
                  "saddle points coalesce (|E(t_s).(p - eA(t_s))| below 1e-8)");
    }
    const cplx volkov = std::exp(kI * s.action_phase);
    if (gauge == Gauge::kLength && s.l_gauge_pole) {
      // f = (p - eA)^2 + kappa^2 = 2 Phi', so f'(t_s) = 2 Phi''(t_s).
      sum += kPi * s.form_factor_l * volkov / (2.0 * s.curvature);
    } else {
      const cplx v = gauge == Gauge::kLength ? s.form_factor_l : s.form_factor_v;
      sum += -kI * v * s.prefactor * volkov;
    }
  }
  return sum;
}

cplx spa_amplitude(const Vec3& p, Gauge gauge, const BoundStateModel& state, const Field& field) {
  const auto saddles = solve_saddles(p, field, state);
  return spa_amplitude(saddles, gauge, state, field);
}

SpectrumGrid spa_spectrum(const BoundStateModel& state, Gauge gauge, const PulseParams& pulse,
                          std::span<const double> energies, double theta) {
  const Field field(pulse);
  std::vector<double> values(energies.size(), 0.0);
  std::vector<char> flagged(energies.size(), 0);
  detail::parallel_for(static_cast<std::ptrdiff_t>(energies.size()), [&](std::ptrdiff_t i) {
    const Vec3 p = Vec3::polar(std::sqrt(2.0 * energies[i]), theta);
    try {
      values[i] = std::norm(spa_amplitude(p, gauge, state, field));
    } catch (const Error& err) {
      if (err.code() != ErrorCode::kSaddleCoalescence && err.code() != ErrorCode::kEmptyResult) throw;
      flagged[i] = 1;
    }
  });

  SpectrumGrid out;
  out.theta = theta;
  out.method = Method::kSfaSpa;
  out.gauge = gauge;
  out.state_kind = state.kind;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (flagged[i]) {
      out.flagged_energies.push_back(energies[i]);
    } else {
      out.energies.push_back(energies[i]);
      out.values.push_back(values[i]);
    }
  }
  out.validate();
  return out;
}

}  // namespace strongfield
