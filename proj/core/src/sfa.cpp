#include "strongfield/sfa.hpp"

#include <cmath>
#include <sstream>

#include "parallel.hpp"
#include "strongfield/error.hpp"

namespace strongfield {

namespace {

constexpr cplx kI{0.0, 1.0};

}  // namespace

VolkovBra volkov_bra_factor(const Vec3& p, double t, Gauge gauge, const Field& field) {
  VolkovBra out;
  out.phase = std::exp(kI * field.action(p, t));
  out.momentum = p;
  if (gauge == Gauge::kLength) out.momentum.z -= kElectronCharge * field.vector_potential(t);
  return out;
}

SfaIntegrator::SfaIntegrator(Field field, QuadratureSpec quad)
    : field_(std::move(field)), quad_(quad), rule_(quad.order), cycles_(1) {
  quad_.validate();
  const double span = field_.t_end() - field_.t_begin();
  cycles_ = std::max(1, static_cast<int>(std::ceil(span * field_.omega() / (2.0 * kPi) - 1e-9)));
}

std::shared_ptr<const SfaIntegrator::TimeTable> SfaIntegrator::table(int panels) const {
  std::lock_guard lock(cache_mutex_);
  if (auto it = cache_.find(panels); it != cache_.end()) return it->second;

  auto rule = composite_gauss_legendre(field_.t_begin(), field_.t_end(), panels, rule_);
  auto tab = std::make_shared<TimeTable>();
  const std::size_t n = rule.nodes.size();
  tab->t = std::move(rule.nodes);
  tab->w = std::move(rule.weights);
  tab->a.resize(n);
  tab->e.resize(n);
  tab->int_a.resize(n);
  tab->int_a2.resize(n);
  const auto& series = field_.series();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = tab->t[i];
    tab->a[i] = series.value(t).real();
    tab->e[i] = -series.derivative(t).real();
    tab->int_a[i] = series.integral(t).real();
    tab->int_a2[i] = series.integral_of_square(t).real();
  }
  cache_.emplace(panels, tab);
  return tab;
}

cplx SfaIntegrator::integrate(const TimeTable& tab, const Vec3& p, Gauge gauge,
                              const BoundStateModel& state, Integrand kind, double* mass) const {
  const double p2 = p.norm2();
  cplx sum = 0.0;
  double abs_sum = 0.0;
  for (std::size_t i = 0; i < tab.t.size(); ++i) {
    const double t = tab.t[i];
    const double phase = 0.5 * (p2 * t + 2.0 * p.z * tab.int_a[i] + tab.int_a2[i]) + state.ip * t;
    const cplx volkov = std::polar(1.0, phase);
    Vec3 k = p;
    if (gauge == Gauge::kLength) k.z -= kElectronCharge * tab.a[i];

    cplx matrix_element;
    if (kind == Integrand::kFormFactor) {
      matrix_element = form_factor(k, state);
    } else if (gauge == Gauge::kLength) {
      // -e r.E(t) with <k|z|0> = i d<k|0>/dk_z
      const cplx dipole = kI * momentum_wavefunction_gradient(k, state).z;
      matrix_element = -kElectronCharge * tab.e[i] * dipole;
    } else {
      // -(e/m) p.A + e^2 A^2 / 2m acting on the plane-wave bra
      const double a = tab.a[i];
      const double coupling = -kElectronCharge * p.z * a + 0.5 * a * a;
      matrix_element = coupling * momentum_wavefunction(k, state);
    }
    const cplx term = tab.w[i] * volkov * matrix_element;
    sum += term;
    abs_sum += std::abs(term);
  }
  if (mass) *mass = abs_sum;
  return -kI * sum;
}

cplx SfaIntegrator::converge(const Vec3& p, Gauge gauge, const BoundStateModel& state,
                             Integrand kind, cplx offset) const {
  int per_cycle = quad_.panels_per_cycle;
  double mass = 0.0;
  cplx previous = integrate(*table(per_cycle * cycles_), p, gauge, state, kind, &mass) + offset;
  while (per_cycle * 2 <= quad_.max_panels_per_cycle) {
    per_cycle *= 2;
    const cplx current = integrate(*table(per_cycle * cycles_), p, gauge, state, kind, &mass) + offset;
    const double a = std::norm(previous);
    const double b = std::norm(current);
    const double scale = std::max(a, b);
    if (scale < 1e-300 || std::abs(b - a) <= quad_.rel_tol * scale) return current;
    // Amplitudes that cancel down to rounding level of the integrand cannot
    // meet a relative test; agreement at that level is all there is to ask.
    if (std::abs(current - previous) <= 1e-12 * (mass + std::abs(offset))) return current;
    previous = current;
  }
  std::ostringstream msg;
  msg << "SFA time quadrature did not converge at " << quad_.max_panels_per_cycle
      << " panels per cycle (p = " << p.x << ", " << p.y << ", " << p.z << ")";
  throw Error(ErrorCode::kNonConverged, msg.str());
}

cplx SfaIntegrator::amplitude_form_factor(const Vec3& p, Gauge gauge,
                                          const BoundStateModel& state) const {
  return converge(p, gauge, state, Integrand::kFormFactor, 0.0);
}

cplx SfaIntegrator::amplitude_interaction_form(const Vec3& p, Gauge gauge,
                                               const BoundStateModel& state) const {
  return converge(p, gauge, state, Integrand::kInteraction, 0.0);
}

cplx SfaIntegrator::boundary_term(const Vec3& p, Gauge gauge, const BoundStateModel& state) const {
  auto bracket = [&](double t) {
    CVec3 k = p;
    if (gauge == Gauge::kLength) k.z -= kElectronCharge * field_.series().value(t);
    const cplx phase = field_.action(p, cplx(t)) + state.ip * t;
    return momentum_wavefunction(k, state) * std::exp(kI * phase);
  };
  return bracket(field_.t_end()) - bracket(field_.t_begin());
}

cplx SfaIntegrator::amplitude(const Vec3& p, Gauge gauge, const BoundStateModel& state) const {
  return converge(p, gauge, state, Integrand::kFormFactor, -boundary_term(p, gauge, state));
}

cplx amplitude_form_factor(const Vec3& p, Gauge gauge, const BoundStateModel& state,
                           const PulseParams& pulse, const QuadratureSpec& quad) {
  return SfaIntegrator(Field(pulse), quad).amplitude_form_factor(p, gauge, state);
}

cplx amplitude_interaction_form(const Vec3& p, Gauge gauge, const BoundStateModel& state,
                                const PulseParams& pulse, const QuadratureSpec& quad) {
  return SfaIntegrator(Field(pulse), quad).amplitude_interaction_form(p, gauge, state);
}

SpectrumGrid spectrum(const BoundStateModel& state, Gauge gauge, const PulseParams& pulse,
                      std::span<const double> energies, double theta, const SfaOptions& options) {
  const SfaIntegrator sfa(Field(pulse), options.quad);
  SpectrumGrid out;
  out.energies.assign(energies.begin(), energies.end());
  out.values.assign(energies.size(), 0.0);
  out.theta = theta;
  out.method = Method::kSfaDirect;
  out.gauge = gauge;
  out.state_kind = state.kind;

  detail::parallel_for(static_cast<std::ptrdiff_t>(energies.size()), [&](std::ptrdiff_t i) {
    if (!(energies[i] > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "spectrum energies must be positive");
    }
    const Vec3 p = Vec3::polar(std::sqrt(2.0 * energies[i]), theta);
    const cplx m = options.boundary_corrected ? sfa.amplitude(p, gauge, state)
                                              : sfa.amplitude_form_factor(p, gauge, state);
    out.values[i] = std::norm(m);
  });
  out.validate();
  return out;
}

}  // namespace strongfield
