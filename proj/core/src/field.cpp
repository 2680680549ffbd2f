#include "strongfield/field.hpp"

#include <cmath>
#include <sstream>

#include "strongfield/error.hpp"

namespace strongfield {

namespace {

// int_0^t cos(freq tau + phase) dtau
cplx integral_cos(double freq, double phase, cplx t) {
  if (freq == 0.0) return t * std::cos(phase);
  return (std::sin(freq * t + phase) - std::sin(phase)) / freq;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kNonConverged: return "NON_CONVERGED";
    case ErrorCode::kEmptyResult: return "EMPTY_RESULT";
    case ErrorCode::kSaddleCoalescence: return "SADDLE_COALESCENCE";
    case ErrorCode::kNotBound: return "NOT_BOUND";
    case ErrorCode::kBracketFail: return "BRACKET_FAIL";
    case ErrorCode::kUnstable: return "UNSTABLE";
    case ErrorCode::kNoPeaks: return "NO_PEAKS";
    case ErrorCode::kConfig: return "CONFIG";
    case ErrorCode::kIo: return "IO";
  }
  return "UNKNOWN";
}

void PulseParams::validate() const {
  std::ostringstream msg;
  if (!(e0 >= 0.0) || !std::isfinite(e0)) msg << "e0 must be non-negative (got " << e0 << "); ";
  if (!(omega > 0.0) || !std::isfinite(omega)) msg << "omega must be positive (got " << omega << "); ";
  if (n_cycles < 2) msg << "n_cycles must be >= 2 (got " << n_cycles << "); ";
  if (!std::isfinite(cep)) msg << "cep must be finite; ";
  if (!msg.str().empty()) throw Error(ErrorCode::kInvalidArgument, "invalid pulse: " + msg.str());
}

cplx TrigSeries::value(cplx t) const {
  cplx sum = offset;
  for (const auto& term : terms) sum += term.amp * std::sin(term.freq * t + term.phase);
  return sum;
}

cplx TrigSeries::derivative(cplx t) const {
  cplx sum = 0.0;
  for (const auto& term : terms) sum += term.amp * term.freq * std::cos(term.freq * t + term.phase);
  return sum;
}

cplx TrigSeries::integral(cplx t) const {
  cplx sum = offset * t;
  for (const auto& term : terms) {
    sum += term.amp * (std::cos(term.phase) - std::cos(term.freq * t + term.phase)) / term.freq;
  }
  return sum;
}

cplx TrigSeries::integral_of_square(cplx t) const {
  cplx sum = offset * offset * t;
  for (const auto& term : terms) {
    sum += 2.0 * offset * term.amp * (std::cos(term.phase) - std::cos(term.freq * t + term.phase)) /
           term.freq;
  }
  // sin a sin b = [cos(a - b) - cos(a + b)] / 2
  for (std::size_t j = 0; j < terms.size(); ++j) {
    for (std::size_t k = j; k < terms.size(); ++k) {
      const auto& a = terms[j];
      const auto& b = terms[k];
      const double weight = (j == k ? 0.5 : 1.0) * a.amp * b.amp;
      sum += weight * (integral_cos(a.freq - b.freq, a.phase - b.phase, t) -
                       integral_cos(a.freq + b.freq, a.phase + b.phase, t));
    }
  }
  return sum;
}

Field::Field(TrigSeries a, double omega, double t_end, bool windowed)
    : a_(std::move(a)), omega_(omega), t_end_(t_end), windowed_(windowed) {}

Field::Field(const PulseParams& pulse) : omega_(pulse.omega), t_end_(0.0), windowed_(true) {
  pulse.validate();
  t_end_ = pulse.duration();
  // sin^2(Wt/2) cos(wt+phi) = [cos(wt+phi) - cos((w+W)t+phi)/2 - cos((w-W)t+phi)/2] / 2,
  // W = w/n. Integrating term by term gives A = -int_0^t E.
  const double env = pulse.omega / pulse.n_cycles;
  const double freqs[3] = {pulse.omega, pulse.omega + env, pulse.omega - env};
  const double weights[3] = {1.0, -0.5, -0.5};
  a_.terms.clear();
  double offset = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double amp = -0.5 * pulse.e0 * weights[k] / freqs[k];
    a_.terms.push_back({amp, freqs[k], pulse.cep});
    offset -= amp * std::sin(pulse.cep);
  }
  a_.offset = offset;
}

Field Field::monochromatic(double amplitude, double omega, double t_end) {
  if (!(omega > 0.0) || !(t_end > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "monochromatic field needs omega > 0 and t_end > 0");
  }
  TrigSeries a;
  a.terms.push_back({amplitude, omega, kPi / 2.0});
  return Field(std::move(a), omega, t_end, false);
}

double Field::vector_potential(double t) const {
  if (windowed_ && (t <= 0.0 || t >= t_end_)) return 0.0;
  return a_.value(t).real();
}

cplx Field::vector_potential(cplx t) const { return a_.value(t); }

double Field::electric_field(double t) const {
  if (windowed_ && (t <= 0.0 || t >= t_end_)) return 0.0;
  return -a_.derivative(t).real();
}

cplx Field::electric_field(cplx t) const { return -a_.derivative(t); }

cplx Field::action_closed_form(const Vec3& p, cplx t) const {
  // (p - eA)^2 = p^2 + 2 p_z A + A^2 with e = -1
  return 0.5 * (p.norm2() * t + 2.0 * p.z * a_.integral(t) + a_.integral_of_square(t));
}

cplx Field::action(const Vec3& p, double t) const {
  if (windowed_) {
    if (t <= 0.0) return 0.5 * p.norm2() * t;
    if (t >= t_end_) return action_closed_form(p, t_end_) + 0.5 * p.norm2() * (t - t_end_);
  }
  return action_closed_form(p, t);
}

cplx Field::action(const Vec3& p, cplx t) const { return action_closed_form(p, t); }

double electric_field(double t, const PulseParams& pulse) { return Field(pulse).electric_field(t); }
double vector_potential(double t, const PulseParams& pulse) { return Field(pulse).vector_potential(t); }
cplx vector_potential(cplx t, const PulseParams& pulse) { return Field(pulse).vector_potential(t); }
cplx action(const Vec3& p, cplx t, const PulseParams& pulse) { return Field(pulse).action(p, t); }

}  // namespace strongfield
