#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "strongfield/error.hpp"
#include "strongfield/tdse.hpp"

namespace strongfield {

namespace {

constexpr const char* kCheckpointMagic = "strongfield-pwf";
constexpr int kCheckpointVersion = 1;

double dipole_coupling(int ell) {
  // <l|cos theta|l+1> for m = 0
  return (ell + 1.0) / std::sqrt((2.0 * ell + 1.0) * (2.0 * ell + 3.0));
}

// Crank-Nicolson for one partial wave: (M + i tau K) psi' = (M - i tau K) psi, tau = dt/2.
// The left-hand matrix never changes, so its Thomas factors are kept.
class AtomicStep {
 public:
  AtomicStep(const RadialHamiltonian& ham, double dt) : n_(ham.size()) {
    const cplx it(0.0, 0.5 * dt);
    lhs_lower_.resize(n_);
    rhs_diag_.resize(n_);
    rhs_lower_.resize(n_);
    rhs_upper_.resize(n_);
    c_prime_.resize(n_);
    inv_pivot_.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx lhs_diag = ham.m_diag[j] + it * ham.k_diag[j];
      const cplx lhs_upper = ham.m_off + it * ham.k_upper[j];
      lhs_lower_[j] = ham.m_off + it * ham.k_lower[j];
      rhs_diag_[j] = ham.m_diag[j] - it * ham.k_diag[j];
      rhs_lower_[j] = ham.m_off - it * ham.k_lower[j];
      rhs_upper_[j] = ham.m_off - it * ham.k_upper[j];
      const cplx pivot = j == 0 ? lhs_diag : lhs_diag - lhs_lower_[j] * c_prime_[j - 1];
      inv_pivot_[j] = 1.0 / pivot;
      c_prime_[j] = j + 1 < n_ ? lhs_upper * inv_pivot_[j] : 0.0;
    }
  }

  // Returns sum_j |psi_j|^2 of the updated wave.
  double apply(std::span<cplx> psi, std::vector<cplx>& work) const {
    work.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      cplx s = rhs_diag_[j] * psi[j];
      if (j > 0) s += rhs_lower_[j] * psi[j - 1];
      if (j + 1 < n_) s += rhs_upper_[j] * psi[j + 1];
      work[j] = s;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const cplx prev = j > 0 ? work[j - 1] : 0.0;
      work[j] = (work[j] - (j > 0 ? lhs_lower_[j] * prev : 0.0)) * inv_pivot_[j];
    }
    psi[n_ - 1] = work[n_ - 1];
    double norm = std::norm(psi[n_ - 1]);
    for (std::size_t j = n_ - 1; j-- > 0;) {
      psi[j] = work[j] - c_prime_[j] * psi[j + 1];
      norm += std::norm(psi[j]);
    }
    return norm;
  }

 private:
  std::size_t n_;
  std::vector<cplx> lhs_lower_, rhs_diag_, rhs_lower_, rhs_upper_, c_prime_, inv_pivot_;
};

}  // namespace

PartialWaveFunction::PartialWaveFunction(const RadialGrid& g, int lmax) : grid(g), l_max(lmax) {
  grid.validate();
  if (l_max < 0) throw Error(ErrorCode::kInvalidArgument, "l_max must be non-negative");
  coeffs.assign(static_cast<std::size_t>(l_max + 1) * grid.n_r, cplx{});
}

PartialWaveFunction PartialWaveFunction::from_radial(const RadialGrid& grid, int l_max, int ell,
                                                     std::span<const double> u) {
  if (ell < 0 || ell > l_max) throw Error(ErrorCode::kInvalidArgument, "ell outside [0, l_max]");
  if (u.size() != static_cast<std::size_t>(grid.n_r)) {
    throw Error(ErrorCode::kInvalidArgument, "radial function does not match the grid");
  }
  PartialWaveFunction psi(grid, l_max);
  auto w = psi.wave(ell);
  for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j];
  return psi;
}

std::span<cplx> PartialWaveFunction::wave(int ell) {
  return {coeffs.data() + static_cast<std::size_t>(ell) * grid.n_r,
          static_cast<std::size_t>(grid.n_r)};
}

std::span<const cplx> PartialWaveFunction::wave(int ell) const {
  return {coeffs.data() + static_cast<std::size_t>(ell) * grid.n_r,
          static_cast<std::size_t>(grid.n_r)};
}

double PartialWaveFunction::norm(int ell) const {
  double s = 0.0;
  for (cplx c : wave(ell)) s += std::norm(c);
  return s * grid.dr;
}

double PartialWaveFunction::norm() const {
  double s = 0.0;
  for (cplx c : coeffs) s += std::norm(c);
  return s * grid.dr;
}

void PartialWaveFunction::save(std::ostream& os) const {
  os.precision(17);
  os << kCheckpointMagic << " v" << kCheckpointVersion << " dr=" << grid.dr << " n_r=" << grid.n_r
     << " l_max=" << l_max << " mask_start=" << grid.mask_start << '\n';
  os.write(reinterpret_cast<const char*>(coeffs.data()),
           static_cast<std::streamsize>(coeffs.size() * sizeof(cplx)));
  if (!os) throw Error(ErrorCode::kIo, "failed to write wavefunction checkpoint");
}

PartialWaveFunction PartialWaveFunction::load(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw Error(ErrorCode::kIo, "empty checkpoint");
  std::istringstream in(header);
  std::string magic, version, dr, n_r, l_max, mask;
  in >> magic >> version >> dr >> n_r >> l_max >> mask;
  if (magic != kCheckpointMagic || version != "v" + std::to_string(kCheckpointVersion)) {
    throw Error(ErrorCode::kIo, "unrecognized checkpoint header: " + header);
  }
  auto value = [&](const std::string& field, const std::string& key) {
    if (field.rfind(key + "=", 0) != 0) throw Error(ErrorCode::kIo, "bad checkpoint field " + field);
    return field.substr(key.size() + 1);
  };
  RadialGrid grid;
  grid.dr = std::stod(value(dr, "dr"));
  grid.n_r = std::stoi(value(n_r, "n_r"));
  grid.mask_start = std::stod(value(mask, "mask_start"));
  PartialWaveFunction psi(grid, std::stoi(value(l_max, "l_max")));
  is.read(reinterpret_cast<char*>(psi.coeffs.data()),
          static_cast<std::streamsize>(psi.coeffs.size() * sizeof(cplx)));
  if (!is) throw Error(ErrorCode::kIo, "truncated checkpoint");
  return psi;
}

PropagationResult propagate(PartialWaveFunction psi, const CutCoulomb& potential,
                            const Field& field, const PropagationOptions& options) {
  const RadialGrid& grid = psi.grid;
  grid.validate();
  if (!(options.dt > 0.0)) throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  const double t_final = options.t_final >= 0.0 ? options.t_final : field.t_end();
  const int steps = static_cast<int>(std::ceil(t_final / options.dt - 1e-9));
  const double dt = steps > 0 ? t_final / steps : options.dt;
  const int n_l = psi.l_max + 1;
  const std::size_t n_r = static_cast<std::size_t>(grid.n_r);

  std::vector<AtomicStep> atomic;
  atomic.reserve(static_cast<std::size_t>(n_l));
  for (int l = 0; l < n_l; ++l) atomic.emplace_back(RadialHamiltonian(grid, potential, l), dt);

  std::vector<double> r(n_r);
  for (std::size_t j = 0; j < n_r; ++j) r[j] = grid.r(static_cast<int>(j));

  std::vector<double> mask(n_r, 1.0);
  const double r_mask = grid.mask_start * grid.r_max();
  std::size_t mask_begin = n_r;
  for (std::size_t j = 0; j < n_r; ++j) {
    if (r[j] > r_mask) {
      mask_begin = std::min(mask_begin, j);
      const double x = std::min(1.0, (r[j] - r_mask) / (grid.r_max() - r_mask));
      mask[j] = std::pow(std::cos(0.5 * kPi * x), 0.125);
    }
  }

  // H_I = -e E(t) z = E(t) r cos(theta). Each adjacent (l, l+1) block is a 2x2
  // rotation per radial point; the Cayley form keeps it exactly unitary.
  auto couple = [&](double e_field, double tau, int parity) {
    const double e_coupling = -kElectronCharge * e_field;
    if (e_coupling == 0.0) return;
    for (int l = parity; l + 1 < n_l; l += 2) {
      auto a = psi.wave(l);
      auto b = psi.wave(l + 1);
      const double c = dipole_coupling(l) * e_coupling * 0.5 * tau;
      for (std::size_t j = 0; j < n_r; ++j) {
        // [a, b] <- [[d, -i o], [-i o, d]] [a, b] with real d and o.
        const double alpha = c * r[j];
        const double inv = 1.0 / (1.0 + alpha * alpha);
        const double d = (1.0 - alpha * alpha) * inv;
        const double o = 2.0 * alpha * inv;
        const double ar = a[j].real(), ai = a[j].imag();
        const double br = b[j].real(), bi = b[j].imag();
        a[j] = {d * ar + o * bi, d * ai - o * br};
        b[j] = {d * br + o * ai, d * bi - o * ar};
      }
    }
  };

  PropagationResult result;
  std::vector<std::vector<cplx>> work(static_cast<std::size_t>(n_l));
  std::vector<double> wave_norm(static_cast<std::size_t>(n_l), 0.0);
  double norm = psi.norm();
  for (int step = 0; step < steps; ++step) {
    const double t_mid = (step + 0.5) * dt;
    const double e_mid = field.electric_field(t_mid);

    couple(e_mid, 0.5 * dt, 0);
    couple(e_mid, 0.5 * dt, 1);
    detail::parallel_for(n_l, [&](std::ptrdiff_t l) {
      const auto k = static_cast<std::size_t>(l);
      wave_norm[k] = atomic[k].apply(psi.wave(static_cast<int>(l)), work[k]);
    });
    couple(e_mid, 0.5 * dt, 1);
    couple(e_mid, 0.5 * dt, 0);

    // The Cayley rotations preserve the norm exactly, so the atomic sweep's
    // norm is the end-of-step norm up to rounding.
    double unitary_norm = 0.0;
    for (double x : wave_norm) unitary_norm += x;
    unitary_norm *= grid.dr;
    const double change = unitary_norm - norm;
    result.max_step_norm_change = std::max(result.max_step_norm_change, std::abs(change));
    if (change > 1e-6 * std::max(norm, 1e-300) || !std::isfinite(unitary_norm)) {
      std::ostringstream msg;
      msg << "norm grew by " << change << " at step " << step << " (t=" << t_mid << ")";
      throw Error(ErrorCode::kUnstable, msg.str());
    }
    norm = unitary_norm;

    if (options.absorber && mask_begin < n_r) {
      double lost = 0.0;
      for (int l = 0; l < n_l; ++l) {
        auto w = psi.wave(l);
        for (std::size_t j = mask_begin; j < n_r; ++j) {
          const double before = std::norm(w[j]);
          w[j] *= mask[j];
          lost += before - std::norm(w[j]);
        }
      }
      lost *= grid.dr;
      result.absorbed_norm += lost;
      norm -= lost;
    }
    if (options.progress && options.progress_every > 0 && (step + 1) % options.progress_every == 0) {
      options.progress((step + 1) * dt, norm);
    }
  }
  result.steps = steps;
  result.wavefunction = std::move(psi);
  return result;
}

}  // namespace strongfield
