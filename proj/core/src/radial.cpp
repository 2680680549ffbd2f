#include <algorithm>
#include <cmath>
#include <sstream>

#include "strongfield/error.hpp"
#include "strongfield/tdse.hpp"

namespace strongfield {

double CutCoulomb::operator()(double r) const {
  if (r > r_c) return 0.0;
  const double v = -z_eff / r;
  return shape == CutShape::kContinuous ? v + z_eff / r_c : v;
}

void CutCoulomb::validate() const {
  if (!(z_eff > 0.0)) throw Error(ErrorCode::kInvalidArgument, "z_eff must be positive");
  if (!(r_c > 0.0)) throw Error(ErrorCode::kInvalidArgument, "r_c must be positive");
}

RadialGrid RadialGrid::from_extent(double dr, double r_max, double mask_start) {
  RadialGrid g;
  g.dr = dr;
  g.n_r = static_cast<int>(std::lround(r_max / dr));
  g.mask_start = mask_start;
  g.validate();
  return g;
}

void RadialGrid::validate() const {
  if (!(dr > 0.0)) throw Error(ErrorCode::kInvalidArgument, "grid dr must be positive");
  if (n_r < 16) throw Error(ErrorCode::kInvalidArgument, "grid needs at least 16 radial points");
  if (!(mask_start > 0.5 && mask_start < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mask_start must lie in (0.5, 1)");
  }
}

RadialHamiltonian::RadialHamiltonian(const RadialGrid& grid, const CutCoulomb& potential, int ell_)
    : ell(ell_), h(grid.dr) {
  grid.validate();
  potential.validate();
  if (ell < 0) throw Error(ErrorCode::kInvalidArgument, "ell must be non-negative");
  const std::size_t n = static_cast<std::size_t>(grid.n_r);
  const double h2 = h * h;

  w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = grid.r(static_cast<int>(j));
    w[j] = potential(r) + 0.5 * ell * (ell + 1) / (r * r);
    if (potential.shape == CutShape::kHard && std::abs(r - potential.r_c) < 0.5 * h) {
      // The node whose cell straddles a hard cut carries the cell average of the step.
      const double inside = (potential.r_c - (r - 0.5 * h)) / h;
      w[j] += inside * potential(std::min(r, potential.r_c)) - potential(r);
    }
  }

  std::vector<double> d_diag(n, -2.0 / h2);
  const double d_off = 1.0 / h2;
  if (ell == 0 && potential.r_c >= h) {
    // Regularizes the Coulomb cusp at the first grid point.
    const double zh = potential.z_eff * h;
    d_diag[0] *= 1.0 - zh / (12.0 - 10.0 * zh);
  }

  m_off = h2 / 12.0 * d_off;
  m_diag.resize(n);
  for (std::size_t j = 0; j < n; ++j) m_diag[j] = 1.0 + h2 / 12.0 * d_diag[j];

  k_diag.resize(n);
  k_lower.assign(n, 0.0);
  k_upper.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    k_diag[j] = -0.5 * d_diag[j] + m_diag[j] * w[j];
    if (j > 0) k_lower[j] = -0.5 * d_off + m_off * w[j - 1];
    if (j + 1 < n) k_upper[j] = -0.5 * d_off + m_off * w[j + 1];
  }
}

int RadialHamiltonian::count_below(double energy) const {
  // S = (K - E M) M is symmetric pentadiagonal and congruent to H - E.
  const std::size_t n = size();
  auto j_diag = [&](std::size_t j) { return k_diag[j] - energy * m_diag[j]; };
  auto j_low = [&](std::size_t j) { return k_lower[j] - energy * m_off; };
  auto j_up = [&](std::size_t j) { return k_upper[j] - energy * m_off; };

  // Banded LDL^T, keeping the last two rows of L and D.
  int negatives = 0;
  double d1 = 0.0, d2 = 0.0;      // D_{j-1}, D_{j-2}
  double l1_2 = 0.0;               // L_{j-1,j-2}
  for (std::size_t j = 0; j < n; ++j) {
    double s0 = j_diag(j) * m_diag[j];
    if (j > 0) s0 += j_low(j) * m_off;
    if (j + 1 < n) s0 += j_up(j) * m_off;
    const double s1 = j > 0 ? j_low(j) * m_diag[j - 1] + j_diag(j) * m_off : 0.0;
    const double s2 = j > 1 ? j_low(j) * m_off : 0.0;

    const double l2 = j > 1 ? s2 / d2 : 0.0;                                // L_{j,j-2}
    const double l1 = j > 0 ? (s1 - (j > 1 ? l2 * l1_2 * d2 : 0.0)) / d1 : 0.0;  // L_{j,j-1}
    double d = s0;
    if (j > 0) d -= l1 * l1 * d1;
    if (j > 1) d -= l2 * l2 * d2;
    if (d == 0.0) d = 1e-300;
    if (d < 0.0) ++negatives;
    d2 = d1;
    d1 = d;
    l1_2 = l1;
  }
  return negatives;
}

namespace {

double lower_bound_energy(const RadialHamiltonian& ham) {
  // -1/2 M^-1 D is positive, so H >= min W.
  return *std::min_element(ham.w.begin(), ham.w.end()) - 1.0;
}

double bisect_eigenvalue(const RadialHamiltonian& ham, int n_index, double lo, double hi) {
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (ham.count_below(mid) > n_index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solves (K - sigma M) x = rhs for the tridiagonal K - sigma M, with partial pivoting
// so a shift that lands almost on an eigenvalue stays well-behaved.
std::vector<double> shifted_solve(const RadialHamiltonian& ham, double sigma,
                                  std::vector<double> rhs) {
  const std::size_t n = ham.size();
  // Rows as (a: sub, b: diag, c: super, e: second super after a swap).
  std::vector<double> a(n), b(n), c(n), e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    a[j] = j > 0 ? ham.k_lower[j] - sigma * ham.m_off : 0.0;
    b[j] = ham.k_diag[j] - sigma * ham.m_diag[j];
    c[j] = j + 1 < n ? ham.k_upper[j] - sigma * ham.m_off : 0.0;
  }
  // Gaussian elimination with row swaps; U has bandwidth 2.
  for (std::size_t j = 0; j + 1 < n; ++j) {
    if (std::abs(a[j + 1]) > std::abs(b[j])) {
      std::swap(b[j], a[j + 1]);
      std::swap(c[j], b[j + 1]);
      std::swap(e[j], c[j + 1]);
      std::swap(rhs[j], rhs[j + 1]);
    }
    if (b[j] == 0.0) b[j] = 1e-300;
    const double f = a[j + 1] / b[j];
    b[j + 1] -= f * c[j];
    c[j + 1] -= f * e[j];
    rhs[j + 1] -= f * rhs[j];
  }
  if (b[n - 1] == 0.0) b[n - 1] = 1e-300;
  std::vector<double> x(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    if (k + 1 < n) s -= c[k] * x[k + 1];
    if (k + 2 < n) s -= e[k] * x[k + 2];
    x[k] = s / b[k];
  }
  return x;
}

std::vector<double> apply_m(const RadialHamiltonian& ham, const std::vector<double>& x) {
  const std::size_t n = ham.size();
  std::vector<double> y(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = ham.m_diag[j] * x[j];
    if (j > 0) s += ham.m_off * x[j - 1];
    if (j + 1 < n) s += ham.m_off * x[j + 1];
    y[j] = s;
  }
  return y;
}

void normalize(std::vector<double>& u, double h) {
  double s = 0.0;
  for (double v : u) s += v * v;
  s = std::sqrt(s * h);
  // Sign: positive first lobe, judged at the first point that carries weight.
  double peak = 0.0;
  for (double v : u) peak = std::max(peak, std::abs(v));
  double sign = 1.0;
  for (double v : u) {
    if (std::abs(v) > 1e-3 * peak) {
      sign = v > 0.0 ? 1.0 : -1.0;
      break;
    }
  }
  for (double& v : u) v *= sign / s;
}

RadialEigenstate eigenpair(const RadialHamiltonian& ham, int n_index, double energy) {
  const std::size_t n = ham.size();
  // Inverse iteration on H x = E x written as (K - sigma M) x = M b.
  const double sigma = energy + 1e-10 * std::max(1.0, std::abs(energy));
  std::vector<double> x(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) x[j] += 1e-3 * std::sin(0.37 * static_cast<double>(j));
  for (int it = 0; it < 4; ++it) {
    x = shifted_solve(ham, sigma, apply_m(ham, x));
    double mx = 0.0;
    for (double v : x) mx = std::max(mx, std::abs(v));
    for (double& v : x) v /= mx;
  }
  (void)n_index;
  normalize(x, ham.h);
  return {energy, std::move(x)};
}

}  // namespace

RadialEigenstate radial_eigenstate(const CutCoulomb& potential, int ell, int n_index,
                                   const RadialGrid& grid) {
  if (n_index < 0) throw Error(ErrorCode::kInvalidArgument, "n_index must be non-negative");
  const RadialHamiltonian ham(grid, potential, ell);
  if (ham.count_below(0.0) <= n_index) {
    std::ostringstream msg;
    msg << "state n_index=" << n_index << " of l=" << ell << " is not bound (z_eff="
        << potential.z_eff << ", r_c=" << potential.r_c << ")";
    throw Error(ErrorCode::kNotBound, msg.str());
  }
  const double energy = bisect_eigenvalue(ham, n_index, lower_bound_energy(ham), 0.0);
  return eigenpair(ham, n_index, energy);
}

std::vector<RadialEigenstate> bound_states(const CutCoulomb& potential, int ell,
                                           const RadialGrid& grid) {
  const RadialHamiltonian ham(grid, potential, ell);
  const int count = ham.count_below(0.0);
  std::vector<RadialEigenstate> out;
  out.reserve(static_cast<std::size_t>(count));
  const double lo = lower_bound_energy(ham);
  for (int k = 0; k < count; ++k) {
    out.push_back(eigenpair(ham, k, bisect_eigenvalue(ham, k, lo, 0.0)));
  }
  return out;
}

double find_zeff(double target_ip, int ell, double r_c, const RadialGrid& grid, CutShape shape) {
  if (!(target_ip > 0.0)) throw Error(ErrorCode::kInvalidArgument, "target_ip must be positive");
  auto residual = [&](double z) {
    const CutCoulomb pot{z, r_c, shape};
    const RadialHamiltonian ham(grid, pot, ell);
    const double e = ham.count_below(0.0) > 0
                         ? bisect_eigenvalue(ham, 0, lower_bound_energy(ham), 0.0)
                         : 0.0;
    return e + target_ip;
  };

  double lo = 0.5, hi = 10.0;
  double f_lo = residual(lo), f_hi = residual(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    std::ostringstream msg;
    msg << "z_eff in [0.5, 10] does not bracket I_p=" << target_ip << " for l=" << ell
        << ", r_c=" << r_c;
    throw Error(ErrorCode::kBracketFail, msg.str());
  }
  // Illinois regula falsi; bisection whenever the secant step stalls.
  int side = 0;
  for (int it = 0; it < 200; ++it) {
    double z = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(z > lo && z < hi) || it % 8 == 7) z = 0.5 * (lo + hi);
    const double f = residual(z);
    if (std::abs(f) < 1e-11 || hi - lo < 1e-13) return z;
    if (f > 0.0) {
      lo = z;
      f_lo = f;
      if (side == -1) f_hi *= 0.5;
      side = -1;
    } else {
      hi = z;
      f_hi = f;
      if (side == 1) f_lo *= 0.5;
      side = 1;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace strongfield
