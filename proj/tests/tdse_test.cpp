#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <sstream>

#include "oracles.hpp"
#include "strongfield/error.hpp"
#include "strongfield/tdse.hpp"

using namespace strongfield;

namespace {

const PulseParams kFig1{0.0834, 0.056, 4, 0.0};

// Eigenvalues of the dense generalized problem K u = E M u, ascending.
std::vector<double> dense_spectrum(const RadialHamiltonian& ham) {
  const int n = static_cast<int>(ham.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    k(j, j) = ham.k_diag[j];
    m(j, j) = ham.m_diag[j];
    if (j > 0) {
      k(j, j - 1) = ham.k_lower[j];
      m(j, j - 1) = ham.m_off;
    }
    if (j + 1 < n) {
      k(j, j + 1) = ham.k_upper[j];
      m(j, j + 1) = ham.m_off;
    }
  }
  const Eigen::MatrixXd h = m.partialPivLu().solve(k);
  const Eigen::VectorXcd ev = h.eigenvalues();
  std::vector<double> out;
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(ev[j].imag()) < 1e-8);
    out.push_back(ev[j].real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// u'' = 2 (W - E) u integrated with classical RK4 up to r_c, then matched to
// Riccati-Bessel functions; returns delta modulo pi.
double rk4_phase_shift(double z, double r_c, int ell, double energy) {
  const double k = std::sqrt(2.0 * energy);
  auto accel = [&](double r, double u) {
    return 2.0 * (-z / r + 0.5 * ell * (ell + 1) / (r * r) - energy) * u;
  };
  double r = 1e-5;
  double u = std::pow(r, ell + 1) * (1.0 - z * r / (ell + 1));
  double du = (ell + 1) * std::pow(r, ell) - z * (ell + 2) / (ell + 1) * std::pow(r, ell + 1);
  const int steps = 200000;
  const double step = (r_c - r) / steps;
  for (int i = 0; i < steps; ++i) {
    const double k1u = du, k1v = accel(r, u);
    const double k2u = du + 0.5 * step * k1v, k2v = accel(r + 0.5 * step, u + 0.5 * step * k1u);
    const double k3u = du + 0.5 * step * k2v, k3v = accel(r + 0.5 * step, u + 0.5 * step * k2u);
    const double k4u = du + step * k3v, k4v = accel(r + step, u + step * k3u);
    u += step / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    du += step / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    r += step;
  }
  const double x = k * r;
  double s, c, ds, dc;
  if (ell == 0) {
    s = std::sin(x), c = std::cos(x), ds = std::cos(x), dc = -std::sin(x);
  } else {
    s = std::sin(x) / x - std::cos(x);
    c = std::cos(x) / x + std::sin(x);
    ds = std::cos(x) / x - std::sin(x) / (x * x) + std::sin(x);
    dc = -std::sin(x) / x - std::cos(x) / (x * x) + std::cos(x);
  }
  // u = a s + b c, u'/k = a s' + b c'
  const double dud = du / k;
  const double det = s * dc - c * ds;
  const double a = (u * dc - c * dud) / det;
  const double b = (s * dud - u * ds) / det;
  return std::atan2(b, a);
}

double phase_distance(double a, double b) { return std::abs(std::sin(a - b)); }

}  // namespace

TEST_SUITE("tdse") {
  TEST_CASE("hydrogenic limits") {
    const auto grid = RadialGrid::from_extent(0.05, 100.0);
    const CutCoulomb h1{1.0, 1000.0};
    const CutCoulomb h2{2.0, 1000.0};
    CHECK(std::abs(radial_eigenstate(h1, 0, 0, grid).energy + 0.5) < 2e-4);
    CHECK(std::abs(radial_eigenstate(h2, 1, 0, grid).energy + 0.5) < 2e-4);
    CHECK(std::abs(radial_eigenstate(h1, 0, 1, grid).energy + 0.125) < 2e-4);
    CHECK(std::abs(radial_eigenstate(h1, 1, 0, grid).energy + 0.125) < 2e-4);
  }

  TEST_CASE("eigenvalues against a dense solver") {
    const auto grid = RadialGrid::from_extent(0.1, 40.0);
    for (int ell : {0, 1, 2}) {
      const CutCoulomb pot{2.5, 2.0};
      const RadialHamiltonian ham(grid, pot, ell);
      const auto dense = dense_spectrum(ham);
      const auto states = bound_states(pot, ell, grid);
      const auto n_bound = std::count_if(dense.begin(), dense.end(), [](double e) { return e < 0.0; });
      REQUIRE(static_cast<long>(states.size()) == n_bound);
      for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(std::abs(states[i].energy - dense[i]) < 1e-10);
      }
      for (double e : {-1.0, -0.3, -0.01, 0.5, 3.0}) {
        const auto want = std::count_if(dense.begin(), dense.end(), [&](double x) { return x < e; });
        CHECK(ham.count_below(e) == want);
      }
    }
  }

  TEST_CASE("eigenvectors solve the discrete equation") {
    const auto grid = RadialGrid::from_extent(0.1, 60.0);
    const CutCoulomb pot{1.6, 2.0};
    const RadialHamiltonian ham(grid, pot, 0);
    const auto st = radial_eigenstate(pot, 0, 0, grid);
    double norm = 0.0, res = 0.0;
    const std::size_t n = ham.size();
    for (std::size_t j = 0; j < n; ++j) {
      norm += grid.dr * st.u[j] * st.u[j];
      double ku = ham.k_diag[j] * st.u[j], mu = ham.m_diag[j] * st.u[j];
      if (j > 0) ku += ham.k_lower[j] * st.u[j - 1], mu += ham.m_off * st.u[j - 1];
      if (j + 1 < n) ku += ham.k_upper[j] * st.u[j + 1], mu += ham.m_off * st.u[j + 1];
      res = std::max(res, std::abs(ku - st.energy * mu));
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res < 1e-9);
    CHECK(*std::max_element(st.u.begin(), st.u.end()) > 0.0);
  }

  TEST_CASE("effective charge tuning") {
    const auto grid = RadialGrid::from_extent(0.1, 400.0);
    const double z1s = find_zeff(0.5, 0, 2.0, grid);
    const double z2p = find_zeff(0.5, 1, 2.0, grid);
    CHECK(z1s > 1.0);
    CHECK(z2p > 2.0);
    CHECK(std::abs(radial_eigenstate({z1s, 2.0}, 0, 0, grid).energy + 0.5) < 1e-5);
    CHECK(std::abs(radial_eigenstate({z2p, 2.0}, 1, 0, grid).energy + 0.5) < 1e-5);

    const double zc = find_zeff(0.5, 0, 2.0, grid, CutShape::kContinuous);
    CHECK(std::abs(radial_eigenstate({zc, 2.0, CutShape::kContinuous}, 0, 0, grid).energy + 0.5) < 1e-5);

    const auto fine = RadialGrid::from_extent(0.05, 100.0);
    CHECK(std::abs(find_zeff(0.5, 0, 100.0, fine) - 1.0) < 1e-3);
  }

  TEST_CASE("tuning and binding failures") {
    const auto grid = RadialGrid::from_extent(0.1, 100.0);
    try {
      (void)find_zeff(200.0, 0, 2.0, grid);
      FAIL("expected BRACKET_FAIL");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kBracketFail);
    }
    try {
      (void)radial_eigenstate({0.05, 0.5}, 1, 0, grid);
      FAIL("expected NOT_BOUND");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kNotBound);
    }
    CHECK_THROWS_AS(RadialGrid::from_extent(0.1, 100.0, 0.4).validate(), Error);
    CHECK_THROWS_AS((CutCoulomb{-1.0, 2.0}.validate()), Error);
  }

  TEST_CASE("stationary state in zero field") {
    const auto grid = RadialGrid::from_extent(0.1, 60.0);
    const CutCoulomb pot{find_zeff(0.5, 0, 2.0, grid), 2.0};
    const auto st = radial_eigenstate(pot, 0, 0, grid);
    const auto psi0 = PartialWaveFunction::from_radial(grid, 3, 0, st.u);
    CHECK(std::abs(psi0.norm() - 1.0) < 1e-10);

    PulseParams dark = kFig1;
    dark.e0 = 0.0;
    PropagationOptions opt;
    opt.absorber = false;
    const auto res = propagate(psi0, pot, Field(dark), opt);
    cplx overlap = 0.0;
    const auto a = psi0.wave(0);
    const auto b = res.wavefunction.wave(0);
    for (std::size_t j = 0; j < a.size(); ++j) overlap += std::conj(a[j]) * b[j] * grid.dr;
    CHECK(std::abs(std::abs(overlap) - 1.0) < 1e-6);
    // Each Cayley step advances the phase of an eigenvector by 2 atan(E dt / 2).
    const double dt = dark.duration() / res.steps;
    const cplx want = std::exp(cplx(0.0, -2.0 * res.steps * std::atan(0.5 * st.energy * dt)));
    CHECK(std::abs(overlap - want) < 1e-6);
  }

  TEST_CASE("unitarity without absorber") {
    const auto grid = RadialGrid::from_extent(0.1, 80.0);
    const CutCoulomb pot{find_zeff(0.5, 0, 2.0, grid), 2.0};
    const auto st = radial_eigenstate(pot, 0, 0, grid);
    PropagationOptions opt;
    opt.absorber = false;
    opt.t_final = 1e4 * opt.dt;
    const auto res = propagate(PartialWaveFunction::from_radial(grid, 8, 0, st.u), pot, Field(kFig1), opt);
    CHECK(res.steps == 10000);
    CHECK(std::abs(res.wavefunction.norm() - 1.0) < 1e-8);
    CHECK(res.absorbed_norm == 0.0);
  }

  TEST_CASE("checkpoint round trip") {
    const auto grid = RadialGrid::from_extent(0.2, 20.0);
    PartialWaveFunction psi(grid, 2);
    for (std::size_t i = 0; i < psi.coeffs.size(); ++i) psi.coeffs[i] = cplx(std::sin(i * 0.1), 1.0 / (i + 1));
    std::stringstream ss;
    psi.save(ss);
    const auto back = PartialWaveFunction::load(ss);
    CHECK(back.l_max == 2);
    CHECK(back.grid.n_r == grid.n_r);
    CHECK(back.grid.dr == grid.dr);
    CHECK(back.coeffs == psi.coeffs);

    std::stringstream bad("not-a-checkpoint\n");
    try {
      (void)PartialWaveFunction::load(bad);
      FAIL("expected IO error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIo);
    }
  }

  TEST_CASE("ionization is stable under time-step refinement") {
    const auto grid = RadialGrid::from_extent(0.1, 200.0);
    const CutCoulomb pot{find_zeff(0.5, 0, 2.0, grid), 2.0};
    const auto st = radial_eigenstate(pot, 0, 0, grid);
    const auto psi0 = PartialWaveFunction::from_radial(grid, 20, 0, st.u);
    auto ionized = [&](double dt) {
      PropagationOptions opt;
      opt.dt = dt;
      const auto res = propagate(psi0, pot, Field(kFig1), opt);
      cplx overlap = 0.0;
      const auto a = psi0.wave(0);
      const auto w = res.wavefunction.wave(0);
      for (std::size_t j = 0; j < a.size(); ++j) overlap += a[j] * w[j] * grid.dr;
      return 1.0 - std::norm(overlap);
    };
    const double coarse = ionized(0.05);
    const double fine = ionized(0.025);
    CHECK(fine > 0.0);
    CHECK(fine < 1.0);
    CHECK(std::abs(coarse - fine) < 0.01 * fine);
  }

  TEST_CASE("continuum phase shift against an ODE oracle") {
    const auto grid = RadialGrid::from_extent(0.02, 200.0);
    for (int ell : {0, 1}) {
      for (double e : {0.1, 0.5}) {
        const double z = 1.7;
        const auto wave = continuum_wave({z, 2.0}, ell, e, grid);
        const double want = rk4_phase_shift(z, 2.0, ell, e);
        CHECK(phase_distance(wave.phase_shift, want) < 1e-3);
      }
    }
  }

  TEST_CASE("free continuum wave normalization") {
    const auto grid = RadialGrid::from_extent(0.05, 300.0);
    for (double e : {0.2, 0.8}) {
      const auto wave = continuum_wave({1.0, 1e-300}, 0, e, grid);
      CHECK(std::abs(wave.phase_shift) < 1e-9);
      const double k = std::sqrt(2.0 * e);
      double peak = 0.0;
      for (int j = grid.n_r / 2; j < grid.n_r; ++j) peak = std::max(peak, std::abs(wave.u[j]));
      CHECK(peak == doctest::Approx(std::sqrt(2.0 / (kPi * k))).epsilon(5e-3));
    }
  }

  TEST_CASE("synthetic continuum state peaks at its energy") {
    const auto grid = RadialGrid::from_extent(0.1, 400.0);
    const CutCoulomb pot{find_zeff(0.5, 0, 2.0, grid), 2.0};
    const double e0 = 0.5;
    const auto wave = continuum_wave(pot, 0, e0, grid);
    auto psi = PartialWaveFunction::from_radial(grid, 2, 0, wave.u);
    const double n = std::sqrt(psi.norm());
    for (auto& c : psi.coeffs) c /= n;

    const auto energies = linear_grid(0.3, 0.7, 401);
    const auto s = photoelectron_spectrum(psi, pot, energies, 0.0, StateKind::kSEven);
    const auto top = std::max_element(s.values.begin(), s.values.end()) - s.values.begin();
    const double dp = std::abs(std::sqrt(2.0 * s.energies[top]) - std::sqrt(2.0 * e0));
    CHECK(dp < 2.0 * kPi / grid.r_max() * std::sqrt(2.0 * e0));

    const auto st = radial_eigenstate(pot, 0, 0, grid);
    const auto bound = PartialWaveFunction::from_radial(grid, 2, 0, st.u);
    const auto sb = photoelectron_spectrum(bound, pot, energies, 0.0, StateKind::kSEven);
    const double scale = s.values[top];
    for (double v : sb.values) CHECK(v < 1e-12 * scale);
  }

  TEST_CASE("absorber loss is reported") {
    const auto grid = RadialGrid::from_extent(0.1, 100.0);
    const CutCoulomb pot{1.5, 2.0};
    PartialWaveFunction psi(grid, 1);
    const auto proj = project_continuum(psi, pot, linear_grid(0.1, 0.5, 5), 0.3);
    CHECK(proj.absorbed_norm == 0.3);
    CHECK_FALSE(proj.warnings.empty());
  }
}
