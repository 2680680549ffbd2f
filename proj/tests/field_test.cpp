#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "strongfield/error.hpp"
#include "strongfield/field.hpp"

using namespace strongfield;

namespace {

const PulseParams kFig1{0.0834, 0.056, 4, 0.0};

oracle::Pulse reference(const PulseParams& p) { return {p.e0, p.omega, p.n_cycles, p.cep}; }

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("electric field on and off the support") {
    const Field f(kFig1);
    const double period = kFig1.period();
    CHECK(f.electric_field(0.0) == 0.0);
    CHECK(f.electric_field(-3.0) == 0.0);
    CHECK(f.electric_field(kFig1.duration() + 1.0) == 0.0);
    CHECK(f.electric_field(2.0 * period) == doctest::Approx(0.0834).epsilon(1e-12));

    double peak = 0.0;
    for (int i = 0; i <= 20000; ++i) {
      peak = std::max(peak, std::abs(f.electric_field(kFig1.duration() * i / 20000.0)));
    }
    CHECK(peak <= kFig1.e0 * (1.0 + 1e-14));
  }

  TEST_CASE("vector potential vanishes at both ends for any cep") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    for (int n : {2, 3, 4, 5, 8}) {
      for (int k = 0; k < 5; ++k) {
        PulseParams p = kFig1;
        p.n_cycles = n;
        p.cep = phase(rng);
        const Field f(p);
        CHECK(std::abs(f.vector_potential(0.0)) < 1e-14);
        CHECK(std::abs(f.series().value(cplx(p.duration())).real()) < 1e-13);
        CHECK(f.vector_potential(p.duration() + 5.0) == 0.0);
      }
    }
  }

  TEST_CASE("vector potential against quadrature of the field") {
    const auto ref = reference(kFig1);
    const Field f(kFig1);
    CHECK(std::abs(ref.vector_potential(kFig1.duration())) < 1e-12);
    const double a0 = kFig1.e0 / kFig1.omega;
    for (double frac : {0.5, 0.21, 0.64}) {
      const double t = frac * kFig1.duration();
      const double want = ref.vector_potential(t);
      CHECK(std::abs(f.vector_potential(t) - want) <= 1e-10 * std::max(std::abs(want), 1e-3 * a0));
    }

    PulseParams shifted = kFig1;
    shifted.cep = 1.1;
    const Field g(shifted);
    const auto ref2 = reference(shifted);
    for (double frac : {0.13, 0.37, 0.71}) {
      const double tt = frac * shifted.duration();
      CHECK(g.vector_potential(tt) == doctest::Approx(ref2.vector_potential(tt)).epsilon(1e-10));
    }
  }

  TEST_CASE("action limits") {
    PulseParams off = kFig1;
    off.e0 = 0.0;
    const Field dark(off);
    for (double t : {0.0, 10.0, 200.0}) CHECK(std::abs(dark.action({0, 0, 0}, t)) == 0.0);
    CHECK(dark.action({1.0, 0.0, 0.0}, 2.0).real() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("action against quadrature of the kinetic energy") {
    const Field f(kFig1);
    const auto ref = reference(kFig1);
    for (Vec3 p : {Vec3{0.5, 0.0, 0.0}, Vec3{0.0, 0.0, 0.5}, Vec3{0.3, 0.0, -0.9}}) {
      const double period = kFig1.period();
      double want = 0.0;
      for (double a = 0.0; a < kFig1.duration() - 1e-9; a += period) {
        want += oracle::integrate(
            [&](double t) {
              const double vz = p.z + ref.vector_potential(t);
              return 0.5 * (p.x * p.x + p.y * p.y + vz * vz);
            },
            a, a + period, 1e-13);
      }
      const cplx got = f.action(p, kFig1.duration());
      CHECK(got.imag() == 0.0);
      CHECK(std::abs(got.real() - want) <= 1e-10 * std::abs(want));
    }
  }

  TEST_CASE("complex-time continuation matches contour quadrature") {
    const Field f(kFig1);
    const auto ref = reference(kFig1);
    const Vec3 p{0.1, 0.0, 0.6};
    for (cplx t : {cplx(80.0, 8.0), cplx(221.0, 12.0), cplx(300.5, 3.0)}) {
      const cplx a_want = ref.vector_potential(t);
      CHECK(std::abs(f.vector_potential(t) - a_want) < 1e-10 * std::abs(a_want));

      // S(t) = S(Re t) + i int_0^{Im t} (p + A(Re t + i s))^2 / 2 ds
      const cplx vertical = oracle::integrate_complex(
          [&](double s) {
            const cplx vz = p.z + ref.vector_potential(cplx(t.real(), s));
            return 0.5 * (p.x * p.x + vz * vz) * cplx(0.0, 1.0);
          },
          0.0, t.imag(), 1e-12);
      const cplx s_want = f.action(p, t.real()) + vertical;
      CHECK(std::abs(f.action(p, t) - s_want) < 1e-9 * std::abs(s_want));
    }
  }

  TEST_CASE("Schwarz reflection") {
    const Field f(kFig1);
    const Vec3 p{0.2, 0.0, -0.4};
    for (cplx t : {cplx(50.0, 10.0), cplx(333.0, 25.0)}) {
      CHECK(std::abs(f.vector_potential(std::conj(t)) - std::conj(f.vector_potential(t))) < 1e-14);
      CHECK(std::abs(f.action(p, std::conj(t)) - std::conj(f.action(p, t))) < 1e-10);
    }
  }

  TEST_CASE("finite-difference properties on random samples") {
    const Field f(kFig1);
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> time(1e-3, kFig1.duration() - 1e-3);
    std::uniform_real_distribution<double> mom(-1.5, 1.5);
    const double h = 1e-6;
    for (int i = 0; i < 100; ++i) {
      const double t = time(rng);
      const Vec3 p{mom(rng), mom(rng), mom(rng)};
      const double ds = (f.action(p, t + h) - f.action(p, t - h)).real() / (2.0 * h);
      const double vz = p.z - kElectronCharge * f.vector_potential(t);
      CHECK(std::abs(ds - 0.5 * (p.x * p.x + p.y * p.y + vz * vz)) < 1e-6);

      const double da = (f.vector_potential(t + h) - f.vector_potential(t - h)) / (2.0 * h);
      CHECK(std::abs(f.electric_field(t) + da) < 1e-6);
    }
  }

  TEST_CASE("monochromatic reference field") {
    const double a0 = 0.0834 / 0.056;
    const Field f = Field::monochromatic(a0, 0.056, 500.0);
    CHECK_FALSE(f.windowed());
    for (double t : {0.0, 13.0, 700.0}) {
      CHECK(f.vector_potential(t) == doctest::Approx(a0 * std::cos(0.056 * t)).epsilon(1e-13));
      CHECK(f.electric_field(t) == doctest::Approx(a0 * 0.056 * std::sin(0.056 * t)).epsilon(1e-12));
    }
  }

  TEST_CASE("pulse validation") {
    PulseParams p = kFig1;
    p.n_cycles = 1;
    CHECK_THROWS_AS(Field{p}, Error);
    p = kFig1;
    p.omega = 0.0;
    CHECK_THROWS_AS(Field{p}, Error);
    p = kFig1;
    p.e0 = -1.0;
    try {
      Field{p};
      FAIL("negative e0 accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kInvalidArgument);
    }
  }
}
