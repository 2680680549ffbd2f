#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "strongfield/error.hpp"
#include "strongfield/saddle.hpp"
#include "strongfield/sfa.hpp"

using namespace strongfield;

namespace {

const PulseParams kFig1{0.0834, 0.056, 4, 0.0};
const auto kS = BoundStateModel::make(StateKind::kSEven, 0.5);
const auto kP = BoundStateModel::make(StateKind::kPOdd, 0.5);

Field mono() { return Field::monochromatic(kFig1.e0 / kFig1.omega, kFig1.omega, 4.0 * kFig1.period()); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

// Median |SPA/direct - 1| over the middle of the direct plateau, [0.55, 1.65] U_p.
double spa_direct_spread(const PulseParams& pulse) {
  const Field f(pulse);
  const SfaIntegrator sfa{f};
  const double up = pulse.ponderomotive_energy();
  std::vector<double> dev;
  for (double e = 0.55 * up; e <= 1.65 * up; e += 0.02 * up) {
    const Vec3 p{0.0, 0.0, std::sqrt(2.0 * e)};
    const double a = std::norm(spa_amplitude(p, Gauge::kLength, kS, f));
    const double b = std::norm(sfa.amplitude(p, Gauge::kLength, kS));
    dev.push_back(std::abs(a / b - 1.0));
  }
  return median(dev);
}

}  // namespace

TEST_SUITE("saddle") {
  TEST_CASE("monochromatic zero-momentum roots") {
    const auto roots = solve_saddles(Vec3{}, mono(), kS);
    REQUIRE(roots.size() >= 8);
    const double want = std::asinh(kFig1.omega / kFig1.e0);
    for (const auto& r : roots) {
      CHECK(std::abs(kFig1.omega * r.t_s.t_i - want) < 1e-8);
      const double phase = std::remainder(kFig1.omega * r.t_s.t_r - 0.5 * kPi, kPi);
      CHECK(std::abs(phase) < 1e-8);
      CHECK(std::abs(std::abs(r.velocity.z.imag()) - 1.0) < 1e-8);
      CHECK(std::abs(r.velocity.z.real()) < 1e-8);
    }
  }

  TEST_CASE("monochromatic sign pattern") {
    const auto roots = solve_saddles(Vec3{0.0, 0.0, 0.5}, mono(), kS);
    std::map<long, std::vector<double>> by_cycle;
    for (const auto& r : roots) {
      by_cycle[std::lround(std::floor(kFig1.omega * r.t_s.t_r / (2.0 * kPi)))].push_back(
          kFig1.omega * r.t_s.t_r);
    }
    int complete = 0;
    for (const auto& [cycle, phases] : by_cycle) {
      if (phases.size() != 2) continue;
      ++complete;
      CHECK(std::signbit(std::cos(phases[0])) == std::signbit(std::cos(phases[1])));
      CHECK(std::signbit(std::sin(phases[0])) != std::signbit(std::sin(phases[1])));
    }
    CHECK(complete >= 3);
  }

  TEST_CASE("instantaneous velocities") {
    for (double perp : {0.0, 0.3}) {
      const auto roots = solve_saddles(Vec3{perp, 0.0, 0.0}, mono(), kS);
      const auto vel = saddle_velocities(roots);
      REQUIRE(vel.size() == roots.size());
      const double mag = std::sqrt(1.0 + perp * perp);
      if (perp == 0.3) CHECK(mag == doctest::Approx(1.04403).epsilon(1e-5));
      for (std::size_t i = 0; i < vel.size(); ++i) {
        CHECK(std::abs(vel[i].x - perp) < 1e-12);
        CHECK(std::abs(std::abs(vel[i].z) - mag) < 1e-8);
        CHECK(std::abs(vel[i].z.real()) < 1e-8);
        if (i > 0) CHECK(std::signbit(vel[i].z.imag()) != std::signbit(vel[i - 1].z.imag()));
      }
    }
  }

  TEST_CASE("pulse roots on random momenta") {
    const Field f(kFig1);
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> energy(0.01, 1.5);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (int i = 0; i < 50; ++i) {
      const Vec3 p = Vec3::polar(std::sqrt(2.0 * energy(rng)), angle(rng));
      const auto roots = solve_saddles(p, f, kS);
      CHECK_FALSE(roots.empty());
      for (const auto& r : roots) {
        CHECK(r.residual < 1e-9);
        CHECK(r.t_s.t_i > 0.0);
        CHECK(r.t_s.t_r >= 0.0);
        CHECK(r.t_s.t_r <= kFig1.duration());
        CHECK(std::abs(r.velocity.dot(r.velocity) + 1.0) < 1e-9);
      }
    }
  }

  TEST_CASE("no field means no saddles") {
    PulseParams dark = kFig1;
    dark.e0 = 0.0;
    try {
      (void)solve_saddles(Vec3{0, 0, 0.5}, Field(dark), kS);
      FAIL("expected EMPTY_RESULT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyResult);
    }
  }

  TEST_CASE("form factors follow the state parity") {
    const auto roots = solve_saddles(Vec3{}, mono(), kP);
    REQUIRE(roots.size() >= 2);
    for (std::size_t i = 1; i < roots.size(); ++i) {
      CHECK(roots[i].l_gauge_pole);
      CHECK(std::abs(roots[i].form_factor_l + roots[i - 1].form_factor_l) < 1e-8);
    }
    const auto roots_z = solve_saddles(Vec3{0, 0, 0.4}, mono(), kP);
    for (std::size_t i = 1; i < roots_z.size(); ++i) {
      CHECK(roots_z[i].form_factor_v == roots_z[0].form_factor_v);
    }
    const auto roots_s = solve_saddles(Vec3{0, 0, 0.4}, mono(), kS);
    for (const auto& r : roots_s) CHECK(std::abs(r.form_factor_l - r.form_factor_v) < 1e-15);

    const Field f(kFig1);
    const Vec3 p{0.0, 0.0, 0.6};
    CHECK(std::abs(spa_amplitude(p, Gauge::kLength, kS, f) - spa_amplitude(p, Gauge::kVelocity, kS, f)) <
          1e-12 * std::abs(spa_amplitude(p, Gauge::kVelocity, kS, f)));
  }

  TEST_CASE("coalescing saddles are reported") {
    SaddleSolution s;
    s.t_s = {0.0, 0.0};
    s.velocity = CVec3{0.0, 0.0, cplx(0.0, 1.0)};
    const std::vector<SaddleSolution> sols{s};
    try {
      (void)spa_amplitude(sols, Gauge::kVelocity, kS, Field(kFig1));
      FAIL("expected SADDLE_COALESCENCE");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kSaddleCoalescence);
    }
  }

  TEST_CASE("off-axis emission has no complete cancellation") {
    const Field f(kFig1);
    for (const auto* st : {&kS, &kP}) {
      for (auto g : {Gauge::kLength, Gauge::kVelocity}) {
        double lo = 1e300;
        for (double pz = 0.2; pz <= 1.4; pz += 0.002) {
          lo = std::min(lo, std::norm(spa_amplitude(Vec3{0.1, 0.0, pz}, g, *st, f)));
        }
        CHECK(lo > 0.0);
      }
    }
  }

  TEST_CASE("saddle-point amplitude tracks direct quadrature at two intensities") {
    PulseParams strong = kFig1;
    strong.e0 *= std::sqrt(2.0);
    const double base = spa_direct_spread(kFig1);
    const double doubled = spa_direct_spread(strong);
    MESSAGE("median |SPA/direct - 1|: " << base << " at 1x, " << doubled << " at 2x intensity");
    // The spread is a few percent at both intensities but does not shrink
    // monotonically for this 4-cycle pulse, so only the bound is asserted.
    CHECK(base < 0.1);
    CHECK(doubled < 0.1);
  }

  TEST_CASE("spa spectrum flags instead of failing") {
    const std::vector<double> grid = linear_grid(0.3, 0.9, 31);
    const auto s = spa_spectrum(kP, Gauge::kLength, kFig1, grid, 0.0);
    CHECK(s.method == Method::kSfaSpa);
    CHECK(s.size() + s.flagged_energies.size() == grid.size());
    CHECK_NOTHROW(s.validate());
  }
}
