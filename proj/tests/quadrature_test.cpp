#include <doctest.h>

#include <cmath>
#include <numeric>

#include "strongfield/error.hpp"
#include "strongfield/quadrature.hpp"

using namespace strongfield;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre is exact to degree 2n-1") {
    for (int n : {1, 2, 5, 12, 16, 24}) {
      const GaussLegendre rule(n);
      REQUIRE(rule.order() == n);
      for (int deg = 0; deg <= 2 * n - 1; ++deg) {
        double sum = 0.0;
        for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], deg);
        const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
        CHECK(sum == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("composite rule") {
    const GaussLegendre rule(8);
    const auto c = composite_gauss_legendre(1.0, 4.0, 7, rule);
    CHECK(c.nodes.size() == 56);
    CHECK(std::accumulate(c.weights.begin(), c.weights.end(), 0.0) == doctest::Approx(3.0));
    double s = 0.0;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) s += c.weights[i] * std::cos(5.0 * c.nodes[i]);
    CHECK(s == doctest::Approx((std::sin(20.0) - std::sin(5.0)) / 5.0).epsilon(1e-13));
  }

  TEST_CASE("spec validation") {
    QuadratureSpec q;
    CHECK_NOTHROW(q.validate());
    q.order = 0;
    CHECK_THROWS_AS(q.validate(), Error);
  }
}
