#include "strongfield/quadrature.hpp"

#include <cmath>

#include "strongfield/error.hpp"
#include "strongfield/field.hpp"

namespace strongfield {

GaussLegendre::GaussLegendre(int order) {
  if (order < 1) throw Error(ErrorCode::kInvalidArgument, "Gauss-Legendre order must be >= 1");
  nodes.resize(order);
  weights.resize(order);
  // Newton on P_n from the Chebyshev-like initial guess; symmetric pairs.
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[order - 1 - i] = x;
    weights[i] = w;
    weights[order - 1 - i] = w;
  }
}

CompositeRule composite_gauss_legendre(double a, double b, int panels, const GaussLegendre& rule) {
  if (panels < 1) throw Error(ErrorCode::kInvalidArgument, "composite rule needs >= 1 panel");
  CompositeRule out;
  out.nodes.reserve(static_cast<std::size_t>(panels) * rule.order());
  out.weights.reserve(out.nodes.capacity());
  const double h = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double mid = a + (k + 0.5) * h;
    for (int i = 0; i < rule.order(); ++i) {
      out.nodes.push_back(mid + 0.5 * h * rule.nodes[i]);
      out.weights.push_back(0.5 * h * rule.weights[i]);
    }
  }
  return out;
}

void QuadratureSpec::validate() const {
  if (panels_per_cycle < 1 || order < 2 || max_panels_per_cycle < panels_per_cycle || !(rel_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid quadrature specification");
  }
}

}  // namespace strongfield
