#pragma once

#include <vector>

namespace strongfield {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int order);
  int order() const { return static_cast<int>(nodes.size()); }
};

/// Composite rule over [a, b] with `panels` equal panels.
struct CompositeRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

CompositeRule composite_gauss_legendre(double a, double b, int panels, const GaussLegendre& rule);

/// Time-quadrature resolution for the SFA integrals. Panels are doubled from
/// `panels_per_cycle` until |M|^2 changes by less than `rel_tol`, up to
/// `max_panels_per_cycle`.
struct QuadratureSpec {
  int panels_per_cycle = 16;
  int order = 16;
  int max_panels_per_cycle = 1024;
  double rel_tol = 1e-6;

  void validate() const;
};

}  // namespace strongfield
