#pragma once

#include <cmath>
#include <functional>

#include "mmdg/mmdg.hpp"

namespace mmdg::testing {

inline Discretization make_disc(int q, int n_x, double a, double b, BoundaryKind bc, double v_cut = 12.0,
                                int n_v = 100, double eps = 1.0) {
  Discretization d;
  d.basis = build_basis(q);
  d.mesh = Mesh1D(a, b, n_x, bc);
  d.grid = VelocityGrid(v_cut, n_v);
  d.eps = EpsCoefficient::constant(eps, d.mesh, d.basis);
  return d;
}

inline MacroField fill_macro(const Discretization& d, const std::function<Vec3(double)>& fn) {
  MacroField U = d.macro_field();
  for (int n = 0; n < d.nodes(); ++n) U.set(n, fn(d.node_x(n)));
  return U;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace mmdg::testing
