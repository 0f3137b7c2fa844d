#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/kinetic_core.hpp"

namespace mmdg::harness {

/// L1 distance between a solution on a mesh and on its uniform refinement,
/// normalized by |Omega| and by `width` (the number of components, e.g. n_v
/// for g). Values are nodal with `width` components per node. The integral
/// runs over fine elements with their Gauss rule; the coarse polynomial is
/// evaluated at the fine nodes.
inline double l1_error_consecutive(const Discretization& coarse, std::span<const double> coarse_vals,
                                   const Discretization& fine, std::span<const double> fine_vals,
                                   int width = 1) {
  if (fine.n_x() != 2 * coarse.n_x() || fine.q() != coarse.q() || fine.mesh.a != coarse.mesh.a ||
      fine.mesh.b != coarse.mesh.b) {
    throw std::invalid_argument("l1_error_consecutive: fine mesh must be the coarse mesh refined by 2");
  }
  const int q = coarse.q();
  if (coarse_vals.size() != static_cast<size_t>(coarse.nodes() * width) ||
      fine_vals.size() != static_cast<size_t>(fine.nodes() * width)) {
    throw std::invalid_argument("l1_error_consecutive: value arrays do not match meshes");
  }
  const auto& B = coarse.basis;
  // Lagrange weights of each fine node inside its coarse parent, for the
  // left (child 0) and right (child 1) halves.
  std::vector<double> interp(static_cast<size_t>(2 * q * q));
  for (int child = 0; child < 2; ++child) {
    for (int k = 0; k < q; ++k) {
      const double xi = 0.5 * B.nodes[k] + (child == 0 ? -0.25 : 0.25);
      for (int m = 0; m < q; ++m) interp[(child * q + k) * q + m] = B.value(m, xi);
    }
  }
  double total = 0.0;
  for (int fi = 0; fi < fine.n_x(); ++fi) {
    const int ci = fi / 2;
    const int child = fi % 2;
    const double h = fine.mesh.h(fi);
    for (int k = 0; k < q; ++k) {
      const double* wts = interp.data() + (child * q + k) * q;
      for (int c = 0; c < width; ++c) {
        double coarse_v = 0.0;
        for (int m = 0; m < q; ++m) coarse_v += wts[m] * coarse_vals[static_cast<size_t>(ci * q + m) * width + c];
        const double fine_v = fine_vals[static_cast<size_t>(fi * q + k) * width + c];
        total += B.weights[k] * h * std::abs(fine_v - coarse_v);
      }
    }
  }
  return total / (coarse.mesh.length() * width);
}

/// log2(e_h / e_{h/2}).
inline double observed_order(double e_h, double e_h2) { return std::log2(e_h / e_h2); }

/// sum w_k |a - b| / sum w_k |a| over a shared nodal set.
inline double relative_difference(std::span<const double> a, std::span<const double> b,
                                  const NodalBasis& basis) {
  if (a.size() != b.size()) throw std::invalid_argument("relative_difference: size mismatch");
  double num = 0.0, den = 0.0;
  for (size_t n = 0; n < a.size(); ++n) {
    const double w = basis.weights[n % basis.q];
    num += w * std::abs(a[n] - b[n]);
    den += w * std::abs(a[n]);
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
  return num / den;
}

/// max over nodes of |eps <m g>| per component.
inline Vec3 conservation_defect(const KineticField& g, const Discretization& d) {
  Vec3 worst{0.0, 0.0, 0.0};
  for (int n = 0; n < g.nodes(); ++n) {
    const Vec3 m = d.grid.moment_vector(g.node(n));
    const double e = d.eps.node(n);
    for (int c = 0; c < 3; ++c) worst[c] = std::max(worst[c], std::abs(e * m[c]));
  }
  return worst;
}

/// Q_eps = < |v-u|^2/2 (v-u) g > at one node.
inline double rescaled_heat_flux(std::span<const double> g, double u, const VelocityGrid& grid) {
  return grid.moment(g, [u](double v) {
    const double c = v - u;
    return 0.5 * c * c * c;
  });
}

/// (1/|Omega|) int |w_h - w_exact| dx by the element Gauss rule.
inline double l1_error_exact(const Discretization& d, std::span<const double> nodal,
                             const std::function<double(double)>& exact) {
  double total = 0.0;
  for (int i = 0; i < d.n_x(); ++i) {
    for (int k = 0; k < d.q(); ++k) {
      const int n = i * d.q() + k;
      total += d.basis.weights[k] * d.mesh.h(i) * std::abs(nodal[n] - exact(d.node_x(i, k)));
    }
  }
  return total / d.mesh.length();
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace mmdg::harness
