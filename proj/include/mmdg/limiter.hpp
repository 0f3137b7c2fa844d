#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mmdg/dg_space.hpp"

namespace mmdg {

struct LimiterConfig {
  bool enabled = false;
  double m_tvb = 20.0;
};

inline double minmod(double a, double b, double c) {
  if (a > 0.0 && b > 0.0 && c > 0.0) return std::min({a, b, c});
  if (a < 0.0 && b < 0.0 && c < 0.0) return std::max({a, b, c});
  return 0.0;
}

/// TVB-modified minmod: keeps `a` when |a| <= M h^2.
inline double minmod_tvb(double a, double b, double c, double m_h2) {
  if (std::abs(a) <= m_h2) return a;
  return minmod(a, b, c);
}

/// Component-wise TVB minmod limiter on conserved variables. Elements whose
/// trace deviations survive the modified minmod are left untouched; others
/// are replaced by a limited linear polynomial with the same mean.
inline MacroField tvb_limit(const MacroField& U, const Discretization& d, const LimiterConfig& cfg) {
  if (cfg.m_tvb < 0.0) throw std::invalid_argument("tvb_limit: m_tvb must be nonnegative");
  if (!cfg.enabled || d.q() < 2) return U;

  const int nx = d.n_x();
  const int q = d.q();
  const auto& B = d.basis;
  double xi_sq = 0.0;  // sum_k w_k xi_k^2, = 1/12 for q >= 2
  for (int k = 0; k < q; ++k) xi_sq += B.weights[k] * B.nodes[k] * B.nodes[k];

  MacroField out = U;
  std::vector<double> mean(static_cast<size_t>(nx + 2));
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < nx; ++i) {
      double s = 0.0;
      for (int k = 0; k < q; ++k) s += B.weights[k] * U.values[3 * (i * q + k) + c];
      mean[i + 1] = s;
    }
    switch (d.mesh.boundary) {
      case BoundaryKind::periodic:
        mean[0] = mean[nx];
        mean[nx + 1] = mean[1];
        break;
      case BoundaryKind::dirichlet:
        mean[0] = d.boundary.left[c];
        mean[nx + 1] = d.boundary.right[c];
        break;
      case BoundaryKind::extrapolation:
        mean[0] = mean[1];
        mean[nx + 1] = mean[nx];
        break;
    }

    for (int i = 0; i < nx; ++i) {
      const double h = d.mesh.h(i);
      const double m_h2 = cfg.m_tvb * h * h;
      const double ubar = mean[i + 1];
      const double dplus = mean[i + 2] - ubar;
      const double dminus = ubar - mean[i];
      double right = 0.0, left = 0.0;
      for (int k = 0; k < q; ++k) {
        const double uk = U.values[3 * (i * q + k) + c];
        right += B.endpoint_right[k] * uk;
        left += B.endpoint_left[k] * uk;
      }
      const double dev_r = right - ubar;
      const double dev_l = ubar - left;
      const double mod_r = minmod_tvb(dev_r, dplus, dminus, m_h2);
      const double mod_l = minmod_tvb(dev_l, dplus, dminus, m_h2);
      if (mod_r == dev_r && mod_l == dev_l) continue;

      // Linear Legendre mode on (-1/2, 1/2): u ~ ubar + slope * xi.
      double slope = 0.0;
      for (int k = 0; k < q; ++k) slope += B.weights[k] * B.nodes[k] * U.values[3 * (i * q + k) + c];
      slope /= xi_sq;
      const double half = minmod(0.5 * slope, dplus, dminus);
      for (int k = 0; k < q; ++k) out.values[3 * (i * q + k) + c] = ubar + 2.0 * half * B.nodes[k];
    }
  }
  return out;
}

}  // namespace mmdg
