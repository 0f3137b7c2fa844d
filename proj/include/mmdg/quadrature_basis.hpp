#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmdg {

/// Lagrangian nodal basis on the reference element (-1/2, 1/2), with nodes at
/// the q Gauss-Legendre points. Polynomial degree is q-1; q is the number of
/// quadrature points per element (the NDG(q) label).
struct NodalBasis {
  int q = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
  /// phi_k(-1/2) and phi_k(+1/2).
  std::vector<double> endpoint_left;
  std::vector<double> endpoint_right;
  /// Row-major q x q: deriv[k*q + kp] = d phi_k / d xi at node kp.
  std::vector<double> deriv;

  double d(int k, int kp) const { return deriv[static_cast<size_t>(k * q + kp)]; }

  /// phi_k(xi).
  double value(int k, double xi) const {
    double p = 1.0;
    for (int m = 0; m < q; ++m) {
      if (m == k) continue;
      p *= (xi - nodes[m]) / (nodes[k] - nodes[m]);
    }
    return p;
  }

  /// d phi_k / d xi at xi.
  double derivative(int k, double xi) const {
    double sum = 0.0;
    for (int m = 0; m < q; ++m) {
      if (m == k) continue;
      double term = 1.0 / (nodes[k] - nodes[m]);
      for (int l = 0; l < q; ++l) {
        if (l == k || l == m) continue;
        term *= (xi - nodes[l]) / (nodes[k] - nodes[l]);
      }
      sum += term;
    }
    return sum;
  }
};

namespace detail {

/// Legendre P_n(x) and its derivative by the three-term recurrence.
inline void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace detail

/// Gauss-Legendre rule on (-1/2, 1/2) plus Lagrange basis data at its nodes.
inline NodalBasis build_basis(int q) {
  if (q < 1 || q > 8) {
    throw std::invalid_argument("build_basis: q must be in [1, 8], got " +
                                std::to_string(q));
  }
  NodalBasis b;
  b.q = q;
  b.nodes.assign(q, 0.0);
  b.weights.assign(q, 0.0);

  // Newton on P_q from the Chebyshev-like initial guess; roots come out in
  // descending order, stored ascending.
  for (int i = 0; i < q; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double p = 0.0, dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      detail::legendre(q, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    detail::legendre(q, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    b.nodes[q - 1 - i] = 0.5 * x;
    b.weights[q - 1 - i] = 0.5 * w;
  }
  if (q % 2 == 1) b.nodes[q / 2] = 0.0;

  b.endpoint_left.resize(q);
  b.endpoint_right.resize(q);
  b.deriv.resize(static_cast<size_t>(q * q));
  for (int k = 0; k < q; ++k) {
    b.endpoint_left[k] = b.value(k, -0.5);
    b.endpoint_right[k] = b.value(k, 0.5);
    for (int kp = 0; kp < q; ++kp) b.deriv[static_cast<size_t>(k * q + kp)] = b.derivative(k, b.nodes[kp]);
  }
  return b;
}

/// sum_k coeffs_k phi_k(xi).
inline double eval_nodal(std::span<const double> coeffs, const NodalBasis& basis,
                         double xi) {
  double s = 0.0;
  for (int k = 0; k < basis.q; ++k) s += coeffs[k] * basis.value(k, xi);
  return s;
}

}  // namespace mmdg
