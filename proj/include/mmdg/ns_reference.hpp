#pragma once

#include <optional>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/imex.hpp"
#include "mmdg/limiter.hpp"

// Local DG discretization of the 1D compressible Navier-Stokes system
//   U_t + F(U)_x = eps (0, 0, 3/2 rho T T_x)_x
// with one auxiliary variable r ~ T_x. The viscous momentum term vanishes
// identically in one dimension.

namespace mmdg {

/// Viscous contribution to dU/dt, eps * (0, 0, 3/2 D_h(rho T r)), with
/// (rho T r)^ taken as the flux member of the pair opposite to T^.
inline MacroField ns_viscous_rhs(const MacroField& U, const Discretization& d, double eps) {
  MacroField out = d.macro_field();
  if (eps == 0.0) return out;
  const std::vector<double> T = temperatures(U);
  const std::vector<double> r = compute_r(T, d);
  std::vector<double> w(T.size());
  for (int n = 0; n < d.nodes(); ++n) w[n] = U.values[3 * n] * T[n] * r[n];

  // Dirichlet ghosts are constant states, so r = 0 there.
  const double zero = 0.0;
  const Traces tr = interface_traces(d, w, 1, std::span<const double>(&zero, 1),
                                     std::span<const double>(&zero, 1));
  std::vector<double> hat(static_cast<size_t>(d.n_x() + 1));
  for (int i = 0; i <= d.n_x(); ++i) hat[i] = pair_flux(d.flux, PairMember::flux, tr.minus[i], tr.plus[i]);
  std::vector<double> dw(T.size());
  weak_derivative(d, w, 1, hat, dw);
  for (int n = 0; n < d.nodes(); ++n) out.values[3 * n + 2] = 1.5 * eps * dw[n];
  return out;
}

/// Semi-discrete local DG right-hand side: Euler part with LF flux plus the
/// viscous heat-flux term.
inline MacroField ns_rhs(const MacroField& U, const Discretization& d, double eps, double alpha) {
  const std::vector<double> zero_moments(static_cast<size_t>(3 * d.nodes()), 0.0);
  MacroField out = macro_rhs_from_moments(U, zero_moments, d, alpha);
  const MacroField vis = ns_viscous_rhs(U, d, eps);
  for (size_t idx = 0; idx < out.values.size(); ++idx) out.values[idx] += vis.values[idx];
  return out;
}

/// Explicit RK step using the explicit half (at, bt) of an IMEX pair.
inline MacroField ns_step(const MacroField& Un, double dt, const ButcherPair& pair, const Discretization& d,
                          double eps, const LimiterConfig& limiter = {},
                          std::optional<double> alpha_override = std::nullopt) {
  const int s = pair.s;
  const double alpha = alpha_override ? *alpha_override : max_wave_speed(Un);
  std::vector<MacroField> L(s);
  MacroField stage;
  for (int l = 0; l < s; ++l) {
    try {
      stage = Un;
      for (int j = 0; j < l; ++j) {
        const double w = dt * pair.explicit_coef(l, j);
        if (w == 0.0) continue;
        for (size_t idx = 0; idx < stage.values.size(); ++idx) stage.values[idx] += w * L[j].values[idx];
      }
      if (limiter.enabled) stage = tvb_limit(stage, d, limiter);
      if (l == s - 1 && pair.globally_stiffly_accurate) break;
      L[l] = ns_rhs(stage, d, eps, alpha);
    } catch (const SolverError& err) {
      throw err.with_stage(l + 1);
    }
  }
  if (pair.globally_stiffly_accurate) return stage;

  MacroField next = Un;
  for (int l = 0; l < s; ++l) {
    const double w = dt * pair.bt[l];
    for (size_t idx = 0; idx < next.values.size(); ++idx) next.values[idx] += w * L[l].values[idx];
  }
  if (limiter.enabled) next = tvb_limit(next, d, limiter);
  return next;
}

}  // namespace mmdg
