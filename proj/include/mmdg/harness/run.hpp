#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/errors.hpp"
#include "mmdg/harness/cases.hpp"
#include "mmdg/harness/metrics.hpp"
#include "mmdg/imex.hpp"
#include "mmdg/ns_reference.hpp"
#include "mmdg/schemes.hpp"

namespace mmdg::harness {

struct ConservationSample {
  double t = 0.0;
  Vec3 defect{0.0, 0.0, 0.0};
};

struct ProfileRow {
  double x, rho, u, T, p, q_eps;
};

struct ProbeSlice {
  double x_requested = 0.0;
  double x_node = 0.0;
  std::vector<double> v;
  std::vector<double> g;
  /// f = M + eps g
  std::vector<double> f;
};

struct RunOutput {
  Discretization disc;
  double t = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  MacroField U;
  /// Microscopic deviation (bgk solvers) or full distribution (explicit-bgk).
  KineticField g;
  std::vector<ProfileRow> profile;
  std::vector<ConservationSample> conservation;
  std::vector<ProbeSlice> probes;

  std::vector<double> component(int which) const {
    std::vector<double> out;
    out.reserve(profile.size());
    for (const auto& r : profile) out.push_back(which == 0 ? r.rho : which == 1 ? r.u : r.T);
    return out;
  }
  std::vector<double> rho() const { return component(0); }
  std::vector<double> velocity() const { return component(1); }
  std::vector<double> temperature() const { return component(2); }
};

/// Nodal interpolation of the initial macro field.
inline MacroField initial_macro(const CaseSpec& c, const Discretization& d) {
  MacroField U = d.macro_field();
  for (int n = 0; n < d.nodes(); ++n) U.set(n, c.initial_U(d.node_x(n)));
  return U;
}

inline KineticField initial_micro(const CaseSpec& c, const Discretization& d, const MacroField& U) {
  KineticField g = d.kinetic_field();
  if (!c.initial_g) return g;
  for (int n = 0; n < d.nodes(); ++n) c.initial_g(d.node_x(n), U.at(n), d.eps.node(n), d.grid, g.node(n));
  return g;
}

namespace detail {

inline std::vector<ProfileRow> build_profile(const Discretization& d, const MacroField& U,
                                             const KineticField* g, bool g_is_f) {
  std::vector<ProfileRow> rows;
  rows.reserve(static_cast<size_t>(d.nodes()));
  std::vector<double> work(static_cast<size_t>(d.n_v()));
  for (int n = 0; n < d.nodes(); ++n) {
    const Primitives s = primitives(U.at(n));
    double q = 0.0;
    if (g) {
      if (g_is_f) {
        // g = (f - M)/eps
        maxwellian(s, d.grid, work);
        const auto fn = g->node(n);
        const double e = d.eps.node(n);
        for (int j = 0; j < d.n_v(); ++j) work[j] = e > 0.0 ? (fn[j] - work[j]) / e : 0.0;
        q = rescaled_heat_flux(work, s.u, d.grid);
      } else {
        q = rescaled_heat_flux(g->node(n), s.u, d.grid);
      }
    }
    rows.push_back({d.node_x(n), s.rho, s.u, s.T, s.p, q});
  }
  return rows;
}

inline int nearest_node(const Discretization& d, double x) {
  int best = 0;
  double dist = std::numeric_limits<double>::infinity();
  for (int n = 0; n < d.nodes(); ++n) {
    const double dd = std::abs(d.node_x(n) - x);
    if (dd < dist) {
      dist = dd;
      best = n;
    }
  }
  return best;
}

inline Vec3 defect_of_f(const KineticField& f, const MacroField& U, const Discretization& d) {
  // For the full distribution, eps<m g> = <m f> - <m M_U> with U = <m f>; report the
  // Maxwellian truncation <m M_U> - U.
  Vec3 worst{0, 0, 0};
  std::vector<double> M(static_cast<size_t>(d.n_v()));
  for (int n = 0; n < d.nodes(); ++n) {
    const Primitives s = primitives(U.at(n));
    maxwellian(s, d.grid, M);
    const Vec3 mm = d.grid.moment_vector(M);
    const Vec3 mf = d.grid.moment_vector(f.node(n));
    for (int c = 0; c < 3; ++c) worst[c] = std::max(worst[c], std::abs(mf[c] - mm[c]));
  }
  return worst;
}

}  // namespace detail

/// Runs one case to t_end and collects profiles, diagnostics and probes.
inline RunOutput run(const CaseSpec& c) {
  const auto wall_start = std::chrono::steady_clock::now();
  RunOutput out;
  out.disc = make_discretization(c);
  const Discretization& d = out.disc;
  const ButcherPair pair = pair_by_name(c.pair);
  const double dx = d.mesh.h();

  MacroField U = initial_macro(c, d);
  KineticField g;
  double eps_const = c.eps.variable ? 0.0 : c.eps.value;
  if (c.solver == SolverKind::ns && c.eps.variable) {
    throw std::invalid_argument("ns solver requires a constant eps");
  }
  if (c.solver == SolverKind::euler) eps_const = 0.0;

  if (c.solver == SolverKind::bgk) {
    g = initial_micro(c, d, U);
  } else if (c.solver == SolverKind::explicit_bgk) {
    // f = M_U + eps g0
    const KineticField g0 = initial_micro(c, d, U);
    g = d.kinetic_field();
    for (int n = 0; n < d.nodes(); ++n) {
      const Primitives s = primitives(U.at(n));
      maxwellian(s, d.grid, g.node(n));
      const double e = d.eps.node(n);
      auto fn = g.node(n);
      const auto gn = g0.node(n);
      for (int j = 0; j < d.n_v(); ++j) fn[j] += e * gn[j];
    }
    U = moments_of(g, d);
  }
  if (c.limiter.enabled && c.solver != SolverKind::explicit_bgk) U = tvb_limit(U, d, c.limiter);

  auto record = [&](double t) {
    ConservationSample s;
    s.t = t;
    if (c.solver == SolverKind::bgk) s.defect = conservation_defect(g, d);
    if (c.solver == SolverKind::explicit_bgk) s.defect = detail::defect_of_f(g, U, d);
    out.conservation.push_back(s);
  };

  double t = 0.0;
  long steps = 0;
  record(t);
  StepOptions opts;
  opts.scheme = c.scheme;
  opts.limiter = c.limiter;
  const double eps_min = d.eps.min_value();
  while (t < c.t_end) {
    try {
      double dt;
      if (c.solver == SolverKind::explicit_bgk) {
        dt = cfl_dt(U, c.v_cut, c.q, dx, c.cfl);
        if (eps_min > 0.0) dt = std::min(dt, eps_min);
      } else {
        dt = cfl_dt(U, c.v_cut, c.q, dx, c.cfl);
      }
      if (t + dt >= c.t_end * (1.0 - 1e-14)) dt = c.t_end - t;
      if (dt <= 0.0) break;

      switch (c.solver) {
        case SolverKind::bgk: {
          KineticState next = step({U, g}, dt, pair, d, opts);
          U = std::move(next.U);
          g = std::move(next.g);
          break;
        }
        case SolverKind::ns:
        case SolverKind::euler:
          U = ns_step(U, dt, pair, d, eps_const, c.limiter);
          break;
        case SolverKind::explicit_bgk:
          g = explicit_bgk_step(g, dt, d);
          U = moments_of(g, d);
          break;
      }
      t = (t + dt >= c.t_end * (1.0 - 1e-14)) ? c.t_end : t + dt;
      ++steps;
      record(t);
    } catch (const SolverError& err) {
      throw err.with_step(steps + 1).with_case(c.name);
    }
  }

  out.t = t;
  out.steps = steps;
  out.U = U;
  out.g = g;
  const bool has_kinetic = c.solver == SolverKind::bgk || c.solver == SolverKind::explicit_bgk;
  out.profile = detail::build_profile(d, U, has_kinetic ? &out.g : nullptr, c.solver == SolverKind::explicit_bgk);

  for (double xp : c.probes) {
    ProbeSlice p;
    p.x_requested = xp;
    const int n = detail::nearest_node(d, xp);
    p.x_node = d.node_x(n);
    p.v = d.grid.points();
    p.g.assign(static_cast<size_t>(d.n_v()), 0.0);
    p.f.assign(static_cast<size_t>(d.n_v()), 0.0);
    const Primitives s = primitives(U.at(n));
    maxwellian(s, d.grid, p.f);
    const double e = d.eps.node(n);
    if (c.solver == SolverKind::explicit_bgk) {
      const auto fn = out.g.node(n);
      for (int j = 0; j < d.n_v(); ++j) {
        p.g[j] = e > 0.0 ? (fn[j] - p.f[j]) / e : 0.0;
        p.f[j] = fn[j];
      }
    } else if (c.solver == SolverKind::bgk) {
      const auto gn = out.g.node(n);
      for (int j = 0; j < d.n_v(); ++j) {
        p.g[j] = gn[j];
        p.f[j] += e * gn[j];
      }
    }
    out.probes.push_back(std::move(p));
  }

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return out;
}

/// Values of a run's profile component sampled at the nodes of another
/// discretization, through the run's nodal polynomials.
inline std::vector<double> sample_at(const RunOutput& r, int which, const Discretization& target) {
  const Discretization& d = r.disc;
  const std::vector<double> vals = r.component(which);
  std::vector<double> out(static_cast<size_t>(target.nodes()));
  for (int n = 0; n < target.nodes(); ++n) {
    const double x = target.node_x(n);
    int i = static_cast<int>(std::floor((x - d.mesh.a) / d.mesh.h()));
    i = std::clamp(i, 0, d.n_x() - 1);
    const double xi = (x - d.mesh.center(i)) / d.mesh.h();
    out[n] = eval_nodal(std::span<const double>(vals.data() + static_cast<size_t>(i) * d.q(), d.q()), d.basis, xi);
  }
  return out;
}

}  // namespace mmdg::harness
