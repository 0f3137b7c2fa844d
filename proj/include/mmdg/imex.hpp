#pragma once

#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/limiter.hpp"
#include "mmdg/schemes.hpp"

namespace mmdg {

/// Double Butcher tableau: explicit (at, bt, ct) and diagonally implicit
/// (a, b, c), both s x s row-major.
struct ButcherPair {
  std::string name;
  int s = 0;
  std::vector<double> at, bt, ct;
  std::vector<double> a, b, c;
  bool globally_stiffly_accurate = false;

  double explicit_coef(int l, int j) const { return at[static_cast<size_t>(l * s + j)]; }
  double implicit_coef(int l, int j) const { return a[static_cast<size_t>(l * s + j)]; }
};

namespace detail {
inline void fill_abscissae(ButcherPair& p) {
  p.ct.assign(p.s, 0.0);
  p.c.assign(p.s, 0.0);
  for (int i = 0; i < p.s; ++i) {
    for (int j = 0; j < i; ++j) p.ct[i] += p.explicit_coef(i, j);
    for (int j = 0; j <= i; ++j) p.c[i] += p.implicit_coef(i, j);
  }
}
}  // namespace detail

/// ARS(4,4,3) written as a 5-stage globally stiffly accurate pair.
inline ButcherPair ars443() {
  ButcherPair p;
  p.name = "ars443";
  p.s = 5;
  p.at = {0.0,       0.0,        0.0,       0.0,        0.0,  //
          1.0 / 2,   0.0,        0.0,       0.0,        0.0,  //
          11.0 / 18, 1.0 / 18,   0.0,       0.0,        0.0,  //
          5.0 / 6,   -5.0 / 6,   1.0 / 2,   0.0,        0.0,  //
          1.0 / 4,   7.0 / 4,    3.0 / 4,   -7.0 / 4,   0.0};
  p.bt = {1.0 / 4, 7.0 / 4, 3.0 / 4, -7.0 / 4, 0.0};
  p.a = {0.0, 0.0,      0.0,       0.0,     0.0,  //
         0.0, 1.0 / 2,  0.0,       0.0,     0.0,  //
         0.0, 1.0 / 6,  1.0 / 2,   0.0,     0.0,  //
         0.0, -1.0 / 2, 1.0 / 2,   1.0 / 2, 0.0,  //
         0.0, 3.0 / 2,  -3.0 / 2,  1.0 / 2, 1.0 / 2};
  p.b = {0.0, 3.0 / 2, -3.0 / 2, 1.0 / 2, 1.0 / 2};
  p.globally_stiffly_accurate = true;
  detail::fill_abscissae(p);
  return p;
}

/// Forward Euler (explicit) / backward Euler (implicit) as a 2-stage GSA pair.
inline ButcherPair euler_pair() {
  ButcherPair p;
  p.name = "euler";
  p.s = 2;
  p.at = {0.0, 0.0, 1.0, 0.0};
  p.bt = {1.0, 0.0};
  p.a = {0.0, 0.0, 0.0, 1.0};
  p.b = {0.0, 1.0};
  p.globally_stiffly_accurate = true;
  detail::fill_abscissae(p);
  return p;
}

inline ButcherPair pair_by_name(const std::string& name) {
  if (name == "ars443") return ars443();
  if (name == "euler") return euler_pair();
  throw std::invalid_argument("unknown IMEX pair '" + name + "'");
}

struct GsaReport {
  bool pass = true;
  std::vector<std::string> violations;
};

/// Checks the tableau shape, the row-sum abscissae, and (if flagged) the
/// globally-stiffly-accurate conditions, to 1e-14.
inline GsaReport validate_gsa(const ButcherPair& p) {
  constexpr double tol = 1e-14;
  GsaReport rep;
  auto fail = [&](const std::string& msg) {
    rep.pass = false;
    rep.violations.push_back(msg);
  };
  const size_t ss = static_cast<size_t>(p.s) * p.s;
  if (p.s < 1 || p.at.size() != ss || p.a.size() != ss || p.bt.size() != static_cast<size_t>(p.s) ||
      p.b.size() != static_cast<size_t>(p.s) || p.ct.size() != static_cast<size_t>(p.s) ||
      p.c.size() != static_cast<size_t>(p.s)) {
    fail("tableau dimensions inconsistent with s");
    return rep;
  }
  for (int i = 0; i < p.s; ++i) {
    double ct = 0.0, c = 0.0;
    for (int j = 0; j < p.s; ++j) {
      if (j >= i && std::abs(p.explicit_coef(i, j)) > tol) {
        fail("explicit table not strictly lower triangular at (" + std::to_string(i + 1) + "," +
             std::to_string(j + 1) + ")");
      }
      if (j > i && std::abs(p.implicit_coef(i, j)) > tol) {
        fail("implicit table not lower triangular at (" + std::to_string(i + 1) + "," +
             std::to_string(j + 1) + ")");
      }
      if (j < i) ct += p.explicit_coef(i, j);
      if (j <= i) c += p.implicit_coef(i, j);
    }
    if (p.implicit_coef(i, i) < 0.0) fail("negative implicit diagonal at stage " + std::to_string(i + 1));
    if (std::abs(ct - p.ct[i]) > tol) fail("c~_" + std::to_string(i + 1) + " != row sum of A~");
    if (std::abs(c - p.c[i]) > tol) fail("c_" + std::to_string(i + 1) + " != row sum of A");
  }
  if (p.globally_stiffly_accurate) {
    const int last = p.s - 1;
    if (std::abs(p.ct[last] - 1.0) > tol) fail("c~_s != 1");
    if (std::abs(p.c[last] - 1.0) > tol) fail("c_s != 1");
    for (int j = 0; j < p.s; ++j) {
      if (std::abs(p.explicit_coef(last, j) - p.bt[j]) > tol) {
        fail("a~_s" + std::to_string(j + 1) + " != b~_" + std::to_string(j + 1));
      }
      if (std::abs(p.implicit_coef(last, j) - p.b[j]) > tol) {
        fail("a_s" + std::to_string(j + 1) + " != b_" + std::to_string(j + 1));
      }
    }
  }
  return rep;
}

/// CFL constant for NDG(q), q = 1..4.
inline double cfl_constant(int q) {
  switch (q) {
    case 1:
      return 0.2;
    case 2:
      return 0.1;
    case 3:
      return 0.05;
    case 4:
      return 0.01;
    default:
      throw std::invalid_argument("cfl_constant: no default CFL number for q=" + std::to_string(q) +
                                  "; pass an explicit override");
  }
}

/// dt = C dx / max(Lambda, v_cut) (q <= 3) or C dx^{4/3} / max(Lambda, v_cut) (q >= 4).
inline double cfl_dt(double lambda, double v_cut, int q, double dx,
                     std::optional<double> c_override = std::nullopt) {
  const double C = c_override ? *c_override : cfl_constant(q);
  const double speed = std::max(lambda, v_cut);
  const double len = q >= 4 ? std::pow(dx, 4.0 / 3.0) : dx;
  return C * len / speed;
}

inline double cfl_dt(const MacroField& U, double v_cut, int q, double dx,
                     std::optional<double> c_override = std::nullopt) {
  return cfl_dt(max_wave_speed(U), v_cut, q, dx, c_override);
}

/// Micro-macro state (U, g).
struct KineticState {
  MacroField U;
  KineticField g;
};

struct StepOptions {
  SchemeKind scheme = SchemeKind::scheme2;
  LimiterConfig limiter{};
  /// Lax-Friedrichs speed; computed from U^n when unset.
  std::optional<double> alpha;
};

/// Per-stage record of a step.
struct StageHistory {
  std::vector<MacroField> U;
  std::vector<KineticField> g;
  /// -g^(l) + s2^(l)
  std::vector<KineticField> stiff;
  /// s2^(l)
  std::vector<KineticField> source;
  long projections = 0;
};

/// Diagonal implicit solve for g^(l) at every node and velocity:
/// (eps + dt a_ll) g = eps g^n + dt sum_{j<l} (a~_lj E_j + a_lj S_j) + dt a_ll s2^(l).
inline KineticField solve_stage_g(const KineticField& g_n, const std::vector<KineticField>& E,
                                  const std::vector<KineticField>& S, const KineticField& source,
                                  const ButcherPair& pair, int l, double dt, const Discretization& d) {
  const double all = pair.implicit_coef(l, l);
  KineticField g = d.kinetic_field();
  for (int n = 0; n < d.nodes(); ++n) {
    const double e = d.eps.node(n);
    const double denom = e + dt * all;
    const size_t base = static_cast<size_t>(n) * d.n_v();
    for (int jv = 0; jv < d.n_v(); ++jv) {
      const size_t idx = base + jv;
      double rhs = e * g_n.values[idx];
      for (int j = 0; j < l; ++j) {
        rhs += dt * pair.explicit_coef(l, j) * E[j].values[idx];
        rhs += dt * pair.implicit_coef(l, j) * S[j].values[idx];
      }
      rhs += dt * all * source.values[idx];
      g.values[idx] = denom > 0.0 ? rhs / denom : g_n.values[idx];
    }
  }
  return g;
}

/// One IMEX Runge-Kutta step of the micro-macro system. Per stage l:
/// U^(l) explicitly, optional limiting, s2^(l) from U^(l), then the diagonal
/// solve for g^(l) node by node. For a GSA pair the result is the last stage.
inline KineticState step(const KineticState& state, double dt, const ButcherPair& pair,
                         const Discretization& d, const StepOptions& opts = {},
                         StageHistory* history = nullptr) {
  const int s = pair.s;
  const size_t kin = state.g.values.size();
  const size_t mac = state.U.values.size();
  const double alpha = opts.alpha ? *opts.alpha : max_wave_speed(state.U);

  std::vector<MacroField> L(s);        // macro RHS at stage j
  std::vector<KineticField> E(s);      // -(I-Pi) D_{h,1}(eps v g^(j))
  std::vector<KineticField> S(s);      // -g^(j) + s2^(j)
  KineticState stage;
  ProjectionCounter counter;

  for (int l = 0; l < s; ++l) {
    try {
      stage.U = state.U;
      for (int j = 0; j < l; ++j) {
        const double w = dt * pair.explicit_coef(l, j);
        if (w == 0.0) continue;
        for (size_t idx = 0; idx < mac; ++idx) stage.U.values[idx] += w * L[j].values[idx];
      }
      if (opts.limiter.enabled) stage.U = tvb_limit(stage.U, d, opts.limiter);

      const NodeEquilibrium eq = equilibrium(stage.U, d);
      const KineticField source = stiff_source(opts.scheme, eq, d, &counter);

      const double all = pair.implicit_coef(l, l);
      if (l == 0 && all == 0.0) {
        stage.g = state.g;
      } else {
        stage.g = solve_stage_g(state.g, E, S, source, pair, l, dt, d);
      }

      S[l] = source;
      for (size_t idx = 0; idx < kin; ++idx) S[l].values[idx] -= stage.g.values[idx];

      if (history) {
        history->U.push_back(stage.U);
        history->g.push_back(stage.g);
        history->stiff.push_back(S[l]);
        history->source.push_back(source);
      }

      // The last stage of a GSA pair is the update; its RHS is never needed.
      const bool last = (l == s - 1);
      if (!(last && pair.globally_stiffly_accurate)) {
        L[l] = macro_rhs(stage.U, stage.g, d, alpha);
        E[l] = transport_term(eq, stage.g, d, &counter);
      }
    } catch (const SolverError& err) {
      throw err.with_stage(l + 1);
    }
  }
  if (history) history->projections = counter.count;

  if (pair.globally_stiffly_accurate) return stage;

  KineticState next = state;
  for (int l = 0; l < s; ++l) {
    const double wt = dt * pair.bt[l];
    const double wi = dt * pair.b[l];
    for (size_t idx = 0; idx < mac; ++idx) next.U.values[idx] += wt * L[l].values[idx];
    for (int n = 0; n < d.nodes(); ++n) {
      const double inv_e = 1.0 / d.eps.node(n);
      const size_t base = static_cast<size_t>(n) * d.n_v();
      for (int jv = 0; jv < d.n_v(); ++jv) {
        const size_t idx = base + jv;
        next.g.values[idx] += inv_e * (wt * E[l].values[idx] + wi * S[l].values[idx]);
      }
    }
  }
  if (opts.limiter.enabled) next.U = tvb_limit(next.U, d, opts.limiter);
  return next;
}

/// Split scalar ODE y' = lambda_e y + lambda_i y integrated with the pair;
/// the implicit part is solved exactly per stage.
inline double integrate_split_linear(const ButcherPair& pair, double lambda_e, double lambda_i, double y0,
                                     double t_end, int n_steps) {
  const double dt = t_end / n_steps;
  double y = y0;
  std::vector<double> ye(pair.s), yi(pair.s);
  for (int n = 0; n < n_steps; ++n) {
    for (int l = 0; l < pair.s; ++l) {
      double rhs = y;
      for (int j = 0; j < l; ++j) {
        rhs += dt * pair.explicit_coef(l, j) * ye[j];
        rhs += dt * pair.implicit_coef(l, j) * yi[j];
      }
      const double stage = rhs / (1.0 - dt * pair.implicit_coef(l, l) * lambda_i);
      ye[l] = lambda_e * stage;
      yi[l] = lambda_i * stage;
    }
    for (int l = 0; l < pair.s; ++l) y += dt * (pair.bt[l] * ye[l] + pair.b[l] * yi[l]);
  }
  return y;
}

}  // namespace mmdg
