#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/kinetic_core.hpp"

namespace mmdg {

/// Scheme I discretizes (I - Pi)(v dM/dx) directly; Scheme II uses the
/// closed form A (dT/dx)/sqrt(T) M with a DG approximation of dT/dx.
enum class SchemeKind { scheme1, scheme2 };

inline SchemeKind parse_scheme(const std::string& s) {
  if (s == "1" || s == "I" || s == "scheme1" || s == "bgk1") return SchemeKind::scheme1;
  if (s == "2" || s == "II" || s == "scheme2" || s == "bgk2") return SchemeKind::scheme2;
  throw std::invalid_argument("unknown scheme '" + s + "'");
}

/// Nodal primitives and Maxwellians of a macro field.
struct NodeEquilibrium {
  std::vector<Primitives> prim;
  KineticField M;
};

inline NodeEquilibrium equilibrium(const MacroField& U, const Discretization& d) {
  NodeEquilibrium eq;
  eq.prim.resize(static_cast<size_t>(d.nodes()));
  eq.M = d.kinetic_field();
  for (int n = 0; n < d.nodes(); ++n) {
    ErrorContext where;
    where.element = n / d.q();
    where.node = n % d.q();
    where.x = d.node_x(n);
    eq.prim[n] = primitives(U.at(n), where);
    maxwellian(eq.prim[n], d.grid, eq.M.node(n));
  }
  return eq;
}

/// Counts projection applications; Scheme I applies two per node and RHS,
/// Scheme II one.
struct ProjectionCounter {
  long count = 0;
};

/// out = -(I - Pi) D at every node, in place on D.
inline void apply_complement_projection(KineticField& D, const NodeEquilibrium& eq,
                                        const Discretization& d, ProjectionCounter* counter) {
  std::vector<double> proj(static_cast<size_t>(d.n_v()));
  for (int n = 0; n < d.nodes(); ++n) {
    auto Dn = D.node(n);
    project(Dn, eq.prim[n], eq.M.node(n), d.grid, proj);
    for (int j = 0; j < d.n_v(); ++j) Dn[j] = proj[j] - Dn[j];
  }
  if (counter) counter->count += d.nodes();
}

/// Explicit micro term: -(I - Pi) D_{h,1}(eps v g).
inline KineticField transport_term(const NodeEquilibrium& eq, const KineticField& g,
                                   const Discretization& d, ProjectionCounter* counter = nullptr) {
  KineticField D = dh1_upwind(g, d);
  apply_complement_projection(D, eq, d, counter);
  return D;
}

/// Stiff source s^(2), a function of U only.
///   Scheme I:  -(I - Pi) D_{h,2}(v M)
///   Scheme II: -A r M / sqrt(T), r = DG derivative of T
inline KineticField stiff_source(SchemeKind scheme, const NodeEquilibrium& eq,
                                 const Discretization& d, ProjectionCounter* counter = nullptr) {
  if (scheme == SchemeKind::scheme1) {
    KineticField D = dh2_vM(eq.M, d);
    apply_complement_projection(D, eq, d, counter);
    return D;
  }
  std::vector<double> T(static_cast<size_t>(d.nodes()));
  for (int n = 0; n < d.nodes(); ++n) T[n] = eq.prim[n].T;
  const std::vector<double> r = compute_r(T, d);
  KineticField s = d.kinetic_field();
  for (int n = 0; n < d.nodes(); ++n) ce_leading_g(eq.prim[n], r[n], eq.M.node(n), d.grid, s.node(n));
  return s;
}

/// Semi-discrete right-hand side split into explicit and stiff parts.
struct SplitRhs {
  MacroField macro;
  /// -(I - Pi) D_{h,1}(eps v g)
  KineticField micro_explicit;
  /// -g + s^(2)
  KineticField micro_stiff;
  long projections = 0;
};

inline SplitRhs split_rhs(SchemeKind scheme, const MacroField& U, const KineticField& g,
                          const Discretization& d, double alpha) {
  const NodeEquilibrium eq = equilibrium(U, d);
  ProjectionCounter counter;
  SplitRhs out;
  out.macro = macro_rhs(U, g, d, alpha);
  out.micro_explicit = transport_term(eq, g, d, &counter);
  out.micro_stiff = stiff_source(scheme, eq, d, &counter);
  for (size_t idx = 0; idx < g.values.size(); ++idx) out.micro_stiff.values[idx] -= g.values[idx];
  out.projections = counter.count;
  return out;
}

inline SplitRhs rhs_scheme1(const MacroField& U, const KineticField& g, const Discretization& d,
                            double alpha) {
  return split_rhs(SchemeKind::scheme1, U, g, d, alpha);
}

inline SplitRhs rhs_scheme2(const MacroField& U, const KineticField& g, const Discretization& d,
                            double alpha) {
  return split_rhs(SchemeKind::scheme2, U, g, d, alpha);
}

/// Moments U(f) at every node.
inline MacroField moments_of(const KineticField& f, const Discretization& d) {
  MacroField U = d.macro_field();
  for (int n = 0; n < d.nodes(); ++n) U.set(n, d.grid.moment_vector(f.node(n)));
  return U;
}

/// Full BGK right-hand side -D_h(v f) + (M_{U(f)} - f)/eps with upwind
/// transport. Dirichlet ghosts carry the boundary Maxwellians.
inline KineticField rhs_explicit_bgk(const KineticField& f, const Discretization& d) {
  std::vector<double> gl, gr;
  if (d.mesh.boundary == BoundaryKind::dirichlet) {
    const Primitives sl = primitives(d.boundary.left);
    const Primitives sr = primitives(d.boundary.right);
    gl = maxwellian(sl.rho, sl.u, sl.T, d.grid);
    gr = maxwellian(sr.rho, sr.u, sr.T, d.grid);
  }
  KineticField out = upwind_derivative(f, d, false, gl, gr);
  std::vector<double> M(static_cast<size_t>(d.n_v()));
  for (int n = 0; n < d.nodes(); ++n) {
    ErrorContext where;
    where.element = n / d.q();
    where.node = n % d.q();
    where.x = d.node_x(n);
    const Primitives s = primitives(d.grid.moment_vector(f.node(n)), where);
    maxwellian(s, d.grid, M);
    const double inv_eps = 1.0 / d.eps.node(n);
    auto fn = f.node(n);
    auto on = out.node(n);
    for (int j = 0; j < d.n_v(); ++j) on[j] = -on[j] + (M[j] - fn[j]) * inv_eps;
  }
  return out;
}

/// Forward Euler step of the full BGK system; returns f^{n+1}.
inline KineticField explicit_bgk_step(const KineticField& f, double dt, const Discretization& d) {
  KineticField next = f;
  const KineticField rhs = rhs_explicit_bgk(f, d);
  for (size_t idx = 0; idx < next.values.size(); ++idx) next.values[idx] += dt * rhs.values[idx];
  return next;
}

}  // namespace mmdg
