#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmdg/errors.hpp"
#include "mmdg/kinetic_core.hpp"
#include "mmdg/quadrature_basis.hpp"
#include "mmdg/velocity_grid.hpp"

namespace mmdg {

enum class BoundaryKind { periodic, dirichlet, extrapolation };

/// Uniform partition of [a, b] into n_x elements.
struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int n_x = 1;
  BoundaryKind boundary = BoundaryKind::periodic;

  Mesh1D() = default;
  Mesh1D(double a_, double b_, int n_x_, BoundaryKind bc) : a(a_), b(b_), n_x(n_x_), boundary(bc) {
    if (!(b > a) || n_x < 1) {
      throw std::invalid_argument("Mesh1D: need b > a and n_x >= 1");
    }
  }

  double length() const { return b - a; }
  double h(int /*i*/ = 0) const { return (b - a) / n_x; }
  /// x_{i-1/2} for i = 0..n_x; interface(n_x) == b.
  double interface(int i) const { return i == n_x ? b : a + i * h(); }
  double center(int i) const { return a + (i + 0.5) * h(); }
};

/// Per-node conserved triples; node index n = i*q + k, component c at 3*n + c.
struct MacroField {
  int n_x = 0;
  int q = 0;
  std::vector<double> values;

  MacroField() = default;
  MacroField(int n_x_, int q_) : n_x(n_x_), q(q_), values(static_cast<size_t>(3 * n_x_ * q_), 0.0) {}

  int nodes() const { return n_x * q; }
  Vec3 at(int n) const { return {values[3 * n], values[3 * n + 1], values[3 * n + 2]}; }
  Vec3 at(int i, int k) const { return at(i * q + k); }
  void set(int n, const Vec3& U) {
    values[3 * n] = U[0];
    values[3 * n + 1] = U[1];
    values[3 * n + 2] = U[2];
  }
  void set(int i, int k, const Vec3& U) { set(i * q + k, U); }
  std::span<const double> flat() const { return values; }
};

/// Per-node, per-velocity values; value (n, j) at n*n_v + j.
struct KineticField {
  int n_x = 0;
  int q = 0;
  int n_v = 0;
  std::vector<double> values;

  KineticField() = default;
  KineticField(int n_x_, int q_, int n_v_)
      : n_x(n_x_), q(q_), n_v(n_v_), values(static_cast<size_t>(n_x_) * q_ * n_v_, 0.0) {}

  int nodes() const { return n_x * q; }
  std::span<double> node(int n) { return {values.data() + static_cast<size_t>(n) * n_v, static_cast<size_t>(n_v)}; }
  std::span<const double> node(int n) const {
    return {values.data() + static_cast<size_t>(n) * n_v, static_cast<size_t>(n_v)};
  }
  std::span<double> node(int i, int k) { return node(i * q + k); }
  std::span<const double> node(int i, int k) const { return node(i * q + k); }
};

/// Knudsen number eps(x): closed form plus cached node and interface values.
class EpsCoefficient {
 public:
  EpsCoefficient() = default;

  EpsCoefficient(std::function<double(double)> fn, const Mesh1D& mesh, const NodalBasis& basis)
      : fn_(std::move(fn)) {
    nodal_.resize(static_cast<size_t>(mesh.n_x * basis.q));
    iface_.resize(static_cast<size_t>(mesh.n_x + 1));
    for (int i = 0; i < mesh.n_x; ++i) {
      for (int k = 0; k < basis.q; ++k) {
        nodal_[i * basis.q + k] = check(fn_(mesh.center(i) + mesh.h(i) * basis.nodes[k]));
      }
    }
    for (int i = 0; i <= mesh.n_x; ++i) iface_[i] = check(fn_(mesh.interface(i)));
  }

  static EpsCoefficient constant(double eps, const Mesh1D& mesh, const NodalBasis& basis) {
    EpsCoefficient e([eps](double) { return eps; }, mesh, basis);
    e.constant_ = true;
    return e;
  }

  double operator()(double x) const { return fn_(x); }
  double node(int n) const { return nodal_[n]; }
  double interface(int i) const { return iface_[i]; }
  const std::vector<double>& nodal() const { return nodal_; }
  bool is_constant() const { return constant_; }
  double min_value() const { return *std::min_element(nodal_.begin(), nodal_.end()); }

 private:
  // eps = 0 is accepted as the formal fluid-limit corner; negative is not.
  static double check(double e) {
    if (!(e >= 0.0) || !std::isfinite(e)) {
      throw std::invalid_argument("EpsCoefficient: eps(x) must be finite and nonnegative");
    }
    return e;
  }

  std::function<double(double)> fn_;
  std::vector<double> nodal_;
  std::vector<double> iface_;
  bool constant_ = false;
};

/// Interface-pair selector for (<vmg>^, T^) and (<vmg>^, M^).
enum class FluxSelect { alt_lr, alt_rl, central };

/// Which member of an alternating pair a trace belongs to. The flux member
/// (<vmg>, rho T r) and the state member (T, M) always take opposite sides.
enum class PairMember { flux, state };

inline FluxSelect parse_flux_select(const std::string& s) {
  if (s == "alt-lr" || s == "alternating" || s == "lr") return FluxSelect::alt_lr;
  if (s == "alt-rl" || s == "rl") return FluxSelect::alt_rl;
  if (s == "central") return FluxSelect::central;
  throw std::invalid_argument("unknown flux selector '" + s + "'");
}

inline std::string to_string(FluxSelect f) {
  switch (f) {
    case FluxSelect::alt_lr:
      return "alt-lr";
    case FluxSelect::alt_rl:
      return "alt-rl";
    case FluxSelect::central:
      return "central";
  }
  return "?";
}

/// Ghost states for dirichlet boundaries.
struct BoundaryStates {
  Vec3 left{1.0, 0.0, 0.5};
  Vec3 right{1.0, 0.0, 0.5};
};

/// Everything a spatial operator needs about the discretization.
struct Discretization {
  NodalBasis basis;
  Mesh1D mesh;
  VelocityGrid grid;
  EpsCoefficient eps;
  FluxSelect flux = FluxSelect::alt_lr;
  BoundaryStates boundary;

  int q() const { return basis.q; }
  int n_x() const { return mesh.n_x; }
  int n_v() const { return grid.size(); }
  int nodes() const { return mesh.n_x * basis.q; }
  double node_x(int i, int k) const { return mesh.center(i) + mesh.h(i) * basis.nodes[k]; }
  double node_x(int n) const { return node_x(n / basis.q, n % basis.q); }
  MacroField macro_field() const { return MacroField(n_x(), q()); }
  KineticField kinetic_field() const { return KineticField(n_x(), q(), n_v()); }
};

// ---------------------------------------------------------------------------
// Pointwise fluxes

/// F(U) = (rho u, rho u^2 + p, (E + p) u).
inline Vec3 euler_flux(const Vec3& U) {
  const Primitives s = primitives(U);
  return {U[1], U[1] * s.u + s.p, (U[2] + s.p) * s.u};
}

/// F(U) with p = (gamma - 1)(E - m^2 / 2 rho); needs only rho > 0. Used on
/// interface traces, where a high-order polynomial may dip below T = 0
/// between realizable nodes.
inline Vec3 euler_flux_trace(const Vec3& U, const ErrorContext& where = {}) {
  if (!(U[0] > 0.0)) throw realizability_error("nonpositive trace density rho=" + std::to_string(U[0]), where);
  const double u = U[1] / U[0];
  const double p = (kGamma - 1.0) * (U[2] - 0.5 * U[1] * u);
  return {U[1], U[1] * u + p, (U[2] + p) * u};
}

/// Global Lax-Friedrichs flux with speed alpha.
inline Vec3 lax_friedrichs(const Vec3& Um, const Vec3& Up, double alpha, const ErrorContext& where = {}) {
  const Vec3 fm = euler_flux_trace(Um, where);
  const Vec3 fp = euler_flux_trace(Up, where);
  Vec3 out;
  for (int c = 0; c < 3; ++c) out[c] = 0.5 * (fm[c] + fp[c]) - 0.5 * alpha * (Up[c] - Um[c]);
  return out;
}

inline double upwind_vg(double v, double g_minus, double g_plus) {
  if (v > 0.0) return v * g_minus;
  if (v < 0.0) return v * g_plus;
  return 0.0;
}

inline double pair_flux(FluxSelect sel, PairMember member, double minus, double plus) {
  switch (sel) {
    case FluxSelect::alt_lr:
      return member == PairMember::flux ? minus : plus;
    case FluxSelect::alt_rl:
      return member == PairMember::flux ? plus : minus;
    case FluxSelect::central:
      return 0.5 * (minus + plus);
  }
  throw std::invalid_argument("pair_flux: unknown selector");
}

/// max over nodes of |u| + sqrt(gamma T).
inline double max_wave_speed(const MacroField& U) {
  double lam = 0.0;
  for (int n = 0; n < U.nodes(); ++n) {
    ErrorContext where;
    where.element = n / U.q;
    where.node = n % U.q;
    const Primitives s = primitives(U.at(n), where);
    lam = std::max(lam, std::abs(s.u) + std::sqrt(kGamma * s.T));
  }
  return lam;
}

// ---------------------------------------------------------------------------
// Interface traces and the nodal weak derivative

/// Traces at the n_x + 1 interfaces of a nodal field with `width` components
/// per node. minus[i*width + c] is the value just left of x_{i-1/2}.
struct Traces {
  int width = 0;
  std::vector<double> minus;
  std::vector<double> plus;

  std::span<const double> m(int i) const {
    return {minus.data() + static_cast<size_t>(i) * width, static_cast<size_t>(width)};
  }
  std::span<const double> p(int i) const {
    return {plus.data() + static_cast<size_t>(i) * width, static_cast<size_t>(width)};
  }
};

/// Evaluates element traces and closes the two boundary interfaces according
/// to the mesh boundary kind. Ghost spans are read only for dirichlet.
inline Traces interface_traces(const Discretization& d, std::span<const double> nodal, int width,
                               std::span<const double> ghost_left,
                               std::span<const double> ghost_right) {
  const int nx = d.n_x();
  const int q = d.q();
  const auto& L = d.basis.endpoint_left;
  const auto& R = d.basis.endpoint_right;
  Traces t;
  t.width = width;
  t.minus.assign(static_cast<size_t>(nx + 1) * width, 0.0);
  t.plus.assign(static_cast<size_t>(nx + 1) * width, 0.0);

  for (int i = 0; i < nx; ++i) {
    const double* base = nodal.data() + static_cast<size_t>(i) * q * width;
    double* right_of_elem = t.minus.data() + static_cast<size_t>(i + 1) * width;  // x_{i+1/2}^-
    double* left_of_elem = t.plus.data() + static_cast<size_t>(i) * width;        // x_{i-1/2}^+
    for (int k = 0; k < q; ++k) {
      const double* row = base + static_cast<size_t>(k) * width;
      const double r = R[k], l = L[k];
      for (int c = 0; c < width; ++c) {
        right_of_elem[c] += r * row[c];
        left_of_elem[c] += l * row[c];
      }
    }
  }

  double* left_minus = t.minus.data();
  double* right_plus = t.plus.data() + static_cast<size_t>(nx) * width;
  switch (d.mesh.boundary) {
    case BoundaryKind::periodic:
      std::copy_n(t.minus.data() + static_cast<size_t>(nx) * width, width, left_minus);
      std::copy_n(t.plus.data(), width, right_plus);
      break;
    case BoundaryKind::dirichlet:
      if (static_cast<int>(ghost_left.size()) != width || static_cast<int>(ghost_right.size()) != width) {
        throw boundary_error("dirichlet boundary requires ghost values of width " + std::to_string(width));
      }
      std::copy_n(ghost_left.data(), width, left_minus);
      std::copy_n(ghost_right.data(), width, right_plus);
      break;
    case BoundaryKind::extrapolation:
      std::copy_n(t.plus.data(), width, left_minus);
      std::copy_n(t.minus.data() + static_cast<size_t>(nx) * width, width, right_plus);
      break;
  }
  return t;
}

/// Nodal DG derivative with prescribed interface values `hat` (width per
/// interface): out_k = [-sum_k' w_k' w_{k'} dphi_k(x_k') + hat_{i+1/2} phi_k^- - hat_{i-1/2} phi_k^+] / (w_k h).
/// The mass matrix is diagonal because nodes coincide with quadrature points.
inline void weak_derivative(const Discretization& d, std::span<const double> nodal, int width,
                            std::span<const double> hat, std::span<double> out) {
  const int nx = d.n_x();
  const int q = d.q();
  const auto& B = d.basis;
  for (int i = 0; i < nx; ++i) {
    const double h = d.mesh.h(i);
    const double* w = nodal.data() + static_cast<size_t>(i) * q * width;
    const double* hl = hat.data() + static_cast<size_t>(i) * width;
    const double* hr = hat.data() + static_cast<size_t>(i + 1) * width;
    for (int k = 0; k < q; ++k) {
      double* o = out.data() + (static_cast<size_t>(i) * q + k) * width;
      const double inv_mass = 1.0 / (B.weights[k] * h);
      const double rk = B.endpoint_right[k], lk = B.endpoint_left[k];
      for (int c = 0; c < width; ++c) o[c] = hr[c] * rk - hl[c] * lk;
      for (int kp = 0; kp < q; ++kp) {
        const double coef = B.weights[kp] * B.d(k, kp);
        const double* row = w + static_cast<size_t>(kp) * width;
        for (int c = 0; c < width; ++c) o[c] -= coef * row[c];
      }
      for (int c = 0; c < width; ++c) o[c] *= inv_mass;
    }
  }
}

// ---------------------------------------------------------------------------
// Discrete spatial operators

/// Nodal temperatures of a macro field.
inline std::vector<double> temperatures(const MacroField& U) {
  std::vector<double> T(static_cast<size_t>(U.nodes()));
  for (int n = 0; n < U.nodes(); ++n) {
    ErrorContext where;
    where.element = n / U.q;
    where.node = n % U.q;
    T[n] = primitives(U.at(n), where).T;
  }
  return T;
}

/// r_h ~ dT/dx by the local DG derivative with the state member of the pair flux.
inline std::vector<double> compute_r(std::span<const double> T, const Discretization& d) {
  double gl = 0.0, gr = 0.0;
  if (d.mesh.boundary == BoundaryKind::dirichlet) {
    gl = primitives(d.boundary.left).T;
    gr = primitives(d.boundary.right).T;
  }
  const Traces tr = interface_traces(d, T, 1, std::span<const double>(&gl, 1),
                                     std::span<const double>(&gr, 1));
  std::vector<double> hat(static_cast<size_t>(d.n_x() + 1));
  for (int i = 0; i <= d.n_x(); ++i) hat[i] = pair_flux(d.flux, PairMember::state, tr.minus[i], tr.plus[i]);
  std::vector<double> r(T.size());
  weak_derivative(d, T, 1, hat, r);
  return r;
}

/// Upwind DG derivative of v f (optionally eps(x) v f). Ghost traces are
/// used only for dirichlet boundaries.
inline KineticField upwind_derivative(const KineticField& f, const Discretization& d, bool weight_eps,
                                      std::span<const double> ghost_left,
                                      std::span<const double> ghost_right) {
  const int nv = d.n_v();
  const int nodes = d.nodes();
  KineticField out = d.kinetic_field();

  std::vector<double> w(f.values.size());
  for (int n = 0; n < nodes; ++n) {
    const double e = weight_eps ? d.eps.node(n) : 1.0;
    const double* fn = f.values.data() + static_cast<size_t>(n) * nv;
    double* wn = w.data() + static_cast<size_t>(n) * nv;
    for (int j = 0; j < nv; ++j) wn[j] = e * d.grid[j] * fn[j];
  }

  const Traces tr = interface_traces(d, f.values, nv, ghost_left, ghost_right);
  std::vector<double> hat(static_cast<size_t>(d.n_x() + 1) * nv);
  for (int i = 0; i <= d.n_x(); ++i) {
    const double e = weight_eps ? d.eps.interface(i) : 1.0;
    const auto fm = tr.m(i);
    const auto fp = tr.p(i);
    double* hi = hat.data() + static_cast<size_t>(i) * nv;
    for (int j = 0; j < nv; ++j) hi[j] = e * upwind_vg(d.grid[j], fm[j], fp[j]);
  }
  weak_derivative(d, w, nv, hat, out.values);
  return out;
}

/// D_{h,1}(eps v g) with upwind interface fluxes; dirichlet ghosts carry g = 0.
inline KineticField dh1_upwind(const KineticField& g, const Discretization& d) {
  const std::vector<double> zeros(static_cast<size_t>(d.n_v()), 0.0);
  return upwind_derivative(g, d, true, zeros, zeros);
}

/// D_{h,2}(v M) for a nodal Maxwellian field, M^ from the state member of the pair.
inline KineticField dh2_vM(const KineticField& M, const Discretization& d) {
  const int nv = d.n_v();
  KineticField out = d.kinetic_field();

  std::vector<double> gl, gr;
  if (d.mesh.boundary == BoundaryKind::dirichlet) {
    const Primitives sl = primitives(d.boundary.left);
    const Primitives sr = primitives(d.boundary.right);
    gl = maxwellian(sl.rho, sl.u, sl.T, d.grid);
    gr = maxwellian(sr.rho, sr.u, sr.T, d.grid);
  }
  const Traces tr = interface_traces(d, M.values, nv, gl, gr);

  std::vector<double> w(M.values.size());
  for (int n = 0; n < d.nodes(); ++n) {
    for (int j = 0; j < nv; ++j) w[static_cast<size_t>(n) * nv + j] = d.grid[j] * M.values[static_cast<size_t>(n) * nv + j];
  }
  std::vector<double> hat(static_cast<size_t>(d.n_x() + 1) * nv);
  for (int i = 0; i <= d.n_x(); ++i) {
    const auto mm = tr.m(i);
    const auto mp = tr.p(i);
    for (int j = 0; j < nv; ++j) {
      hat[static_cast<size_t>(i) * nv + j] = d.grid[j] * pair_flux(d.flux, PairMember::state, mm[j], mp[j]);
    }
  }
  weak_derivative(d, w, nv, hat, out.values);
  return out;
}

/// dU/dt = -(DG divergence of F(U) + eps <v m g>) with LF flux on F and the
/// flux member of the pair on <vmg>. `vmg` holds nodal <v m g> (3 per node),
/// not yet multiplied by eps.
inline MacroField macro_rhs_from_moments(const MacroField& U, std::span<const double> vmg,
                                         const Discretization& d, double alpha) {
  const int nodes = d.nodes();
  std::vector<double> w(static_cast<size_t>(3 * nodes));
  for (int n = 0; n < nodes; ++n) {
    ErrorContext where;
    where.element = n / d.q();
    where.node = n % d.q();
    where.x = d.node_x(n);
    const Vec3 Un = U.at(n);
    const Primitives s = primitives(Un, where);
    const double e = d.eps.node(n);
    w[3 * n] = Un[1] + e * vmg[3 * n];
    w[3 * n + 1] = Un[1] * s.u + s.p + e * vmg[3 * n + 1];
    w[3 * n + 2] = (Un[2] + s.p) * s.u + e * vmg[3 * n + 2];
  }

  const Vec3 zero{0.0, 0.0, 0.0};
  const Traces tu = interface_traces(d, U.values, 3, d.boundary.left, d.boundary.right);
  const Traces tg = interface_traces(d, vmg, 3, zero, zero);

  std::vector<double> hat(static_cast<size_t>(3 * (d.n_x() + 1)));
  for (int i = 0; i <= d.n_x(); ++i) {
    const auto um = tu.m(i), up = tu.p(i);
    ErrorContext where;
    where.x = d.mesh.interface(i);
    const Vec3 f = lax_friedrichs({um[0], um[1], um[2]}, {up[0], up[1], up[2]}, alpha, where);
    const double e = d.eps.interface(i);
    const auto gm = tg.m(i), gp = tg.p(i);
    for (int c = 0; c < 3; ++c) {
      hat[3 * i + c] = f[c] + e * pair_flux(d.flux, PairMember::flux, gm[c], gp[c]);
    }
  }

  MacroField out = d.macro_field();
  weak_derivative(d, w, 3, hat, out.values);
  for (double& x : out.values) x = -x;
  return out;
}

/// Nodal <v m g>.
inline std::vector<double> flux_moments(const KineticField& g, const VelocityGrid& grid) {
  std::vector<double> vmg(static_cast<size_t>(3 * g.nodes()));
  for (int n = 0; n < g.nodes(); ++n) {
    const Vec3 m = grid.flux_moment_vector(g.node(n));
    vmg[3 * n] = m[0];
    vmg[3 * n + 1] = m[1];
    vmg[3 * n + 2] = m[2];
  }
  return vmg;
}

/// Semi-discrete macroscopic right-hand side with kinetic coupling.
inline MacroField macro_rhs(const MacroField& U, const KineticField& g, const Discretization& d,
                            double alpha) {
  return macro_rhs_from_moments(U, flux_moments(g, d.grid), d, alpha);
}

}  // namespace mmdg
