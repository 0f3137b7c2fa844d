#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmdg/dg_space.hpp"
#include "mmdg/kinetic_core.hpp"
#include "mmdg/limiter.hpp"
#include "mmdg/schemes.hpp"

namespace mmdg::harness {

enum class SolverKind { bgk, ns, euler, explicit_bgk };

inline std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::bgk:
      return "bgk";
    case SolverKind::ns:
      return "ns";
    case SolverKind::euler:
      return "euler";
    case SolverKind::explicit_bgk:
      return "explicit-bgk";
  }
  return "?";
}

/// Knudsen number: a constant, or eps0 + (tanh(1 - a0 x) + tanh(1 + a0 x))/2.
struct EpsProfile {
  bool variable = false;
  double value = 1.0;
  double eps0 = 1e-6;
  double a0 = 11.0;

  static EpsProfile constant(double e) { return {false, e, 0.0, 0.0}; }
  static EpsProfile tanh_bump(double a0, double eps0) { return {true, 0.0, eps0, a0}; }

  double operator()(double x) const {
    if (!variable) return value;
    return eps0 + 0.5 * (std::tanh(1.0 - a0 * x) + std::tanh(1.0 + a0 * x));
  }
};

using InitialMacro = std::function<Vec3(double x)>;
/// Writes the initial microscopic deviation g(x, .) given U(x) and eps(x).
using InitialMicro =
    std::function<void(double x, const Vec3& U, double eps, const VelocityGrid& grid, std::span<double> g)>;

/// One experiment: data, discretization and run parameters.
struct CaseSpec {
  std::string name;
  double x_min = 0.0;
  double x_max = 1.0;
  BoundaryKind boundary = BoundaryKind::periodic;
  double v_cut = 10.0;
  int n_x = 50;
  int n_v = 100;
  int q = 3;
  EpsProfile eps = EpsProfile::constant(1.0);
  double t_end = 0.1;
  LimiterConfig limiter{};
  FluxSelect flux = FluxSelect::alt_lr;
  SolverKind solver = SolverKind::bgk;
  SchemeKind scheme = SchemeKind::scheme2;
  std::string pair = "ars443";
  std::optional<double> cfl;
  InitialMacro initial_U;
  /// Null means g = 0.
  InitialMicro initial_g;
  std::vector<double> probes;
  std::string output;
};

/// Builds the discretization a case runs on; dirichlet ghosts come from the
/// initial data at the domain ends.
inline Discretization make_discretization(const CaseSpec& c) {
  Discretization d;
  d.basis = build_basis(c.q);
  d.mesh = Mesh1D(c.x_min, c.x_max, c.n_x, c.boundary);
  d.grid = VelocityGrid(c.v_cut, c.n_v);
  const EpsProfile prof = c.eps;
  d.eps = prof.variable ? EpsCoefficient([prof](double x) { return prof(x); }, d.mesh, d.basis)
                        : EpsCoefficient::constant(prof.value, d.mesh, d.basis);
  d.flux = c.flux;
  if (c.initial_U) {
    d.boundary.left = c.initial_U(c.x_min);
    d.boundary.right = c.initial_U(c.x_max);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Registry

/// rho = 1 + 0.2 sin x, u = 1, p = 1 on [-pi, pi], periodic; g0 = -A T_x/sqrt(T) M.
inline CaseSpec case_smooth(double eps = 1.0, int q = 3, int n_x = 10, double t_end = 0.001) {
  CaseSpec c;
  c.name = "smooth";
  c.x_min = -std::numbers::pi;
  c.x_max = std::numbers::pi;
  c.boundary = BoundaryKind::periodic;
  c.v_cut = 12.0;
  c.n_v = 100;
  c.n_x = n_x;
  c.q = q;
  c.eps = EpsProfile::constant(eps);
  c.t_end = t_end;
  c.limiter.enabled = false;
  c.initial_U = [](double x) { return conserved_from_pressure(1.0 + 0.2 * std::sin(x), 1.0, 1.0); };
  c.initial_g = [](double x, const Vec3& U, double, const VelocityGrid& grid, std::span<double> g) {
    const double rho = 1.0 + 0.2 * std::sin(x);
    const double dTdx = -0.2 * std::cos(x) / (rho * rho);
    const Primitives s = primitives(U);
    std::vector<double> M(static_cast<size_t>(grid.size()));
    maxwellian(s, grid, M);
    ce_leading_g(s, dTdx, M, grid, g);
  };
  c.probes = {0.0};
  return c;
}

/// Piecewise-constant Riemann data split at x0 with g0 = 0.
inline InitialMacro riemann_data(double x0, Vec3 left, Vec3 right) {
  return [=](double x) { return x <= x0 ? left : right; };
}

inline CaseSpec case_sod(double eps = 1e-6) {
  CaseSpec c;
  c.name = "sod";
  c.x_min = -0.2;
  c.x_max = 1.2;
  c.boundary = BoundaryKind::dirichlet;
  c.v_cut = 4.5;
  c.n_x = 50;
  c.n_v = 100;
  c.q = 3;
  c.eps = EpsProfile::constant(eps);
  c.t_end = 0.14;
  c.limiter = {true, 20.0};
  c.initial_U = riemann_data(0.5, conserved_from_pressure(1.0, 0.0, 1.0),
                             conserved_from_pressure(0.125, 0.0, 0.1));
  c.probes = {0.5};
  return c;
}

inline CaseSpec case_lax(double eps = 1e-6) {
  CaseSpec c;
  c.name = "lax";
  c.x_min = -0.5;
  c.x_max = 1.5;
  c.boundary = BoundaryKind::dirichlet;
  c.v_cut = 8.0;
  c.n_x = 100;
  c.n_v = 100;
  c.q = 3;
  c.eps = EpsProfile::constant(eps);
  c.t_end = 0.1;
  c.limiter = {true, 20.0};
  c.initial_U = riemann_data(0.5, conserved_from_pressure(0.445, 0.698, 3.528),
                             conserved_from_pressure(0.5, 0.0, 0.571));
  c.probes = {0.5};
  return c;
}

/// Left post-shock state of the gamma = 3 Shu-Osher problem.
inline constexpr double kShuOsherLeft[3] = {1.756757, 2.005122, 10.333333};

inline CaseSpec case_shu_osher(double eps = 1e-6) {
  CaseSpec c;
  c.name = "shu-osher";
  c.x_min = -12.0;
  c.x_max = 12.0;
  c.boundary = BoundaryKind::extrapolation;
  c.v_cut = 10.0;
  c.n_x = 200;
  c.n_v = 100;
  c.q = 3;
  c.eps = EpsProfile::constant(eps);
  c.t_end = 1.0;
  c.limiter = {true, 20.0};
  c.initial_U = [](double x) {
    if (x <= -2.0) return conserved_from_pressure(kShuOsherLeft[0], kShuOsherLeft[1], kShuOsherLeft[2]);
    return conserved_from_pressure(1.0 + 0.1 * std::sin(x), 0.0, 1.0);
  };
  c.probes = {0.0};
  return c;
}

/// Coarse-mesh order comparison variant (M_tvb = 1, N_x = 100).
inline CaseSpec case_shu_osher_compare(double eps = 1e-6) {
  CaseSpec c = case_shu_osher(eps);
  c.name = "shu-osher-compare";
  c.n_x = 100;
  c.limiter.m_tvb = 1.0;
  return c;
}

/// Mixed regime: variable eps(x), double-Maxwellian initial f on [-1/2, 1/2].
inline CaseSpec case_mixed(double a0 = 11.0, double eps0 = 1e-6) {
  CaseSpec c;
  c.name = "mixed";
  c.x_min = -0.5;
  c.x_max = 0.5;
  c.boundary = BoundaryKind::periodic;
  c.v_cut = 10.0;
  c.n_x = 40;
  c.n_v = 100;
  c.q = 3;
  c.eps = EpsProfile::tanh_bump(a0, eps0);
  c.t_end = 0.1;
  c.limiter = {true, 20.0};
  constexpr double L = 0.5;
  constexpr double omega = std::numbers::pi / L;
  constexpr double u_tilde = 0.75;
  auto rho_t = [](double x) { return 1.0 + 0.875 * std::sin(omega * x); };
  auto T_t = [](double x) { return 0.5 + 0.4 * std::sin(omega * x); };
  c.initial_U = [=](double x) { return conserved(rho_t(x), 0.0, T_t(x) + u_tilde * u_tilde); };
  c.initial_g = [=](double x, const Vec3& U, double e, const VelocityGrid& grid, std::span<double> g) {
    const Primitives s = primitives(U);
    const double rho = rho_t(x), T = T_t(x);
    const double amp = rho / (2.0 * std::sqrt(2.0 * std::numbers::pi * T));
    std::vector<double> M(static_cast<size_t>(grid.size()));
    maxwellian(s, grid, M);
    for (int j = 0; j < grid.size(); ++j) {
      const double v = grid[j];
      const double f0 = amp * (std::exp(-(v - u_tilde) * (v - u_tilde) / (2.0 * T)) +
                               std::exp(-(v + u_tilde) * (v + u_tilde) / (2.0 * T)));
      g[j] = (f0 - M[j]) / e;
    }
  };
  c.probes = {0.0};
  return c;
}

inline CaseSpec case_by_name(const std::string& name) {
  if (name == "smooth") return case_smooth();
  if (name == "sod") return case_sod();
  if (name == "lax") return case_lax();
  if (name == "shu-osher") return case_shu_osher();
  if (name == "shu-osher-compare") return case_shu_osher_compare();
  if (name == "mixed") return case_mixed();
  throw std::invalid_argument("unknown case '" + name + "'");
}

inline std::vector<std::string> case_names() {
  return {"smooth", "sod", "lax", "shu-osher", "shu-osher-compare", "mixed"};
}

}  // namespace mmdg::harness
