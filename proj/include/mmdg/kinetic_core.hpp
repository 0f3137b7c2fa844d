#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "mmdg/errors.hpp"
#include "mmdg/velocity_grid.hpp"

// Pointwise kinetic closures in one velocity dimension (d = 1). Where the
// general-d formula differs, the d-dependence is noted inline.

namespace mmdg {

/// Velocity-space dimension.
inline constexpr int kDim = 1;
/// Ratio of specific heats, (d+2)/d.
inline constexpr double kGamma = (kDim + 2.0) / kDim;

/// Primitive variables of a conserved triple U = (rho, rho u, E).
struct Primitives {
  double rho = 0.0;
  double u = 0.0;
  double T = 0.0;
  double p = 0.0;
};

/// (rho, u, T, p) from U, using E = rho u^2 / 2 + (d/2) rho T.
inline Primitives primitives(const Vec3& U, const ErrorContext& where = {}) {
  const double rho = U[0];
  if (!(rho > 0.0)) {
    throw realizability_error("nonpositive density rho=" + std::to_string(rho), where);
  }
  const double u = U[1] / rho;
  const double T = 2.0 * U[2] / rho - u * u;
  if (!(T > 0.0)) {
    throw realizability_error("nonpositive temperature T=" + std::to_string(T), where);
  }
  return {rho, u, T, rho * T};
}

/// Inverse of primitives(): U from (rho, u, T).
inline Vec3 conserved(double rho, double u, double T) {
  return {rho, rho * u, 0.5 * rho * u * u + 0.5 * rho * T};
}

/// Conserved state from density, velocity and pressure.
inline Vec3 conserved_from_pressure(double rho, double u, double p) {
  return conserved(rho, u, p / rho);
}

/// M(v) = rho / sqrt(2 pi T) exp(-(v-u)^2 / (2T)) written into `out`.
inline void maxwellian(const Primitives& s, const VelocityGrid& grid, std::span<double> out) {
  if (!(s.rho > 0.0) || !(s.T > 0.0)) {
    throw realizability_error("maxwellian of non-realizable state");
  }
  const double amp = s.rho / std::sqrt(2.0 * std::numbers::pi * s.T);
  const double inv2T = 0.5 / s.T;
  for (int j = 0; j < grid.size(); ++j) {
    const double c = grid[j] - s.u;
    out[j] = amp * std::exp(-c * c * inv2T);
  }
}

inline std::vector<double> maxwellian(double rho, double u, double T, const VelocityGrid& grid) {
  std::vector<double> m(static_cast<size_t>(grid.size()));
  maxwellian(Primitives{rho, u, T, rho * T}, grid, m);
  return m;
}

/// Pi_M f: the L^2_M-orthogonal projection of f onto span{M, vM, v^2 M}.
/// `M` must be the Maxwellian of `s` on `grid`. Moments use the grid's
/// mid-point rule; the normalization uses rho, u, T of the macro state.
inline void project(std::span<const double> f, const Primitives& s, std::span<const double> M,
                    const VelocityGrid& grid, std::span<double> out) {
  const int nv = grid.size();
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  const double inv2T = 0.5 / s.T;
  for (int j = 0; j < nv; ++j) {
    const double c = grid[j] - s.u;
    m0 += f[j];
    m1 += c * f[j];
    m2 += (c * c * inv2T - 0.5) * f[j];
  }
  const double dv = grid.dv();
  // 1/rho, 1/(rho T), 2/(d rho) with d = 1
  const double a0 = dv * m0 / s.rho;
  const double a1 = dv * m1 / (s.rho * s.T);
  const double a2 = 2.0 * dv * m2 / s.rho;
  for (int j = 0; j < nv; ++j) {
    const double c = grid[j] - s.u;
    out[j] = (a0 + a1 * c + a2 * (c * c * inv2T - 0.5)) * M[j];
  }
}

inline std::vector<double> project(std::span<const double> f, const Vec3& U,
                                   const VelocityGrid& grid) {
  const Primitives s = primitives(U);
  const std::vector<double> M = maxwellian(s.rho, s.u, s.T, grid);
  std::vector<double> out(f.size());
  project(f, s, M, grid, out);
  return out;
}

/// A(v) = ((v-u)^2/(2T) - (d+2)/2) (v-u)/sqrt(T), d = 1.
inline double ce_factor_A(double v, double u, double T) {
  const double c = v - u;
  return (c * c / (2.0 * T) - 1.5) * c / std::sqrt(T);
}

inline std::vector<double> ce_factor_A(const VelocityGrid& grid, double u, double T) {
  if (!(T > 0.0)) throw realizability_error("ce_factor_A: nonpositive temperature");
  std::vector<double> a(static_cast<size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) a[j] = ce_factor_A(grid[j], u, T);
  return a;
}

/// B(v) = 1/2 ((v-u)^2/(2T) - (v-u)^2/(d T)), d = 1.
inline std::vector<double> ce_factor_B(const VelocityGrid& grid, double u, double T) {
  if (!(T > 0.0)) throw realizability_error("ce_factor_B: nonpositive temperature");
  std::vector<double> b(static_cast<size_t>(grid.size()));
  for (int j = 0; j < grid.size(); ++j) {
    const double c = grid[j] - u;
    b[j] = 0.5 * (c * c / (2.0 * T) - c * c / T);
  }
  return b;
}

/// Strain factor du + du^T - (2/d)(div u) I multiplying B; identically zero for d = 1.
inline double strain_factor_1d(double dudx) { return 2.0 * dudx - (2.0 / kDim) * dudx; }

/// Leading-order microscopic deviation -A (dT/dx)/sqrt(T) M, written into `out`.
inline void ce_leading_g(const Primitives& s, double r, std::span<const double> M,
                         const VelocityGrid& grid, std::span<double> out) {
  const double scale = -r / std::sqrt(s.T);
  for (int j = 0; j < grid.size(); ++j) out[j] = scale * ce_factor_A(grid[j], s.u, s.T) * M[j];
}

inline std::vector<double> ce_leading_g(const Vec3& U, double r, const VelocityGrid& grid) {
  const Primitives s = primitives(U);
  const std::vector<double> M = maxwellian(s.rho, s.u, s.T, grid);
  std::vector<double> out(M.size());
  ce_leading_g(s, r, M, grid, out);
  return out;
}

}  // namespace mmdg
