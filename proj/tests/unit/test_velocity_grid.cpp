#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mmdg/kinetic_core.hpp"
#include "mmdg/velocity_grid.hpp"

using namespace mmdg;

TEST(VelocityGrid, SpacingAndFirstPoint) {
  const VelocityGrid g = build_grid(12.0, 100);
  EXPECT_NEAR(g.dv(), 0.24, 1e-15);
  EXPECT_NEAR(g[0], -11.88, 1e-13);
  EXPECT_NEAR(build_grid(4.5, 100).dv(), 0.09, 1e-15);
}

TEST(VelocityGrid, TwoPoints) {
  const VelocityGrid g = build_grid(1.0, 2);
  EXPECT_DOUBLE_EQ(g[0], -0.5);
  EXPECT_DOUBLE_EQ(g[1], 0.5);
}

TEST(VelocityGrid, SymmetricAndTotalWeight) {
  for (int nv : {2, 10, 64, 100, 101}) {
    const VelocityGrid g = build_grid(7.3, nv);
    for (int j = 0; j < nv; ++j) EXPECT_EQ(g[j], -g[nv - 1 - j]);
    EXPECT_NEAR(g.dv() * nv, 2 * 7.3, 1e-13);
  }
}

TEST(VelocityGrid, RejectsBadInput) {
  EXPECT_THROW(build_grid(0.0, 10), std::invalid_argument);
  EXPECT_THROW(build_grid(-1.0, 10), std::invalid_argument);
  EXPECT_THROW(build_grid(1.0, 1), std::invalid_argument);
}

TEST(Moment, StandardMaxwellian) {
  const VelocityGrid g = build_grid(12.0, 100);
  const auto M = maxwellian(1.0, 0.0, 1.0, g);
  EXPECT_NEAR(g.moment(M, Weight::one), 1.0, 1e-12);
  EXPECT_NEAR(g.moment(M, Weight::v), 0.0, 1e-14);
  EXPECT_NEAR(g.moment(M, Weight::half_v2), 0.5, 1e-12);
}

TEST(Moment, ZeroField) {
  const VelocityGrid g = build_grid(12.0, 100);
  const std::vector<double> z(100, 0.0);
  EXPECT_EQ(g.moment(z, [](double v) { return v * v * v; }), 0.0);
  const Vec3 m = g.moment_vector(z);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_EQ(m[1], 0.0);
  EXPECT_EQ(m[2], 0.0);
}

TEST(Moment, LengthMismatchThrows) {
  const VelocityGrid g = build_grid(12.0, 100);
  const std::vector<double> bad(99, 1.0);
  EXPECT_THROW(g.moment(bad, Weight::one), std::invalid_argument);
  EXPECT_THROW(g.moment_vector(bad), std::invalid_argument);
  EXPECT_THROW(g.flux_moment_vector(bad), std::invalid_argument);
}

TEST(MomentVector, MaxwellianReproducesConserved) {
  const VelocityGrid g = build_grid(12.0, 100);
  const Vec3 a = g.moment_vector(maxwellian(1.0, 0.0, 1.0, g));
  EXPECT_NEAR(a[0], 1.0, 1e-12);
  EXPECT_NEAR(a[1], 0.0, 1e-12);
  EXPECT_NEAR(a[2], 0.5, 1e-12);
  const Vec3 b = g.moment_vector(maxwellian(2.0, 1.0, 1.0, g));
  EXPECT_NEAR(b[0], 2.0, 1e-10);
  EXPECT_NEAR(b[1], 2.0, 1e-10);
  EXPECT_NEAR(b[2], 2.0, 1e-10);
}

TEST(MomentVector, ConservedRoundTripOverStates) {
  const VelocityGrid g = build_grid(12.0, 100);
  for (double rho : {0.125, 1.0, 3.0}) {
    for (double u : {-1.5, 0.0, 0.7}) {
      for (double T : {0.3, 0.8, 2.0}) {
        if (std::abs(u) + 6 * std::sqrt(T) > 12.0) continue;
        const Vec3 U = conserved(rho, u, T);
        const Vec3 m = g.moment_vector(maxwellian(rho, u, T, g));
        for (int c = 0; c < 3; ++c) EXPECT_NEAR(m[c], U[c], 1e-10);
      }
    }
  }
}

TEST(Moment, Linear) {
  const VelocityGrid g = build_grid(5.0, 40);
  std::vector<double> a(40), b(40), c(40);
  for (int j = 0; j < 40; ++j) {
    a[j] = std::sin(g[j]);
    b[j] = std::exp(-g[j] * g[j]);
    c[j] = 2.0 * a[j] - 3.0 * b[j];
  }
  auto w = [](double v) { return 1.0 + v * v; };
  EXPECT_NEAR(g.moment(c, w), 2.0 * g.moment(a, w) - 3.0 * g.moment(b, w), 1e-12);
}

TEST(Moment, DoublingCutoffKeepsResolvedMoments) {
  const auto U = conserved(1.0, 0.5, 1.0);
  const VelocityGrid g1 = build_grid(8.0, 100), g2 = build_grid(16.0, 100);
  const Vec3 m1 = g1.moment_vector(maxwellian(1.0, 0.5, 1.0, g1));
  const Vec3 m2 = g2.moment_vector(maxwellian(1.0, 0.5, 1.0, g2));
  for (int c = 0; c < 3; ++c) {
    EXPECT_NEAR(m1[c], U[c], 1e-10);
    EXPECT_NEAR(m2[c], U[c], 1e-10);
  }
}

TEST(FluxMoment, MaxwellianGivesEulerFlux) {
  const VelocityGrid g = build_grid(12.0, 100);
  const double rho = 1.3, u = 0.4, T = 0.9;
  const Vec3 f = g.flux_moment_vector(maxwellian(rho, u, T, g));
  const double p = rho * T, E = 0.5 * rho * u * u + 0.5 * rho * T;
  EXPECT_NEAR(f[0], rho * u, 1e-10);
  EXPECT_NEAR(f[1], rho * u * u + p, 1e-10);
  EXPECT_NEAR(f[2], (E + p) * u, 1e-10);
}
