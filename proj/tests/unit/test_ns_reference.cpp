#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace mmdg;
using mmdg::testing::fill_macro;
using mmdg::testing::make_disc;

namespace {
constexpr double kPi = std::numbers::pi;

Vec3 warm_state(double x) { return conserved(1.0 + 0.1 * std::cos(x), 0.3, 1.0 + 0.2 * std::sin(x)); }
}  // namespace

TEST(NsReference, ConstantStateIsSteady) {
  const Discretization d = make_disc(3, 8, 0.0, 1.0, BoundaryKind::periodic);
  const MacroField U = fill_macro(d, [](double) { return conserved(1.2, -0.4, 0.7); });
  for (double x : ns_rhs(U, d, 0.1, max_wave_speed(U)).values) EXPECT_NEAR(x, 0.0, 1e-12);
  const MacroField next = ns_step(U, 1e-3, ars443(), d, 0.1);
  for (size_t i = 0; i < U.values.size(); ++i) EXPECT_NEAR(next.values[i], U.values[i], 1e-13);
}

TEST(NsReference, ZeroEpsIsEuler) {
  const Discretization d = make_disc(2, 10, -kPi, kPi, BoundaryKind::periodic);
  const MacroField U = fill_macro(d, warm_state);
  const double a = max_wave_speed(U);
  const MacroField ns = ns_rhs(U, d, 0.0, a);
  const MacroField eu = macro_rhs(U, d.kinetic_field(), d, a);
  for (size_t i = 0; i < ns.values.size(); ++i) EXPECT_EQ(ns.values[i], eu.values[i]);
}

TEST(NsReference, ViscousTermActsOnEnergyOnly) {
  const Discretization d = make_disc(3, 10, -kPi, kPi, BoundaryKind::periodic);
  const MacroField U = fill_macro(d, warm_state);
  const MacroField v = ns_viscous_rhs(U, d, 0.05);
  double energy = 0.0, mag = 0.0;
  for (int n = 0; n < d.nodes(); ++n) {
    EXPECT_EQ(v.at(n)[0], 0.0);
    EXPECT_EQ(v.at(n)[1], 0.0);
    energy += d.basis.weights[n % d.q()] * d.mesh.h() * v.at(n)[2];
    mag = std::max(mag, std::abs(v.at(n)[2]));
  }
  EXPECT_GT(mag, 1e-3);
  EXPECT_NEAR(energy, 0.0, 1e-14);
}

TEST(NsReference, ViscousTermConverges) {
  // rho = 1, T = 1 + 0.2 sin x: 3/2 eps d/dx(T T_x).
  const double eps = 0.1;
  auto exact = [&](double x) {
    const double T = 1.0 + 0.2 * std::sin(x), Tx = 0.2 * std::cos(x), Txx = -0.2 * std::sin(x);
    return 1.5 * eps * (Tx * Tx + T * Txx);
  };
  double prev = 0.0;
  for (int nx : {20, 40, 80}) {
    const Discretization d = make_disc(3, nx, -kPi, kPi, BoundaryKind::periodic);
    const MacroField U = fill_macro(d, [](double x) { return conserved(1.0, 0.0, 1.0 + 0.2 * std::sin(x)); });
    const MacroField v = ns_viscous_rhs(U, d, eps);
    double err = 0.0;
    for (int n = 0; n < d.nodes(); ++n) err = std::max(err, std::abs(v.at(n)[2] - exact(d.node_x(n))));
    if (prev > 0.0) EXPECT_GT(std::log2(prev / err), 0.8) << "nx=" << nx;
    prev = err;
  }
}

TEST(NsReference, HeatDiffusesTowardUniformTemperature) {
  const Discretization d = make_disc(2, 20, -kPi, kPi, BoundaryKind::periodic);
  MacroField U = fill_macro(d, [](double x) { return conserved(1.0, 0.0, 1.0 + 0.2 * std::sin(x)); });
  auto spread = [&](const MacroField& W) {
    const auto T = temperatures(W);
    return *std::max_element(T.begin(), T.end()) - *std::min_element(T.begin(), T.end());
  };
  const double s0 = spread(U);
  const ButcherPair p = ars443();
  for (int k = 0; k < 50; ++k) U = ns_step(U, 1e-3, p, d, 0.5);
  EXPECT_LT(spread(U), s0);
}
