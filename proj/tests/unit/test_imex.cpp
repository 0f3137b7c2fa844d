#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace mmdg;
using mmdg::testing::fill_macro;
using mmdg::testing::make_disc;

namespace {
constexpr double kPi = std::numbers::pi;

Vec3 smooth_state(double x) { return conserved_from_pressure(1.0 + 0.2 * std::sin(x), 1.0, 1.0); }

Vec3 total(const MacroField& U, const Discretization& d) {
  Vec3 t{0, 0, 0};
  for (int n = 0; n < d.nodes(); ++n)
    for (int c = 0; c < 3; ++c) t[c] += d.basis.weights[n % d.q()] * d.mesh.h() * U.at(n)[c];
  return t;
}
}  // namespace

TEST(Tableau, BuiltInPairsAreGsa) {
  for (const auto& p : {ars443(), euler_pair()}) {
    const GsaReport r = validate_gsa(p);
    EXPECT_TRUE(r.pass) << p.name << ": " << (r.violations.empty() ? "" : r.violations.front());
  }
}

TEST(Tableau, Ars443Abscissae) {
  const ButcherPair p = ars443();
  const std::vector<double> c{0.0, 0.5, 2.0 / 3.0, 0.5, 1.0};
  for (int i = 0; i < 5; ++i) {
    EXPECT_NEAR(p.c[i], c[i], 1e-15);
    EXPECT_NEAR(p.ct[i], c[i], 1e-15);
  }
}

TEST(Tableau, PerturbedWeightsFail) {
  ButcherPair p = ars443();
  p.bt[1] += 1e-3;
  const GsaReport r = validate_gsa(p);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_NE(r.violations.front().find("b~_2"), std::string::npos);
}

TEST(Tableau, UpperEntryFails) {
  ButcherPair p = euler_pair();
  p.at[1] = 0.5;
  EXPECT_FALSE(validate_gsa(p).pass);
  EXPECT_THROW(pair_by_name("rk4"), std::invalid_argument);
}

TEST(SplitLinearOde, OrderOfAccuracy) {
  const double exact = std::exp(-3.0);
  auto order = [&](const ButcherPair& p) {
    const double e1 = std::abs(integrate_split_linear(p, -1.0, -2.0, 1.0, 1.0, 20) - exact);
    const double e2 = std::abs(integrate_split_linear(p, -1.0, -2.0, 1.0, 1.0, 40) - exact);
    return std::log2(e1 / e2);
  };
  EXPECT_GT(order(ars443()), 2.8);
  EXPECT_NEAR(order(euler_pair()), 1.0, 0.1);
}

TEST(SplitLinearOde, StiffDecayIsDamped) {
  const double y = integrate_split_linear(ars443(), -1.0, -1e6, 1.0, 1.0, 10);
  EXPECT_LT(std::abs(y), 1e-4);
}

TEST(Cfl, Examples) {
  EXPECT_NEAR(cfl_dt(std::sqrt(3.0), 9.0, 1, 0.014), 3.1111111111e-4, 1e-13);
  EXPECT_NEAR(cfl_dt(12.0, 9.0, 1, 0.014), 0.2 * 0.014 / 12.0, 1e-16);
  EXPECT_NEAR(cfl_dt(1.0, 6.0, 3, 0.1), 0.05 * 0.1 / 6.0, 1e-16);
  EXPECT_NEAR(cfl_dt(1.0, 6.0, 2, 0.1, 0.3), 0.3 * 0.1 / 6.0, 1e-16);
  const double r = cfl_dt(1.0, 6.0, 4, 0.05) / cfl_dt(1.0, 6.0, 4, 0.1);
  EXPECT_NEAR(r, std::pow(2.0, -4.0 / 3.0), 1e-13);
  EXPECT_THROW(cfl_constant(5), std::invalid_argument);
}

TEST(ImexStep, Freestream) {
  const Discretization d = make_disc(3, 6, 0.0, 1.0, BoundaryKind::periodic, 10.0, 60, 1e-2);
  const MacroField U = fill_macro(d, [](double) { return conserved(1.0, 0.5, 1.0); });
  const KineticState next = step({U, d.kinetic_field()}, 1e-3, ars443(), d);
  for (size_t i = 0; i < U.values.size(); ++i) EXPECT_NEAR(next.U.values[i], U.values[i], 1e-13);
  for (double x : next.g.values) EXPECT_NEAR(x, 0.0, 1e-12);
}

TEST(ImexStep, FluidLimitGIsSource) {
  const Discretization d = make_disc(2, 10, -kPi, kPi, BoundaryKind::periodic, 12.0, 80, 0.0);
  const MacroField U = fill_macro(d, smooth_state);
  KineticField g = d.kinetic_field();
  for (double& x : g.values) x = 0.3;
  for (auto scheme : {SchemeKind::scheme1, SchemeKind::scheme2}) {
    StepOptions opts;
    opts.scheme = scheme;
    const KineticState next = step({U, g}, 1e-3, euler_pair(), d, opts);
    const KineticField s2 = stiff_source(scheme, equilibrium(next.U, d), d);
    for (size_t i = 0; i < s2.values.size(); ++i) EXPECT_NEAR(next.g.values[i], s2.values[i], 1e-14);
  }
}

TEST(ImexStep, RelaxationFactorForEulerPair) {
  const double eps = 1e-3, dt = 1e-2;
  const Discretization d = make_disc(2, 4, 0.0, 1.0, BoundaryKind::periodic, 10.0, 40, eps);
  const MacroField U = fill_macro(d, [](double) { return conserved(1.0, 0.0, 1.0); });
  KineticField g = d.kinetic_field();
  for (int n = 0; n < d.nodes(); ++n)
    for (int j = 0; j < d.n_v(); ++j) g.node(n)[j] = std::sin(0.7 * j);
  const KineticState next = step({U, g}, dt, euler_pair(), d);
  for (size_t i = 0; i < g.values.size(); ++i) EXPECT_NEAR(next.g.values[i], g.values[i] * eps / (eps + dt), 1e-12);
  const KineticState next4 = step({U, g}, dt, ars443(), d);
  double n0 = 0.0, n1 = 0.0;
  for (size_t i = 0; i < g.values.size(); ++i) {
    n0 = std::max(n0, std::abs(g.values[i]));
    n1 = std::max(n1, std::abs(next4.g.values[i]));
  }
  EXPECT_LT(n1, 0.2 * n0);
}

TEST(ImexStep, PeriodicConservation) {
  for (auto scheme : {SchemeKind::scheme1, SchemeKind::scheme2}) {
    const Discretization d = make_disc(3, 10, -kPi, kPi, BoundaryKind::periodic, 12.0, 60, 1e-2);
    MacroField U = fill_macro(d, smooth_state);
    KineticState s{U, d.kinetic_field()};
    StepOptions opts;
    opts.scheme = scheme;
    const Vec3 before = total(U, d);
    const ButcherPair p = ars443();
    for (int k = 0; k < 100; ++k) s = step(s, cfl_dt(s.U, 12.0, 3, d.mesh.h()), p, d, opts);
    const Vec3 after = total(s.U, d);
    for (int c = 0; c < 3; ++c) EXPECT_NEAR(after[c], before[c], 1e-12 * std::max(1.0, std::abs(before[c])));
  }
}

TEST(ImexStep, HistoryRecordsStagesAndProjections) {
  const Discretization d = make_disc(2, 5, -kPi, kPi, BoundaryKind::periodic, 12.0, 40, 1e-1);
  const MacroField U = fill_macro(d, smooth_state);
  StageHistory h;
  StepOptions opts;
  opts.scheme = SchemeKind::scheme1;
  step({U, d.kinetic_field()}, 1e-3, ars443(), d, opts, &h);
  EXPECT_EQ(h.U.size(), 5u);
  EXPECT_EQ(h.g.size(), 5u);
  // 5 sources + 4 transports, one projection per node each.
  EXPECT_EQ(h.projections, 9L * d.nodes());
}

TEST(ImexStep, RealizabilityErrorCarriesStage) {
  const Discretization d = make_disc(2, 4, 0.0, 1.0, BoundaryKind::periodic, 10.0, 40, 1.0);
  MacroField U = fill_macro(d, [](double) { return conserved(1.0, 0.0, 1.0); });
  U.set(3, {1.0, 0.0, -1.0});
  try {
    step({U, d.kinetic_field()}, 1e-3, ars443(), d);
    FAIL() << "expected a realizability error";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.kind(), "realizability");
    EXPECT_EQ(e.context().element, 1);
    EXPECT_EQ(e.context().node, 1);
  }
  StepOptions opts;
  opts.alpha = 2.0;
  try {
    step({U, d.kinetic_field()}, 1e-3, ars443(), d, opts);
    FAIL() << "expected a realizability error";
  } catch (const SolverError& e) {
    EXPECT_EQ(e.context().stage, 1);
    EXPECT_NE(std::string(e.what()).find("stage=1"), std::string::npos);
  }
}
