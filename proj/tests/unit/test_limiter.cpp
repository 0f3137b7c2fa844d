#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace mmdg;
using mmdg::testing::fill_macro;
using mmdg::testing::make_disc;

namespace {

LimiterConfig tvb(double m) { return {true, m}; }

std::vector<double> means(const MacroField& U, const Discretization& d) {
  std::vector<double> out(static_cast<size_t>(3 * d.n_x()), 0.0);
  for (int i = 0; i < d.n_x(); ++i)
    for (int k = 0; k < d.q(); ++k)
      for (int c = 0; c < 3; ++c) out[3 * i + c] += d.basis.weights[k] * U.at(i, k)[c];
  return out;
}

Vec3 step_state(double x) {
  return x < 0.43 ? conserved_from_pressure(1.0, 0.0, 1.0) : conserved_from_pressure(0.125, 0.0, 0.1);
}

}  // namespace

TEST(Minmod, Examples) {
  EXPECT_EQ(minmod(1.0, 2.0, 3.0), 1.0);
  EXPECT_EQ(minmod(-1.0, -0.5, -3.0), -0.5);
  EXPECT_EQ(minmod(1.0, -2.0, 3.0), 0.0);
  EXPECT_EQ(minmod(0.0, 2.0, 3.0), 0.0);
  EXPECT_EQ(minmod_tvb(0.5, -1.0, 1.0, 0.5), 0.5);
  EXPECT_EQ(minmod_tvb(0.6, -1.0, 1.0, 0.5), 0.0);
}

TEST(Tvb, DisabledOrPiecewiseConstantIsIdentity) {
  const Discretization d3 = make_disc(3, 10, 0.0, 1.0, BoundaryKind::extrapolation);
  const MacroField U3 = fill_macro(d3, step_state);
  EXPECT_EQ(tvb_limit(U3, d3, LimiterConfig{}).values, U3.values);
  const Discretization d1 = make_disc(1, 10, 0.0, 1.0, BoundaryKind::extrapolation);
  const MacroField U1 = fill_macro(d1, step_state);
  EXPECT_EQ(tvb_limit(U1, d1, tvb(0.0)).values, U1.values);
}

TEST(Tvb, SmoothDataPassesThrough) {
  const Discretization d = make_disc(3, 40, -std::numbers::pi, std::numbers::pi, BoundaryKind::periodic);
  const MacroField U =
      fill_macro(d, [](double x) { return conserved_from_pressure(1.0 + 0.2 * std::sin(x), 1.0, 1.0); });
  EXPECT_EQ(tvb_limit(U, d, tvb(20.0)).values, U.values);
}

TEST(Tvb, JumpCellIsLimitedAndMeansKept) {
  for (int q : {2, 3, 4}) {
    const Discretization d = make_disc(q, 10, 0.0, 1.0, BoundaryKind::extrapolation);
    const MacroField U = fill_macro(d, step_state);
    const MacroField L = tvb_limit(U, d, tvb(0.0));
    const auto m0 = means(U, d), m1 = means(L, d);
    for (size_t i = 0; i < m0.size(); ++i) EXPECT_NEAR(m1[i], m0[i], 1e-14);
    // x = 0.43 lies in element 4: the limited polynomial stays between the neighbour means.
    for (int c = 0; c < 3; ++c) {
      const double lo = std::min(m0[3 * 3 + c], m0[3 * 5 + c]), hi = std::max(m0[3 * 3 + c], m0[3 * 5 + c]);
      for (int k = 0; k < q; ++k) {
        EXPECT_GE(L.at(4, k)[c], lo - 1e-14);
        EXPECT_LE(L.at(4, k)[c], hi + 1e-14);
      }
      const double span = d.basis.nodes[q - 1] - d.basis.nodes[0];
      const double slope = (L.at(4, q - 1)[c] - L.at(4, 0)[c]) / span;
      for (int k = 1; k < q - 1; ++k) EXPECT_NEAR(L.at(4, k)[c], m0[3 * 4 + c] + slope * d.basis.nodes[k], 1e-14);
    }
    for (int i : {0, 1, 2, 3, 5, 6, 7, 8, 9})
      for (int k = 0; k < q; ++k)
        for (int c = 0; c < 3; ++c) EXPECT_NEAR(L.at(i, k)[c], U.at(i, k)[c], 1e-14);
  }
}

TEST(Tvb, Idempotent) {
  const Discretization d = make_disc(3, 20, 0.0, 1.0, BoundaryKind::extrapolation);
  const MacroField U = fill_macro(d, [](double x) {
    return conserved_from_pressure(1.0 + 0.5 * std::sin(9.0 * x) + (x > 0.5 ? 0.3 : 0.0), 0.2, 1.0);
  });
  const MacroField L1 = tvb_limit(U, d, tvb(1.0));
  const MacroField L2 = tvb_limit(L1, d, tvb(1.0));
  for (size_t i = 0; i < L1.values.size(); ++i) EXPECT_NEAR(L2.values[i], L1.values[i], 1e-14);
}

TEST(Tvb, LinearDataUntouched) {
  Discretization d = make_disc(3, 12, 0.0, 1.0, BoundaryKind::dirichlet);
  auto lin = [](double x) { return Vec3{1.0 + 0.1 * x, 0.2 * x, 2.0 + 0.3 * x}; };
  const double h = d.mesh.h();
  d.boundary.left = lin(-0.5 * h);
  d.boundary.right = lin(1.0 + 0.5 * h);
  const MacroField U = fill_macro(d, lin);
  const MacroField L = tvb_limit(U, d, tvb(0.0));
  for (size_t i = 0; i < U.values.size(); ++i) EXPECT_NEAR(L.values[i], U.values[i], 1e-14);
}

TEST(Tvb, NegativeParameterThrows) {
  const Discretization d = make_disc(2, 4, 0.0, 1.0, BoundaryKind::periodic);
  const MacroField U = fill_macro(d, [](double) { return conserved(1.0, 0.0, 1.0); });
  EXPECT_THROW(tvb_limit(U, d, tvb(-1.0)), std::invalid_argument);
}
