#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

// Exact solution of the Riemann problem for the ideal-gas Euler equations,
// following the two-nonlinear-wave pressure function formulation.

namespace mmdg::harness {

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double p = 1.0;
};

struct StarRegion {
  double p = 0.0;
  double u = 0.0;
  double rho_left = 0.0;
  double rho_right = 0.0;
};

class ExactRiemann {
 public:
  ExactRiemann(PrimitiveState left, PrimitiveState right, double gamma = 3.0)
      : L_(left), R_(right), g_(gamma) {
    if (!(L_.rho > 0.0 && R_.rho > 0.0 && L_.p > 0.0 && R_.p > 0.0)) {
      throw std::invalid_argument("ExactRiemann: states must have positive density and pressure");
    }
    aL_ = std::sqrt(g_ * L_.p / L_.rho);
    aR_ = std::sqrt(g_ * R_.p / R_.rho);
    if (2.0 / (g_ - 1.0) * (aL_ + aR_) <= R_.u - L_.u) {
      throw std::invalid_argument("ExactRiemann: initial data generate vacuum");
    }
    solve_star();
  }

  const StarRegion& star() const { return star_; }

  /// Solution at similarity coordinate s = (x - x0)/t.
  PrimitiveState sample(double s) const {
    const double gm1 = g_ - 1.0, gp1 = g_ + 1.0;
    if (s <= star_.u) {
      if (star_.p > L_.p) {
        const double sl = L_.u - aL_ * std::sqrt(gp1 / (2 * g_) * star_.p / L_.p + gm1 / (2 * g_));
        if (s <= sl) return L_;
        return {star_.rho_left, star_.u, star_.p};
      }
      const double head = L_.u - aL_;
      const double a_star = aL_ * std::pow(star_.p / L_.p, gm1 / (2 * g_));
      const double tail = star_.u - a_star;
      if (s <= head) return L_;
      if (s >= tail) return {star_.rho_left, star_.u, star_.p};
      const double c = 2.0 / gp1 + gm1 / (gp1 * aL_) * (L_.u - s);
      return {L_.rho * std::pow(c, 2.0 / gm1), 2.0 / gp1 * (aL_ + gm1 / 2 * L_.u + s),
              L_.p * std::pow(c, 2 * g_ / gm1)};
    }
    if (star_.p > R_.p) {
      const double sr = R_.u + aR_ * std::sqrt(gp1 / (2 * g_) * star_.p / R_.p + gm1 / (2 * g_));
      if (s >= sr) return R_;
      return {star_.rho_right, star_.u, star_.p};
    }
    const double head = R_.u + aR_;
    const double a_star = aR_ * std::pow(star_.p / R_.p, gm1 / (2 * g_));
    const double tail = star_.u + a_star;
    if (s >= head) return R_;
    if (s <= tail) return {star_.rho_right, star_.u, star_.p};
    const double c = 2.0 / gp1 - gm1 / (gp1 * aR_) * (R_.u - s);
    return {R_.rho * std::pow(c, 2.0 / gm1), 2.0 / gp1 * (-aR_ + gm1 / 2 * R_.u + s),
            R_.p * std::pow(c, 2 * g_ / gm1)};
  }

  /// Profile at time t > 0 for a discontinuity initially at x0.
  PrimitiveState at(double x, double t, double x0) const {
    if (t <= 0.0) return x <= x0 ? L_ : R_;
    return sample((x - x0) / t);
  }

 private:
  // f_K(p) and its derivative for one side.
  void side(double p, const PrimitiveState& K, double aK, double& f, double& df) const {
    if (p > K.p) {
      const double A = 2.0 / ((g_ + 1.0) * K.rho);
      const double B = (g_ - 1.0) / (g_ + 1.0) * K.p;
      const double sq = std::sqrt(A / (p + B));
      f = (p - K.p) * sq;
      df = sq * (1.0 - 0.5 * (p - K.p) / (B + p));
    } else {
      const double ratio = p / K.p;
      f = 2.0 * aK / (g_ - 1.0) * (std::pow(ratio, (g_ - 1.0) / (2.0 * g_)) - 1.0);
      df = 1.0 / (K.rho * aK) * std::pow(ratio, -(g_ + 1.0) / (2.0 * g_));
    }
  }

  void solve_star() {
    const double du = R_.u - L_.u;
    // Two-rarefaction guess, floored to stay positive.
    const double z = (g_ - 1.0) / (2.0 * g_);
    double p = std::pow((aL_ + aR_ - 0.5 * (g_ - 1.0) * du) /
                            (aL_ / std::pow(L_.p, z) + aR_ / std::pow(R_.p, z)),
                        1.0 / z);
    p = std::max(p, 1e-12);
    for (int it = 0; it < 200; ++it) {
      double fl, dfl, fr, dfr;
      side(p, L_, aL_, fl, dfl);
      side(p, R_, aR_, fr, dfr);
      double next = p - (fl + fr + du) / (dfl + dfr);
      if (next <= 0.0) next = 0.5 * p;
      const double change = 2.0 * std::abs(next - p) / (next + p);
      p = next;
      if (change < 1e-14) break;
    }
    double fl, dfl, fr, dfr;
    side(p, L_, aL_, fl, dfl);
    side(p, R_, aR_, fr, dfr);
    star_.p = p;
    star_.u = 0.5 * (L_.u + R_.u) + 0.5 * (fr - fl);

    const double gm = (g_ - 1.0) / (g_ + 1.0);
    auto star_density = [&](const PrimitiveState& K) {
      const double ratio = p / K.p;
      if (p > K.p) return K.rho * (ratio + gm) / (gm * ratio + 1.0);
      return K.rho * std::pow(ratio, 1.0 / g_);
    };
    star_.rho_left = star_density(L_);
    star_.rho_right = star_density(R_);
  }

  PrimitiveState L_, R_;
  double g_;
  double aL_ = 0.0, aR_ = 0.0;
  StarRegion star_;
};

/// Rankine-Hugoniot residuals |[F(U)] - s [U]| (max over components) for a
/// shock of speed s between two primitive states, gamma-law gas.
inline double rankine_hugoniot_residual(const PrimitiveState& L, const PrimitiveState& R, double s,
                                        double gamma = 3.0) {
  auto cons = [&](const PrimitiveState& w) {
    return std::vector<double>{w.rho, w.rho * w.u, 0.5 * w.rho * w.u * w.u + w.p / (gamma - 1.0)};
  };
  auto flux = [&](const PrimitiveState& w) {
    const double E = 0.5 * w.rho * w.u * w.u + w.p / (gamma - 1.0);
    return std::vector<double>{w.rho * w.u, w.rho * w.u * w.u + w.p, (E + w.p) * w.u};
  };
  const auto UL = cons(L), UR = cons(R), FL = flux(L), FR = flux(R);
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    worst = std::max(worst, std::abs((FL[c] - FR[c]) - s * (UL[c] - UR[c])));
  }
  return worst;
}

/// Shock speed from mass conservation for a right-moving shock into R.
inline double shock_speed_from_mass(const PrimitiveState& L, const PrimitiveState& R) {
  return (L.rho * L.u - R.rho * R.u) / (L.rho - R.rho);
}

}  // namespace mmdg::harness
