#pragma once

#include <array>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmdg {

using Vec3 = std::array<double, 3>;

/// Standard moment weights m(v) = (1, v, v^2/2).
enum class Weight { one, v, half_v2 };

/// Uniform mid-point discretization of [-v_cut, v_cut].
class VelocityGrid {
 public:
  VelocityGrid() = default;

  VelocityGrid(double v_cut, int n_v) : v_cut_(v_cut), n_v_(n_v) {
    if (!(v_cut > 0.0) || n_v < 2) {
      throw std::invalid_argument("VelocityGrid: need v_cut > 0 and n_v >= 2 (got v_cut=" +
                                  std::to_string(v_cut) + ", n_v=" + std::to_string(n_v) + ")");
    }
    dv_ = 2.0 * v_cut / n_v;
    points_.resize(static_cast<size_t>(n_v));
    for (int j = 0; j < n_v; ++j) points_[j] = -v_cut + (j + 0.5) * dv_;
    // Exact mirror symmetry regardless of rounding in the formula above.
    for (int j = 0; j < n_v / 2; ++j) points_[n_v - 1 - j] = -points_[j];
  }

  double v_cut() const { return v_cut_; }
  int size() const { return n_v_; }
  double dv() const { return dv_; }
  double weight() const { return dv_; }
  double operator[](int j) const { return points_[j]; }
  const std::vector<double>& points() const { return points_; }

  /// dv * sum_j w(v_j) values_j, summed in index order.
  template <class Fn>
  double moment(std::span<const double> values, Fn&& weight_fn) const {
    check_size(values);
    double s = 0.0;
    for (int j = 0; j < n_v_; ++j) s += weight_fn(points_[j]) * values[j];
    return dv_ * s;
  }

  double moment(std::span<const double> values, Weight w) const {
    switch (w) {
      case Weight::one:
        return moment(values, [](double) { return 1.0; });
      case Weight::v:
        return moment(values, [](double v) { return v; });
      case Weight::half_v2:
        return moment(values, [](double v) { return 0.5 * v * v; });
    }
    return 0.0;
  }

  /// <m g> with m = (1, v, v^2/2).
  Vec3 moment_vector(std::span<const double> values) const {
    check_size(values);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < n_v_; ++j) {
      const double v = points_[j];
      s0 += values[j];
      s1 += v * values[j];
      s2 += 0.5 * v * v * values[j];
    }
    return {dv_ * s0, dv_ * s1, dv_ * s2};
  }

  /// <v m g>.
  Vec3 flux_moment_vector(std::span<const double> values) const {
    check_size(values);
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int j = 0; j < n_v_; ++j) {
      const double v = points_[j];
      const double vg = v * values[j];
      s0 += vg;
      s1 += v * vg;
      s2 += 0.5 * v * v * vg;
    }
    return {dv_ * s0, dv_ * s1, dv_ * s2};
  }

 private:
  void check_size(std::span<const double> values) const {
    if (static_cast<int>(values.size()) != n_v_) {
      throw std::invalid_argument("VelocityGrid::moment: expected " + std::to_string(n_v_) +
                                  " samples, got " + std::to_string(values.size()));
    }
  }

  double v_cut_ = 0.0;
  int n_v_ = 0;
  double dv_ = 0.0;
  std::vector<double> points_;
};

inline VelocityGrid build_grid(double v_cut, int n_v) { return VelocityGrid(v_cut, n_v); }

}  // namespace mmdg
