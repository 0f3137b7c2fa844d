#include <gtest/gtest.h>

#include <cmath>

#include "mmdg/quadrature_basis.hpp"

using namespace mmdg;

TEST(BuildBasis, MidpointRule) {
  const NodalBasis b = build_basis(1);
  ASSERT_EQ(b.nodes.size(), 1u);
  EXPECT_DOUBLE_EQ(b.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(b.weights[0], 1.0);
}

TEST(BuildBasis, TwoPointGauss) {
  const NodalBasis b = build_basis(2);
  const double x = 1.0 / (2.0 * std::sqrt(3.0));
  EXPECT_NEAR(b.nodes[0], -x, 1e-15);
  EXPECT_NEAR(b.nodes[1], x, 1e-15);
  EXPECT_NEAR(b.weights[0], 0.5, 1e-15);
  EXPECT_NEAR(b.weights[1], 0.5, 1e-15);
}

TEST(BuildBasis, TwoPointDerivativeMatrix) {
  const NodalBasis b = build_basis(2);
  const double s3 = std::sqrt(3.0);
  for (int kp = 0; kp < 2; ++kp) {
    EXPECT_NEAR(b.d(0, kp), -s3, 1e-13);
    EXPECT_NEAR(b.d(1, kp), s3, 1e-13);
  }
}

TEST(BuildBasis, RejectsOutOfRange) {
  EXPECT_THROW(build_basis(0), std::invalid_argument);
  EXPECT_THROW(build_basis(9), std::invalid_argument);
}

class BasisByQ : public ::testing::TestWithParam<int> {};

TEST_P(BasisByQ, WeightsSumToOne) {
  const NodalBasis b = build_basis(GetParam());
  double s = 0.0;
  for (double w : b.weights) s += w;
  EXPECT_NEAR(s, 1.0, 1e-14);
}

TEST_P(BasisByQ, ExactToDegree2qMinus1) {
  const int q = GetParam();
  const NodalBasis b = build_basis(q);
  for (int deg = 0; deg <= 2 * q - 1; ++deg) {
    double quad = 0.0;
    for (int k = 0; k < q; ++k) quad += b.weights[k] * std::pow(b.nodes[k], deg);
    const double exact = deg % 2 == 1 ? 0.0 : 2.0 * std::pow(0.5, deg + 1) / (deg + 1);
    EXPECT_NEAR(quad, exact, 1e-13 * std::max(1.0, std::abs(exact))) << "degree " << deg;
  }
}

TEST_P(BasisByQ, NotExactBeyond2qMinus1) {
  const int q = GetParam();
  const NodalBasis b = build_basis(q);
  const int deg = 2 * q;
  double quad = 0.0;
  for (int k = 0; k < q; ++k) quad += b.weights[k] * std::pow(b.nodes[k], deg);
  const double exact = 2.0 * std::pow(0.5, deg + 1) / (deg + 1);
  EXPECT_GT(std::abs(quad - exact), 1e-12);
}

TEST_P(BasisByQ, DerivativeRowSumsVanish) {
  const int q = GetParam();
  const NodalBasis b = build_basis(q);
  for (int kp = 0; kp < q; ++kp) {
    double s = 0.0;
    for (int k = 0; k < q; ++k) s += b.d(k, kp);
    EXPECT_NEAR(s, 0.0, 1e-11);
  }
}

TEST_P(BasisByQ, EndpointPartitionOfUnity) {
  const NodalBasis b = build_basis(GetParam());
  double l = 0.0, r = 0.0;
  for (int k = 0; k < b.q; ++k) {
    l += b.endpoint_left[k];
    r += b.endpoint_right[k];
  }
  EXPECT_NEAR(l, 1.0, 1e-13);
  EXPECT_NEAR(r, 1.0, 1e-13);
}

TEST_P(BasisByQ, DerivativeReproducesPolynomials) {
  const int q = GetParam();
  const NodalBasis b = build_basis(q);
  for (int deg = 0; deg <= q - 1; ++deg) {
    for (int kp = 0; kp < q; ++kp) {
      double approx = 0.0;
      for (int k = 0; k < q; ++k) approx += std::pow(b.nodes[k], deg) * b.d(k, kp);
      const double exact = deg == 0 ? 0.0 : deg * std::pow(b.nodes[kp], deg - 1);
      EXPECT_NEAR(approx, exact, 1e-12);
    }
  }
}

TEST_P(BasisByQ, KroneckerAtNodes) {
  const NodalBasis b = build_basis(GetParam());
  for (int k = 0; k < b.q; ++k) {
    std::vector<double> e(b.q, 0.0);
    e[k] = 1.0;
    for (int kp = 0; kp < b.q; ++kp) {
      EXPECT_NEAR(eval_nodal(e, b, b.nodes[kp]), k == kp ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST_P(BasisByQ, NodesSymmetric) {
  const NodalBasis b = build_basis(GetParam());
  for (int k = 0; k < b.q; ++k) {
    EXPECT_EQ(b.nodes[k], -b.nodes[b.q - 1 - k]);
    EXPECT_NEAR(b.weights[k], b.weights[b.q - 1 - k], 1e-15);
  }
}

INSTANTIATE_TEST_SUITE_P(AllQ, BasisByQ, ::testing::Range(1, 9));

TEST(EvalNodal, ConstantReproduction) {
  const NodalBasis b = build_basis(4);
  const std::vector<double> c(4, 2.5);
  for (double xi : {-0.5, -0.1, 0.0, 0.37, 0.5}) EXPECT_NEAR(eval_nodal(c, b, xi), 2.5, 1e-13);
}

TEST(EvalNodal, LinearAtRightEnd) {
  const NodalBasis b = build_basis(2);
  const std::vector<double> c{b.nodes[0], b.nodes[1]};
  EXPECT_NEAR(eval_nodal(c, b, 0.5), 0.5, 1e-14);
}

TEST(EvalNodal, QuadraticAtLeftEnd) {
  const NodalBasis b = build_basis(3);
  std::vector<double> c;
  for (double x : b.nodes) c.push_back(x * x);
  EXPECT_NEAR(eval_nodal(c, b, -0.5), 0.25, 1e-14);
}
