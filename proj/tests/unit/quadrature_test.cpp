#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "trefftz/error.hpp"
#include "trefftz/quadrature.hpp"

using namespace trefftz;

namespace {

// Exact integral of x^k over [-1, 1].
double monomial_integral(int k) { return k % 2 ? 0.0 : 2.0 / (k + 1); }

double apply(const QuadratureRule& r, const std::function<double(double)>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST(Quadrature, OnePointIsMidpoint) {
  const auto r = gauss_points(1);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r.nodes[0], 0.0);
  EXPECT_DOUBLE_EQ(r.weights[0], 2.0);
}

TEST(Quadrature, LowOrderRulesMatchMomentEquations) {
  // Symmetric two-point rule: 2 w = 2 and 2 w x^2 = 2/3.
  const auto r2 = gauss_points(2);
  EXPECT_NEAR(std::abs(r2.nodes[0]), std::sqrt(1.0 / 3.0), 1e-15);
  EXPECT_NEAR(r2.weights[0], 1.0, 1e-15);

  // Three-point: 2 w1 x^2 = 2/3 and 2 w1 x^4 = 2/5 give x^2 = 3/5, w1 = 5/9.
  const auto r3 = gauss_points(3);
  std::vector<double> nodes = r3.nodes;
  std::sort(nodes.begin(), nodes.end());
  EXPECT_NEAR(nodes[0], -std::sqrt(0.6), 1e-15);
  EXPECT_NEAR(nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(nodes[2], std::sqrt(0.6), 1e-15);
  double w_mid = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(r3.nodes[i]) < 1e-12) w_mid = r3.weights[i];
  EXPECT_NEAR(w_mid, 8.0 / 9.0, 1e-15);
}

TEST(Quadrature, ExactForDegreeUpTo2nMinus1) {
  for (int n = 1; n <= 30; ++n) {
    const auto r = gauss_points(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double q = apply(r, [k](double x) { return std::pow(x, k); });
      EXPECT_NEAR(q, monomial_integral(k), 1e-13) << "n=" << n << " k=" << k;
    }
  }
}

TEST(Quadrature, NotExactBeyondDegree2n) {
  const auto r = gauss_points(3);
  EXPECT_GT(std::abs(apply(r, [](double x) { return std::pow(x, 6); }) - monomial_integral(6)), 1e-3);
}

TEST(Quadrature, RandomPolynomials) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int d = 0; d <= 21; ++d) {
    std::vector<double> c(d + 1);
    for (auto& x : c) x = g(rng);
    double exact = 0.0;
    for (int k = 0; k <= d; ++k) exact += c[k] * monomial_integral(k);
    const auto r = gauss_points((d + 2) / 2);
    const double q = apply(r, [&](double x) {
      double s = 0.0;
      for (int k = d; k >= 0; --k) s = s * x + c[k];
      return s;
    });
    EXPECT_NEAR(q, exact, 1e-12 * (1.0 + std::abs(exact)));
  }
}

TEST(Quadrature, NodesSortedInsideAndWeightsPositive) {
  for (int n = 1; n <= 40; ++n) {
    const auto r = gauss_points(n);
    EXPECT_TRUE(std::is_sorted(r.nodes.begin(), r.nodes.end()));
    for (std::size_t i = 0; i < r.size(); ++i) {
      EXPECT_GT(r.weights[i], 0.0);
      EXPECT_LT(std::abs(r.nodes[i]), 1.0);
    }
    EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 2.0, 1e-13);
  }
}

TEST(Quadrature, SegmentMapping) {
  const auto r = map_to_segment(gauss_points(10), 0.0, 1.0);
  EXPECT_NEAR(std::accumulate(r.weights.begin(), r.weights.end(), 0.0), 1.0, 1e-15);
  EXPECT_NEAR(apply(r, [](double x) { return x * x; }), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(apply(r, [](double x) { return std::exp(x); }), std::exp(1.0) - 1.0, 1e-14);
  const auto rev = map_to_segment(gauss_points(4), 2.0, 5.0);
  for (double x : rev.nodes) {
    EXPECT_GT(x, 2.0);
    EXPECT_LT(x, 5.0);
  }
}

TEST(Quadrature, TensorRuleIntegratesProducts) {
  const auto g = gauss_points(4);
  const auto t = tensor_rule(g, g, 0.0, 2.0, 1.0, 4.0);
  ASSERT_EQ(t.size(), 16u);
  EXPECT_DOUBLE_EQ(t.x[1] - t.x[0] > 0 ? 1.0 : 0.0, 1.0);  // x runs fastest
  EXPECT_DOUBLE_EQ(t.t[0], t.t[1]);
  double area = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    area += t.weights[i];
    moment += t.weights[i] * t.x[i] * t.x[i] * t.t[i];
  }
  EXPECT_NEAR(area, 6.0, 1e-14);
  // int_0^2 x^2 dx * int_1^4 t dt = 8/3 * 7.5
  EXPECT_NEAR(moment, 8.0 / 3.0 * 7.5, 1e-12);
}

TEST(Quadrature, Errors) {
  try {
    gauss_points(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroPoints);
  }
  try {
    map_to_segment(gauss_points(2), 1.0, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateSegment);
  }
}

TEST(Quadrature, PointCountHelpers) {
  EXPECT_EQ(face_quadrature_points(3), 5);
  EXPECT_EQ(data_quadrature_points(3), 12);
  EXPECT_EQ(data_quadrature_points(14), 16);
}
