#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "trefftz/basis.hpp"
#include "trefftz/error.hpp"
#include "trefftz/quadrature.hpp"

using namespace trefftz;

namespace {

Element make_element(double x0, double x1, double t0, double t1, double eps = 1.0, double mu = 1.0) {
  Element el;
  el.x0 = x0;
  el.x1 = x1;
  el.t0 = t0;
  el.t1 = t1;
  el.eps = eps;
  el.mu = mu;
  return el;
}

// Gram matrix of the E and H slots in the weighted L2 inner product.
Eigen::MatrixXd gram(const ElementBasis& b, int points) {
  const auto& el = b.element();
  const auto g = gauss_points(points);
  const auto rule = tensor_rule(g, g, el.x0, el.x1, el.t0, el.t1);
  const auto n = b.size();
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const auto s = b.evaluate(rule.x[q], rule.t[q]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        G(i, j) += rule.weights[q] * (el.eps * s[i].e * s[j].e + el.mu * s[i].h * s[j].h);
  }
  return G;
}

}  // namespace

TEST(Basis, Dimensions) {
  for (int p = 0; p <= 10; ++p) {
    EXPECT_EQ(BasisSpec::dimension(BasisFamily::TrefftzTransport, p), static_cast<std::size_t>(2 * p + 2));
    EXPECT_EQ(BasisSpec::dimension(BasisFamily::FullPolynomial, p), static_cast<std::size_t>((p + 1) * (p + 2)));
  }
  BasisSpec spec{BasisFamily::TrefftzTransport, 2, {1, 4, 3}};
  EXPECT_EQ(spec.max_degree(), 4);
  EXPECT_EQ(spec.degree_of(2), 3);
}

TEST(Basis, LegendreValues) {
  std::vector<double> v(5), d(5);
  const double x = 0.3;
  legendre(4, x, v, d);
  EXPECT_DOUBLE_EQ(v[0], 1.0);
  EXPECT_DOUBLE_EQ(v[1], x);
  EXPECT_NEAR(v[2], 0.5 * (3 * x * x - 1), 1e-15);
  EXPECT_NEAR(v[3], 0.5 * (5 * x * x * x - 3 * x), 1e-15);
  EXPECT_NEAR(v[4], (35 * std::pow(x, 4) - 30 * x * x + 3) / 8, 1e-15);
  EXPECT_NEAR(d[3], 0.5 * (15 * x * x - 3), 1e-14);
  EXPECT_NEAR(d[4], (140 * std::pow(x, 3) - 60 * x) / 8, 1e-14);
}

TEST(Basis, TrefftzFunctionsSolveMaxwell) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x0 = 10 * u(rng), t0 = 10 * u(rng);
    const auto el = make_element(x0, x0 + 0.1 + u(rng), t0, t0 + 0.1 + u(rng), 0.2 + 3 * u(rng), 0.2 + 3 * u(rng));
    const int p = trial % 7;
    const auto b = ElementBasis::trefftz(el, p);
    std::vector<SpaceTimePoint> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({el.x0 + u(rng) * el.hx(), el.t0 + u(rng) * el.ht()});
    for (std::size_t k = 0; k < b.size(); ++k) EXPECT_LT(pde_residual(b, k, pts), 1e-12) << "p=" << p;
  }
}

TEST(Basis, DerivativesMatchFiniteDifferences) {
  const auto el = make_element(1.0, 2.5, 0.5, 1.25, 2.0, 0.7);
  const double step = 1e-6;
  for (auto family : {BasisFamily::TrefftzTransport, BasisFamily::FullPolynomial}) {
    const auto b = ElementBasis::make(family, el, 4);
    const double x = 1.7, t = 0.9;
    const auto s = b.evaluate(x, t);
    const auto xp = b.evaluate(x + step, t), xm = b.evaluate(x - step, t);
    const auto tp = b.evaluate(x, t + step), tm = b.evaluate(x, t - step);
    for (std::size_t k = 0; k < b.size(); ++k) {
      EXPECT_NEAR(s[k].dx_e, (xp[k].e - xm[k].e) / (2 * step), 1e-7);
      EXPECT_NEAR(s[k].dt_e, (tp[k].e - tm[k].e) / (2 * step), 1e-7);
      EXPECT_NEAR(s[k].dx_h, (xp[k].h - xm[k].h) / (2 * step), 1e-7);
      EXPECT_NEAR(s[k].dt_h, (tp[k].h - tm[k].h) / (2 * step), 1e-7);
    }
  }
}

TEST(Basis, FullPolynomialGramIsDiagonal) {
  // Tensor Legendre products are orthogonal: int L_a L_b = 2/(2a+1) delta_ab
  // on the reference interval, scaled by hx/2 and ht/2.
  const auto el = make_element(0.0, 2.0, 1.0, 1.5, 3.0, 2.0);
  const int p = 3;
  const auto b = ElementBasis::full(el, p);
  const auto G = gram(b, p + 2);
  const std::size_t half = b.size() / 2;
  std::size_t k = 0;
  for (int d = 0; d <= p; ++d) {
    for (int jt = 0; jt <= d; ++jt, ++k) {
      const int jx = d - jt;
      const double ref = (el.hx() / (2 * jx + 1)) * (el.ht() / (2 * jt + 1));
      EXPECT_NEAR(G(k, k), el.eps * ref, 1e-13);
      EXPECT_NEAR(G(half + k, half + k), el.mu * ref, 1e-13);
    }
  }
  Eigen::MatrixXd off = G;
  off.diagonal().setZero();
  EXPECT_LT(off.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Basis, TrefftzFunctionsAreIndependent) {
  const auto el = make_element(0.0, 1.0, 0.0, 1.0, 1.0, 1.0);
  for (int p = 0; p <= 6; ++p) {
    const auto G = gram(ElementBasis::trefftz(el, p), p + 3);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(G);
    EXPECT_GT(svd.singularValues().minCoeff(), 1e-10) << "p=" << p;
  }
}

TEST(Basis, ResidualOfNonTrefftzFunction) {
  const auto el = make_element(0.0, 2.0, 0.0, 1.0);
  const auto b = ElementBasis::full(el, 1);
  const std::vector<SpaceTimePoint> pts{{0.5, 0.5}, {1.5, 0.25}};
  EXPECT_EQ(pde_residual(b, 0, pts), 0.0);  // constant
  // index 1 is L_1 in x for the E slot: dx v_E = 2 / hx
  EXPECT_NEAR(pde_residual(b, 1, pts), 1.0, 1e-15);
}

TEST(Basis, Errors) {
  const auto el = make_element(0.0, 1.0, 0.0, 1.0);
  const auto b = ElementBasis::trefftz(el, 1);
  const std::vector<SpaceTimePoint> outside{{2.0, 0.5}};
  try {
    pde_residual(b, 0, outside);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointOutsideElement);
  }
  EXPECT_THROW(ElementBasis::trefftz(el, -1), Error);
}
