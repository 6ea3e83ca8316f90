#include "trefftz/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "trefftz/error.hpp"

namespace trefftz {

QuadratureRule gauss_points(int n) {
  if (n < 1) throw Error(ErrorCode::ZeroPoints, "Gauss rule needs at least one point, got " + std::to_string(n));
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // P_n' = n (x P_n - P_{n-1}) / (x^2 - 1)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node for the weight
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) {
      x = 0.0;
      dp = 1.0;
    } else {
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = -x;
    rule.nodes[hi] = x;
    rule.weights[lo] = w;
    rule.weights[hi] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

QuadratureRule map_to_segment(const QuadratureRule& rule, double a, double b) {
  if (!(a < b)) throw Error(ErrorCode::DegenerateSegment, "quadrature segment requires a < b");
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  QuadratureRule out;
  out.nodes.resize(rule.size());
  out.weights.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    out.nodes[i] = mid + half * rule.nodes[i];
    out.weights[i] = half * rule.weights[i];
  }
  return out;
}

TensorRule tensor_rule(const QuadratureRule& rule_x, const QuadratureRule& rule_t, double x0, double x1,
                       double t0, double t1) {
  const auto qx = map_to_segment(rule_x, x0, x1);
  const auto qt = map_to_segment(rule_t, t0, t1);
  TensorRule out;
  out.x.reserve(qx.size() * qt.size());
  out.t.reserve(qx.size() * qt.size());
  out.weights.reserve(qx.size() * qt.size());
  for (std::size_t j = 0; j < qt.size(); ++j) {
    for (std::size_t i = 0; i < qx.size(); ++i) {
      out.x.push_back(qx.nodes[i]);
      out.t.push_back(qt.nodes[j]);
      out.weights.push_back(qx.weights[i] * qt.weights[j]);
    }
  }
  return out;
}

}  // namespace trefftz
