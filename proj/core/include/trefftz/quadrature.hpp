#pragma once

#include <vector>

namespace trefftz {

/// Gauss-Legendre rule on [-1, 1], or its affine image on a segment.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1, 1]; exact for degree <= 2n - 1.
QuadratureRule gauss_points(int n);

/// Affine image of `rule` on [a, b]. Weights sum to b - a.
QuadratureRule map_to_segment(const QuadratureRule& rule, double a, double b);

/// Tensor-product rule on [x0, x1] x [t0, t1], flattened x-fastest.
struct TensorRule {
  std::vector<double> x;
  std::vector<double> t;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

TensorRule tensor_rule(const QuadratureRule& rule_x, const QuadratureRule& rule_t, double x0, double x1,
                       double t0, double t1);

/// Points for polynomial-by-polynomial face and volume terms.
inline int face_quadrature_points(int p_max) { return p_max + 2; }

/// Points for any integral involving non-polynomial data.
inline int data_quadrature_points(int p_max) { return p_max + 2 > 12 ? p_max + 2 : 12; }

}  // namespace trefftz
