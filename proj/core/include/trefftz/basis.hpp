#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "trefftz/mesh.hpp"

namespace trefftz {

enum class BasisFamily {
  /// Polynomial Trefftz space: Legendre polynomials of the two
  /// characteristic variables, 2p + 2 functions per element.
  TrefftzTransport,
  /// Complete polynomials L_jx(x) L_jt(t), jx + jt <= p, once in each
  /// field slot: (p + 1)(p + 2) functions per element.
  FullPolynomial,
};

const char* to_string(BasisFamily family) noexcept;

struct BasisSpec {
  BasisFamily family = BasisFamily::TrefftzTransport;
  int degree = 1;
  /// Optional per-element degrees, indexed by element id; overrides `degree`.
  std::vector<int> element_degrees;

  int degree_of(std::size_t element_id) const {
    return element_degrees.empty() ? degree : element_degrees[element_id];
  }
  int max_degree() const;
  static std::size_t dimension(BasisFamily family, int p);
};

/// Value and first derivatives of one (v_E, v_H) basis pair at a point.
struct BasisSample {
  double e = 0.0, h = 0.0;
  double dx_e = 0.0, dt_e = 0.0;
  double dx_h = 0.0, dt_h = 0.0;
};

/// Legendre polynomials L_0..L_p and their derivatives at xi.
void legendre(int p, double xi, std::span<double> values, std::span<double> derivs);

/// Local basis of one element. Cheap to copy; holds only geometry and
/// material data and evaluates on demand.
class ElementBasis {
 public:
  static ElementBasis trefftz(const Element& element, int p);
  static ElementBasis full(const Element& element, int p);
  static ElementBasis make(BasisFamily family, const Element& element, int p);

  BasisFamily family() const { return family_; }
  int degree() const { return degree_; }
  std::size_t size() const { return BasisSpec::dimension(family_, degree_); }
  const Element& element() const { return element_; }

  /// Evaluates all functions at (x, t); `out` must hold size() entries.
  void evaluate(double x, double t, std::span<BasisSample> out) const;
  BasisSample evaluate_one(std::size_t k, double x, double t) const;
  std::vector<BasisSample> evaluate(double x, double t) const;

 private:
  ElementBasis(BasisFamily family, const Element& element, int p);

  BasisFamily family_;
  Element element_;
  int degree_;
  // Trefftz: half-length of the characteristic-variable range.
  double char_scale_ = 1.0;
};

struct SpaceTimePoint {
  double x = 0.0;
  double t = 0.0;
};

/// Largest magnitude of the two Maxwell residuals
/// dx v_E + dt(mu v_H) and dx v_H + dt(eps v_E) over the sample points.
double pde_residual(const ElementBasis& basis, std::size_t k, std::span<const SpaceTimePoint> points);

}  // namespace trefftz
