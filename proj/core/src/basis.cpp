#include "trefftz/basis.hpp"

#include <algorithm>
#include <cmath>

#include "trefftz/error.hpp"

namespace trefftz {

const char* to_string(BasisFamily family) noexcept {
  return family == BasisFamily::TrefftzTransport ? "trefftz" : "full";
}

int BasisSpec::max_degree() const {
  if (element_degrees.empty()) return degree;
  return *std::max_element(element_degrees.begin(), element_degrees.end());
}

std::size_t BasisSpec::dimension(BasisFamily family, int p) {
  const auto q = static_cast<std::size_t>(p);
  return family == BasisFamily::TrefftzTransport ? 2 * q + 2 : (q + 1) * (q + 2);
}

void legendre(int p, double xi, std::span<double> values, std::span<double> derivs) {
  values[0] = 1.0;
  derivs[0] = 0.0;
  if (p == 0) return;
  values[1] = xi;
  derivs[1] = 1.0;
  for (int n = 1; n < p; ++n) {
    const auto k = static_cast<std::size_t>(n);
    values[k + 1] = ((2.0 * n + 1.0) * xi * values[k] - n * values[k - 1]) / (n + 1.0);
    derivs[k + 1] = derivs[k - 1] + (2.0 * n + 1.0) * values[k];
  }
}

ElementBasis::ElementBasis(BasisFamily family, const Element& element, int p)
    : family_(family), element_(element), degree_(p) {
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "polynomial degree must be non-negative");
  char_scale_ = 0.5 * element.hx() + 0.5 * element.wave_speed() * element.ht();
}

ElementBasis ElementBasis::trefftz(const Element& element, int p) {
  return ElementBasis(BasisFamily::TrefftzTransport, element, p);
}

ElementBasis ElementBasis::full(const Element& element, int p) {
  return ElementBasis(BasisFamily::FullPolynomial, element, p);
}

ElementBasis ElementBasis::make(BasisFamily family, const Element& element, int p) {
  return ElementBasis(family, element, p);
}

void ElementBasis::evaluate(double x, double t, std::span<BasisSample> out) const {
  const auto n = static_cast<std::size_t>(degree_) + 1;
  // p is small (<= ~20); stack buffers keep evaluation allocation-free.
  constexpr std::size_t kMax = 64;
  if (n > kMax) throw Error(ErrorCode::InvalidArgument, "polynomial degree too large");
  double la[kMax], da[kMax], lb[kMax], db[kMax];

  const double dx = x - element_.x_center();
  const double dt = t - element_.t_center();

  if (family_ == BasisFamily::TrefftzTransport) {
    const double c = element_.wave_speed();
    const double s = char_scale_;
    const double xi_minus = (dx - c * dt) / s;  // right-moving
    const double xi_plus = (dx + c * dt) / s;   // left-moving
    legendre(degree_, xi_minus, {la, n}, {da, n});
    legendre(degree_, xi_plus, {lb, n}, {db, n});
    const double ie = 1.0 / std::sqrt(element_.eps);
    const double im = 1.0 / std::sqrt(element_.mu);
    for (std::size_t j = 0; j < n; ++j) {
      // d/dx phi(xi-) = phi'/s, d/dt phi(xi-) = -c phi'/s
      const double gm = da[j] / s;
      out[j] = {ie * la[j], im * la[j], ie * gm, -c * ie * gm, im * gm, -c * im * gm};
      const double gp = db[j] / s;
      out[n + j] = {ie * lb[j], -im * lb[j], ie * gp, c * ie * gp, -im * gp, -c * im * gp};
    }
    return;
  }

  const double sx = 2.0 / element_.hx();
  const double st = 2.0 / element_.ht();
  legendre(degree_, dx * sx, {la, n}, {da, n});
  legendre(degree_, dt * st, {lb, n}, {db, n});
  const std::size_t half = size() / 2;
  std::size_t k = 0;
  for (int d = 0; d <= degree_; ++d) {
    for (int jt = 0; jt <= d; ++jt) {
      const auto ix = static_cast<std::size_t>(d - jt);
      const auto it = static_cast<std::size_t>(jt);
      const double v = la[ix] * lb[it];
      const double vx = da[ix] * sx * lb[it];
      const double vt = la[ix] * db[it] * st;
      out[k] = {v, 0.0, vx, vt, 0.0, 0.0};
      out[half + k] = {0.0, v, 0.0, 0.0, vx, vt};
      ++k;
    }
  }
}

BasisSample ElementBasis::evaluate_one(std::size_t k, double x, double t) const {
  return evaluate(x, t)[k];
}

std::vector<BasisSample> ElementBasis::evaluate(double x, double t) const {
  std::vector<BasisSample> out(size());
  evaluate(x, t, out);
  return out;
}

double pde_residual(const ElementBasis& basis, std::size_t k, std::span<const SpaceTimePoint> points) {
  const auto& el = basis.element();
  double worst = 0.0;
  std::vector<BasisSample> buf(basis.size());
  for (const auto& pt : points) {
    if (!el.contains(pt.x, pt.t)) {
      throw Error(ErrorCode::PointOutsideElement, "sample point outside element " + std::to_string(el.id));
    }
    basis.evaluate(pt.x, pt.t, buf);
    const auto& v = buf[k];
    const double r1 = v.dx_e + el.mu * v.dt_h;
    const double r2 = v.dx_h + el.eps * v.dt_e;
    worst = std::max({worst, std::abs(r1), std::abs(r2)});
  }
  return worst;
}

}  // namespace trefftz
