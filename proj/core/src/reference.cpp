#include "trefftz/reference.hpp"

#include <algorithm>
#include <cmath>

#include "trefftz/error.hpp"
#include "trefftz/quadrature.hpp"

namespace trefftz {

namespace {

double central_difference(const std::function<double(double)>& f, double y, double scale) {
  const double h = 1e-6 * std::max(1.0, scale);
  return (f(y + h) - f(y - h)) / (2.0 * h);
}

double eval_or_zero(const TimeFunction& f, double t) { return f ? f(t) : 0.0; }

}  // namespace

const char* to_string(Extension ext) noexcept {
  switch (ext) {
    case Extension::PeriodicOddEven: return "periodic-odd-even";
    case Extension::FreeSpace: return "free-space";
    case Extension::RobinIngoing: return "robin-ingoing";
  }
  return "unknown";
}

CharacteristicProfile::CharacteristicProfile(const SpaceTimeDomain& domain, const MaterialLayout& materials,
                                             InitialData initial, Extension extension, BoundaryCondition bc)
    : domain_(domain), initial_(std::move(initial)), extension_(extension), bc_(std::move(bc)) {
  if (!materials.is_homogeneous()) {
    throw Error(ErrorCode::NonconstantMaterial, "exact reference requires constant eps and mu");
  }
  eps_ = materials.eps.front();
  mu_ = materials.mu.front();
  c_ = 1.0 / std::sqrt(eps_ * mu_);
  if (!initial_.e0 || !initial_.h0) initial_ = InitialData::zero();
}

CharacteristicProfile CharacteristicProfile::for_problem(const Mesh& mesh, const ProblemData& data) {
  switch (data.bc.kind) {
    case BoundaryKind::DirichletPEC:
      return {mesh.domain(), mesh.materials(), data.initial, Extension::PeriodicOddEven};
    case BoundaryKind::Robin:
      return {mesh.domain(), mesh.materials(), data.initial, Extension::RobinIngoing, data.bc};
    case BoundaryKind::DirichletData:
      break;
  }
  throw Error(ErrorCode::UnsupportedBC, "no exact reference for inhomogeneous Dirichlet data");
}

FieldValue CharacteristicProfile::extended_data(double y) const {
  if (extension_ != Extension::PeriodicOddEven) return {initial_.e0(y), initial_.h0(y)};
  const double L = domain_.length();
  double r = std::fmod(y - domain_.x_l, 2.0 * L);
  if (r < 0.0) r += 2.0 * L;
  r += domain_.x_l;
  if (r <= domain_.x_r) return {initial_.e0(r), initial_.h0(r)};
  const double m = 2.0 * domain_.x_r - r;
  return {-initial_.e0(m), initial_.h0(m)};
}

FieldValue CharacteristicProfile::extended_slope(double y) const {
  const double scale = domain_.length();
  auto de = [&](double z) { return initial_.de0 ? initial_.de0(z) : central_difference(initial_.e0, z, scale); };
  auto dh = [&](double z) { return initial_.dh0 ? initial_.dh0(z) : central_difference(initial_.h0, z, scale); };
  if (extension_ != Extension::PeriodicOddEven) return {de(y), dh(y)};
  const double L = domain_.length();
  double r = std::fmod(y - domain_.x_l, 2.0 * L);
  if (r < 0.0) r += 2.0 * L;
  r += domain_.x_l;
  if (r <= domain_.x_r) return {de(r), dh(r)};
  // d/dy of -E0(2 x_r - y) is E0'(m); of H0(2 x_r - y) is -H0'(m)
  const double m = 2.0 * domain_.x_r - r;
  return {de(m), -dh(m)};
}

double CharacteristicProfile::u0(double y) const {
  if (extension_ == Extension::RobinIngoing && y < domain_.x_l) {
    return eval_or_zero(bc_.left, (domain_.x_l - y) / c_);
  }
  const auto d = extended_data(y);
  return std::sqrt(eps_) * d.e + std::sqrt(mu_) * d.h;
}

double CharacteristicProfile::w0(double y) const {
  if (extension_ == Extension::RobinIngoing && y > domain_.x_r) {
    return eval_or_zero(bc_.right, (y - domain_.x_r) / c_);
  }
  const auto d = extended_data(y);
  return std::sqrt(eps_) * d.e - std::sqrt(mu_) * d.h;
}

double CharacteristicProfile::du0(double y) const {
  if (extension_ == Extension::RobinIngoing && y < domain_.x_l) {
    if (!bc_.left) return 0.0;
    return -central_difference(bc_.left, (domain_.x_l - y) / c_, domain_.t_final) / c_;
  }
  const auto d = extended_slope(y);
  return std::sqrt(eps_) * d.e + std::sqrt(mu_) * d.h;
}

double CharacteristicProfile::dw0(double y) const {
  if (extension_ == Extension::RobinIngoing && y > domain_.x_r) {
    if (!bc_.right) return 0.0;
    return central_difference(bc_.right, (y - domain_.x_r) / c_, domain_.t_final) / c_;
  }
  const auto d = extended_slope(y);
  return std::sqrt(eps_) * d.e - std::sqrt(mu_) * d.h;
}

FieldValue CharacteristicProfile::operator()(double x, double t) const {
  const double u = u0(x - c_ * t);
  const double w = w0(x + c_ * t);
  return {(u + w) / (2.0 * std::sqrt(eps_)), (u - w) / (2.0 * std::sqrt(mu_))};
}

FieldValue exact_field(const CharacteristicProfile& profile, double x, double t) { return profile(x, t); }

namespace {

// Degree-p Legendre L2 projection of f on [a, b].
struct Projection {
  double a, b;
  std::vector<double> coeffs;

  double value(double y, std::vector<double>& v, std::vector<double>& d) const {
    const int p = static_cast<int>(coeffs.size()) - 1;
    legendre(p, (2.0 * y - a - b) / (b - a), v, d);
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * v[j];
    return s;
  }
  double slope(double y, std::vector<double>& v, std::vector<double>& d) const {
    const int p = static_cast<int>(coeffs.size()) - 1;
    legendre(p, (2.0 * y - a - b) / (b - a), v, d);
    double s = 0.0;
    for (std::size_t j = 0; j < coeffs.size(); ++j) s += coeffs[j] * d[j];
    return s * 2.0 / (b - a);
  }
};

template <class F>
Projection project(F&& f, double a, double b, int p) {
  const auto rule = gauss_points(std::max(2 * p + 2, 40));
  const auto q = map_to_segment(rule, a, b);
  Projection proj{a, b, std::vector<double>(static_cast<std::size_t>(p) + 1, 0.0)};
  std::vector<double> v(proj.coeffs.size()), d(proj.coeffs.size());
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double fy = f(q.nodes[k]);
    legendre(p, (2.0 * q.nodes[k] - a - b) / (b - a), v, d);
    for (std::size_t j = 0; j < v.size(); ++j) proj.coeffs[j] += q.weights[k] * fy * v[j];
  }
  for (std::size_t j = 0; j < v.size(); ++j) proj.coeffs[j] *= (2.0 * static_cast<double>(j) + 1.0) / (b - a);
  return proj;
}

}  // namespace

double best_approximation_error_squared(const CharacteristicProfile& profile, const Element& el, int p,
                                        ApproxNorm norm) {
  if (p < 0) throw Error(ErrorCode::InvalidArgument, "degree must be non-negative");
  if (std::abs(el.eps - profile.eps()) > 1e-14 * profile.eps() ||
      std::abs(el.mu - profile.mu()) > 1e-14 * profile.mu()) {
    throw Error(ErrorCode::NonconstantMaterial, "element material differs from the reference medium");
  }
  const double c = profile.wave_speed();
  const auto pu = project([&](double y) { return profile.u0(y); }, el.x0 - c * el.t1, el.x1 - c * el.t0, p);
  const auto pw = project([&](double y) { return profile.w0(y); }, el.x0 + c * el.t0, el.x1 + c * el.t1, p);

  const auto rule = gauss_points(std::max(p + 8, 16));
  const auto tr = tensor_rule(rule, rule, el.x0, el.x1, el.t0, el.t1);
  const auto n = static_cast<std::size_t>(p) + 1;
  std::vector<double> v(n), d(n);
  const bool h1 = norm == ApproxNorm::H1c;

  double val = 0.0, grad = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double ym = tr.x[k] - c * tr.t[k];
    const double yp = tr.x[k] + c * tr.t[k];
    const double eu = profile.u0(ym) - pu.value(ym, v, d);
    const double ew = profile.w0(yp) - pw.value(yp, v, d);
    // eps E^2 + mu H^2 = (eu^2 + ew^2) / 2
    val += tr.weights[k] * 0.5 * (eu * eu + ew * ew);
    if (h1) {
      const double gu = profile.du0(ym) - pu.slope(ym, v, d);
      const double gw = profile.dw0(yp) - pw.slope(yp, v, d);
      // dx and c^-1 dt of (E, H) in the same weighted norm
      grad += tr.weights[k] * (0.5 * (gu * gu + gw * gw) + 0.5 * (gu * gu + gw * gw));
    }
  }
  if (!h1) return val;
  const double hd = el.hx() + c * el.ht();
  return val / hd + hd * grad;
}

}  // namespace trefftz
