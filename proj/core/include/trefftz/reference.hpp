#pragma once

#include <cmath>

#include "trefftz/assembly.hpp"
#include "trefftz/solver.hpp"

namespace trefftz {

/// How the characteristic profiles are continued outside [x_l, x_r].
enum class Extension {
  /// PEC walls: E odd and H even about both walls, 2L-periodic.
  PeriodicOddEven,
  /// No walls; the data is evaluated as given on the whole line.
  FreeSpace,
  /// Robin walls: incoming characteristics carry the boundary data g_L, g_R.
  RobinIngoing,
};

const char* to_string(Extension ext) noexcept;

/// Exact solution in constant media from the d'Alembert decomposition
/// u = sqrt(eps) E + sqrt(mu) H (moves right), w = sqrt(eps) E - sqrt(mu) H
/// (moves left).
class CharacteristicProfile {
 public:
  /// Throws NonconstantMaterial when the layout is not homogeneous.
  CharacteristicProfile(const SpaceTimeDomain& domain, const MaterialLayout& materials, InitialData initial,
                        Extension extension, BoundaryCondition bc = {});

  /// Picks the extension matching the boundary condition (PEC or Robin).
  static CharacteristicProfile for_problem(const Mesh& mesh, const ProblemData& data);

  double eps() const { return eps_; }
  double mu() const { return mu_; }
  double wave_speed() const { return c_; }
  Extension extension() const { return extension_; }
  const SpaceTimeDomain& domain() const { return domain_; }

  /// Extended profiles and their derivatives.
  double u0(double y) const;
  double w0(double y) const;
  double du0(double y) const;
  double dw0(double y) const;

  FieldValue operator()(double x, double t) const;

 private:
  // Extended (E, H) initial data at y; no boundary data involved.
  FieldValue extended_data(double y) const;
  FieldValue extended_slope(double y) const;

  SpaceTimeDomain domain_;
  double eps_, mu_, c_;
  InitialData initial_;
  Extension extension_;
  BoundaryCondition bc_;
};

FieldValue exact_field(const CharacteristicProfile& profile, double x, double t);

enum class ApproxNorm { L2, H1c };

/// Squared error of the best approximation built from degree-p L2
/// projections of u0 on (x0 - c t1, x1 - c t0) and of w0 on
/// (x0 + c t0, x1 + c t1), measured on the element. L2 uses
/// int(eps E^2 + mu H^2); H1c adds the scaled first derivatives.
double best_approximation_error_squared(const CharacteristicProfile& profile, const Element& element, int p,
                                        ApproxNorm norm = ApproxNorm::L2);

inline double best_approximation_error(const CharacteristicProfile& profile, const Element& element, int p,
                                       ApproxNorm norm = ApproxNorm::L2) {
  return std::sqrt(best_approximation_error_squared(profile, element, p, norm));
}

}  // namespace trefftz
