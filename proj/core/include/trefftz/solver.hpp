#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "trefftz/assembly.hpp"

namespace trefftz {

struct FieldValue {
  double e = 0.0;
  double h = 0.0;
};

/// Discrete solution: one coefficient vector per slab.
class SolutionField {
 public:
  SolutionField(std::shared_ptr<const Discretization> disc, std::vector<Eigen::VectorXd> slab_coeffs);

  const Discretization& discretization() const { return *disc_; }
  std::shared_ptr<const Discretization> discretization_ptr() const { return disc_; }
  const Mesh& mesh() const { return disc_->mesh(); }

  /// Value at (x, t); on element boundaries the smaller element index wins.
  FieldValue evaluate(double x, double t) const;
  /// Value of element `element_id`'s polynomial at (x, t), which may lie on
  /// (or just outside) its boundary. Used for one-sided traces.
  FieldValue evaluate_in(std::size_t element_id, double x, double t) const;

  const Eigen::VectorXd& slab_coefficients(std::size_t slab) const { return coeffs_[slab]; }
  Eigen::VectorXd global_coefficients() const;

  /// CSV rows: slab, element, basis, value.
  void write_csv(std::ostream& os) const;

 private:
  std::shared_ptr<const Discretization> disc_;
  std::vector<Eigen::VectorXd> coeffs_;
};

struct MarchOptions {
  AssemblyOptions assembly;
  /// Reuse A, R and the LU factorization across congruent slabs.
  bool reuse_factorization = true;
};

/// Solves slab by slab: A f_n = R f_{n-1} + b_n.
SolutionField march(std::shared_ptr<const Discretization> disc, const ProblemData& data, MarchOptions options = {});

/// U = A^{-1} R for a time-homogeneous mesh (any two consecutive slabs).
Eigen::MatrixXd update_matrix(std::shared_ptr<const Discretization> disc, const ProblemData& data,
                              AssemblyOptions options = {});

struct Spectrum {
  Eigen::VectorXcd eigenvalues;
  double spectral_radius = 0.0;
  /// sigma_max / sigma_min; +inf when U is numerically singular.
  double condition = 0.0;
};

struct SpectrumOptions {
  bool eigenvalues = true;
  bool condition = true;
};

Spectrum spectrum(const Eigen::MatrixXd& U, SpectrumOptions options = {});

/// 2-norm condition number via singular values.
double condition_number(const Eigen::MatrixXd& M);

}  // namespace trefftz
