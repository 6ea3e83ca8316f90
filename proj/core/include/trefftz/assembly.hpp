#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "trefftz/basis.hpp"
#include "trefftz/mesh.hpp"

namespace trefftz {

using SpaceFunction = std::function<double(double)>;
using TimeFunction = std::function<double(double)>;
using SourceFunction = std::function<double(double, double)>;

/// Flux stabilisation parameters. With `per_face_scaling`, `alpha` and
/// `beta` act as the constants a, b of alpha_f = a (h^x / h^x_f) eps_f and
/// beta_f = b (h^x / h^x_f) mu_f.
struct FluxParams {
  double alpha = 0.5;
  double beta = 0.5;
  double delta = 0.5;
  bool per_face_scaling = false;

  /// Hard violations; empty when usable.
  std::vector<std::string> violations() const;
  /// alpha == 0 or beta == 0: accepted, but outside the coercivity analysis.
  bool penalty_free() const { return alpha == 0.0 || beta == 0.0; }

  double alpha_on(const Mesh& mesh, const Face& face) const;
  double beta_on(const Mesh& mesh, const Face& face) const;
};

enum class BoundaryKind { DirichletPEC, DirichletData, Robin };

const char* to_string(BoundaryKind kind) noexcept;

/// Lateral boundary condition. For DirichletData `left`/`right` are E_L, E_R;
/// for Robin they are g_L, g_R. Empty functions mean zero data.
struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::DirichletPEC;
  TimeFunction left;
  TimeFunction right;

  static BoundaryCondition pec() { return {}; }
  static BoundaryCondition dirichlet(TimeFunction e_left, TimeFunction e_right) {
    return {BoundaryKind::DirichletData, std::move(e_left), std::move(e_right)};
  }
  static BoundaryCondition robin(TimeFunction g_left = {}, TimeFunction g_right = {}) {
    return {BoundaryKind::Robin, std::move(g_left), std::move(g_right)};
  }
  bool has_data() const { return static_cast<bool>(left) || static_cast<bool>(right); }
};

/// Initial data E_0, H_0. Derivatives are optional; consumers fall back to
/// finite differences when they are absent.
struct InitialData {
  SpaceFunction e0;
  SpaceFunction h0;
  SpaceFunction de0;
  SpaceFunction dh0;

  static InitialData zero();
  static InitialData constant(double e, double h);
  /// (E_0, H_0) = (amp_e, amp_h) * exp(-(x - center)^2 / width).
  static InitialData gaussian(double center, double width, double amp_e, double amp_h);
};

/// Mesh + basis choice + global dof numbering (slab-major, elements left to
/// right, basis functions in constructor order).
class Discretization {
 public:
  Discretization(std::shared_ptr<const Mesh> mesh, BasisSpec spec);

  const Mesh& mesh() const { return *mesh_; }
  std::shared_ptr<const Mesh> mesh_ptr() const { return mesh_; }
  const BasisSpec& spec() const { return spec_; }
  const ElementBasis& basis(std::size_t element_id) const { return bases_[element_id]; }

  std::size_t num_dofs() const { return slab_offset_.back(); }
  std::size_t slab_dofs(std::size_t slab) const { return slab_offset_[slab + 1] - slab_offset_[slab]; }
  /// First global dof of a slab.
  std::size_t slab_offset(std::size_t slab) const { return slab_offset_[slab]; }
  /// First dof of an element, relative to its slab.
  std::size_t local_offset(std::size_t element_id) const { return local_offset_[element_id]; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  BasisSpec spec_;
  std::vector<ElementBasis> bases_;
  std::vector<std::size_t> slab_offset_;
  std::vector<std::size_t> local_offset_;
};

/// Per-slab linear system A f_n = R f_{n-1} + b.
struct SlabSystem {
  std::size_t slab = 0;
  Eigen::MatrixXd A;
  Eigen::MatrixXd R;  // rows: this slab's test functions; cols: previous slab's trial functions
  Eigen::VectorXd b;
};

struct AssemblyOptions {
  /// Gauss points for polynomial terms; 0 selects p_max + 2.
  int face_points = 0;
  /// Gauss points for data terms; 0 selects max(p_max + 2, 12).
  int data_points = 0;
};

struct ProblemData {
  FluxParams flux;
  BoundaryCondition bc;
  InitialData initial;
  SourceFunction source;  // J(x, t); full-polynomial family only
};

/// Assembles slab systems for one discretization and problem.
class SlabAssembler {
 public:
  SlabAssembler(std::shared_ptr<const Discretization> disc, ProblemData data, AssemblyOptions options = {});

  const Discretization& discretization() const { return *disc_; }
  const ProblemData& data() const { return data_; }

  SlabSystem assemble(std::size_t slab) const;

  /// Intra-slab matrix A (test rows, trial columns).
  Eigen::MatrixXd self_matrix(std::size_t slab) const;
  /// Coupling to the previous slab's traces over the lower interface.
  Eigen::MatrixXd coupling_matrix(std::size_t slab) const;
  /// Load vector: initial data (slab 0), lateral data and source terms.
  Eigen::VectorXd load_vector(std::size_t slab) const;

 private:
  void add_volume_terms(std::size_t slab, Eigen::MatrixXd& A) const;
  void add_top_terms(std::size_t slab, Eigen::MatrixXd& A) const;
  void add_vertical_terms(std::size_t slab, Eigen::MatrixXd& A) const;

  std::shared_ptr<const Discretization> disc_;
  ProblemData data_;
  int face_points_;
  int data_points_;
};

/// a(u; v) over the whole space-time mesh, including inter-slab terms.
double apply_bilinear_global(const SlabAssembler& assembler, const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// l(v) over the whole mesh.
double apply_linear_global(const SlabAssembler& assembler, const Eigen::VectorXd& v);

/// Numerical traces on an internal vertical face: centred average plus jump
/// penalty. Returns (E_hat, H_hat) from the left and right traces.
struct FluxTrace {
  double e = 0.0;
  double h = 0.0;
};
FluxTrace vertical_flux(double e_left, double h_left, double e_right, double h_right, double alpha, double beta);

/// Writes nonzero entries as "row col value" lines (0-based).
void write_triplets(std::ostream& os, const Eigen::MatrixXd& matrix, double drop_tol = 0.0);

}  // namespace trefftz
