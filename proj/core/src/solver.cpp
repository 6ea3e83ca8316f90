#include "trefftz/solver.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "trefftz/error.hpp"

namespace trefftz {

namespace {

bool same_partition(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

// Slabs s and s-1 produce identical A (and R when their predecessors match).
bool congruent(const Discretization& disc, std::size_t s) {
  const auto& mesh = disc.mesh();
  const double scale = std::max(1.0, mesh.domain().length());
  if (std::abs(mesh.slab_height(s) - mesh.slab_height(s - 1)) > 1e-12 * mesh.slab_height(s)) return false;
  if (!same_partition(mesh.partition(s), mesh.partition(s - 1), 1e-12 * scale)) return false;
  const auto cur = mesh.slab_elements(s);
  const auto prev = mesh.slab_elements(s - 1);
  for (std::size_t k = 0; k < cur.size(); ++k) {
    if (disc.spec().degree_of(cur[k].id) != disc.spec().degree_of(prev[k].id)) return false;
  }
  return true;
}

Eigen::PartialPivLU<Eigen::MatrixXd> factorize(const Eigen::MatrixXd& A, std::size_t slab) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  const double rc = lu.rcond();
  if (!(rc > std::numeric_limits<double>::epsilon())) {
    throw Error(ErrorCode::SingularSlabMatrix,
                "slab " + std::to_string(slab) + " matrix is singular (rcond " + std::to_string(rc) + ")");
  }
  return lu;
}

}  // namespace

SolutionField::SolutionField(std::shared_ptr<const Discretization> disc, std::vector<Eigen::VectorXd> slab_coeffs)
    : disc_(std::move(disc)), coeffs_(std::move(slab_coeffs)) {
  if (coeffs_.size() != disc_->mesh().num_slabs()) {
    throw Error(ErrorCode::DimensionMismatch, "one coefficient vector per slab expected");
  }
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (coeffs_[s].size() != static_cast<Eigen::Index>(disc_->slab_dofs(s))) {
      throw Error(ErrorCode::DimensionMismatch, "coefficient vector of slab " + std::to_string(s) + " has wrong size");
    }
  }
}

FieldValue SolutionField::evaluate(double x, double t) const { return evaluate_in(mesh().locate(x, t), x, t); }

FieldValue SolutionField::evaluate_in(std::size_t element_id, double x, double t) const {
  const auto& basis = disc_->basis(element_id);
  const auto& el = basis.element();
  constexpr std::size_t kStack = 256;
  BasisSample stack[kStack];
  std::vector<BasisSample> heap;
  std::span<BasisSample> buf;
  if (basis.size() <= kStack) {
    buf = {stack, basis.size()};
  } else {
    heap.resize(basis.size());
    buf = heap;
  }
  basis.evaluate(x, t, buf);
  const auto& c = coeffs_[el.slab];
  const auto off = disc_->local_offset(element_id);
  FieldValue v;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    const double ci = c[static_cast<Eigen::Index>(off + i)];
    v.e += ci * buf[i].e;
    v.h += ci * buf[i].h;
  }
  return v;
}

Eigen::VectorXd SolutionField::global_coefficients() const {
  Eigen::VectorXd g(static_cast<Eigen::Index>(disc_->num_dofs()));
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    g.segment(static_cast<Eigen::Index>(disc_->slab_offset(s)), coeffs_[s].size()) = coeffs_[s];
  }
  return g;
}

void SolutionField::write_csv(std::ostream& os) const {
  const auto old_prec = os.precision(17);
  os << "slab,element,basis,value\n";
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    for (const auto& el : mesh().slab_elements(s)) {
      const auto off = disc_->local_offset(el.id);
      const auto n = disc_->basis(el.id).size();
      for (std::size_t i = 0; i < n; ++i) {
        os << s << ',' << el.index_in_slab << ',' << i << ',' << coeffs_[s][static_cast<Eigen::Index>(off + i)]
           << '\n';
      }
    }
  }
  os.precision(old_prec);
}

SolutionField march(std::shared_ptr<const Discretization> disc, const ProblemData& data, MarchOptions options) {
  const SlabAssembler assembler(disc, data, options.assembly);
  const auto n_slabs = disc->mesh().num_slabs();
  std::vector<Eigen::VectorXd> coeffs;
  coeffs.reserve(n_slabs);

  Eigen::MatrixXd R;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  bool prev_congruent = false;
  for (std::size_t s = 0; s < n_slabs; ++s) {
    const bool cong = options.reuse_factorization && s > 0 && congruent(*disc, s);
    if (!cong) lu = factorize(assembler.self_matrix(s), s);
    // R_s couples slab s to s-1; it repeats once two consecutive pairs match.
    if (s > 0 && !(cong && prev_congruent)) R = assembler.coupling_matrix(s);
    Eigen::VectorXd rhs = assembler.load_vector(s);
    if (s > 0) rhs.noalias() += R * coeffs.back();
    coeffs.push_back(lu.solve(rhs));
    prev_congruent = cong;
  }
  return SolutionField(std::move(disc), std::move(coeffs));
}

Eigen::MatrixXd update_matrix(std::shared_ptr<const Discretization> disc, const ProblemData& data,
                              AssemblyOptions options) {
  const auto& mesh = disc->mesh();
  if (mesh.num_slabs() < 2) {
    throw Error(ErrorCode::InhomogeneousSlabs, "the update matrix needs at least two slabs");
  }
  for (std::size_t s = 1; s < mesh.num_slabs(); ++s) {
    if (!congruent(*disc, s)) {
      throw Error(ErrorCode::InhomogeneousSlabs, "slab " + std::to_string(s) + " differs from slab " +
                                                     std::to_string(s - 1) + "; U is not slab-independent");
    }
  }
  ProblemData homogeneous = data;
  homogeneous.initial = InitialData::zero();
  homogeneous.source = nullptr;
  const SlabAssembler assembler(std::move(disc), std::move(homogeneous), options);
  const auto lu = factorize(assembler.self_matrix(1), 1);
  return lu.solve(assembler.coupling_matrix(1));
}

double condition_number(const Eigen::MatrixXd& M) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 1.0;
  const double smin = sv[sv.size() - 1];
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return sv[0] / smin;
}

Spectrum spectrum(const Eigen::MatrixXd& U, SpectrumOptions options) {
  if (U.rows() != U.cols()) throw Error(ErrorCode::DimensionMismatch, "spectrum needs a square matrix");
  Spectrum out;
  if (options.eigenvalues) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(U, false);
    if (es.info() != Eigen::Success) {
      throw Error(ErrorCode::EigensolverFailure, "QR iteration did not converge");
    }
    out.eigenvalues = es.eigenvalues();
    out.spectral_radius = out.eigenvalues.size() ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  }
  if (options.condition) out.condition = condition_number(U);
  return out;
}

}  // namespace trefftz
