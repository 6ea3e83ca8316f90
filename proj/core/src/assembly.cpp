#include "trefftz/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "trefftz/error.hpp"
#include "trefftz/quadrature.hpp"

namespace trefftz {

namespace {

// Basis values of one element sampled at a set of points, one column per point.
struct SampledBasis {
  Eigen::MatrixXd e, h;
  Eigen::MatrixXd dx_e, dt_e, dx_h, dt_h;
};

SampledBasis sample(const ElementBasis& basis, const std::vector<double>& xs, const std::vector<double>& ts,
                    bool derivatives = false) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto q = static_cast<Eigen::Index>(xs.size());
  SampledBasis out;
  out.e.resize(n, q);
  out.h.resize(n, q);
  if (derivatives) {
    out.dx_e.resize(n, q);
    out.dt_e.resize(n, q);
    out.dx_h.resize(n, q);
    out.dt_h.resize(n, q);
  }
  std::vector<BasisSample> buf(basis.size());
  for (Eigen::Index j = 0; j < q; ++j) {
    basis.evaluate(xs[static_cast<std::size_t>(j)], ts[static_cast<std::size_t>(j)], buf);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& s = buf[static_cast<std::size_t>(i)];
      out.e(i, j) = s.e;
      out.h(i, j) = s.h;
      if (derivatives) {
        out.dx_e(i, j) = s.dx_e;
        out.dt_e(i, j) = s.dt_e;
        out.dx_h(i, j) = s.dx_h;
        out.dt_h(i, j) = s.dt_h;
      }
    }
  }
  return out;
}

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

double eval_or_zero(const TimeFunction& f, double t) { return f ? f(t) : 0.0; }

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> FluxParams::violations() const {
  std::vector<std::string> out;
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) out.emplace_back("flux.alpha must be positive");
  if (!(beta >= 0.0) || !std::isfinite(beta)) out.emplace_back("flux.beta must be positive");
  if (!(delta > 0.0 && delta < 1.0)) out.emplace_back("flux.delta must lie in (0, 1)");
  return out;
}

double FluxParams::alpha_on(const Mesh& mesh, const Face& face) const {
  if (!per_face_scaling) return alpha;
  const auto& k1 = mesh.element(face.first);
  if (face.kind == FaceKind::VerInternal) {
    const auto& k2 = mesh.element(face.second);
    return alpha * mesh.max_hx() / std::min(k1.hx(), k2.hx()) * std::max(k1.eps, k2.eps);
  }
  return alpha * mesh.max_hx() / k1.hx() * k1.eps;
}

double FluxParams::beta_on(const Mesh& mesh, const Face& face) const {
  if (!per_face_scaling) return beta;
  const auto& k1 = mesh.element(face.first);
  if (face.kind == FaceKind::VerInternal) {
    const auto& k2 = mesh.element(face.second);
    return beta * mesh.max_hx() / std::min(k1.hx(), k2.hx()) * std::max(k1.mu, k2.mu);
  }
  return beta * mesh.max_hx() / k1.hx() * k1.mu;
}

const char* to_string(BoundaryKind kind) noexcept {
  switch (kind) {
    case BoundaryKind::DirichletPEC: return "pec";
    case BoundaryKind::DirichletData: return "dirichlet";
    case BoundaryKind::Robin: return "robin";
  }
  return "unknown";
}

InitialData InitialData::zero() { return constant(0.0, 0.0); }

InitialData InitialData::constant(double e, double h) {
  InitialData d;
  d.e0 = [e](double) { return e; };
  d.h0 = [h](double) { return h; };
  d.de0 = [](double) { return 0.0; };
  d.dh0 = [](double) { return 0.0; };
  return d;
}

InitialData InitialData::gaussian(double center, double width, double amp_e, double amp_h) {
  InitialData d;
  auto g = [center, width](double x) { return std::exp(-(x - center) * (x - center) / width); };
  auto dg = [center, width, g](double x) { return -2.0 * (x - center) / width * g(x); };
  d.e0 = [g, amp_e](double x) { return amp_e * g(x); };
  d.h0 = [g, amp_h](double x) { return amp_h * g(x); };
  d.de0 = [dg, amp_e](double x) { return amp_e * dg(x); };
  d.dh0 = [dg, amp_h](double x) { return amp_h * dg(x); };
  return d;
}

// ---------------------------------------------------------------------------

Discretization::Discretization(std::shared_ptr<const Mesh> mesh, BasisSpec spec)
    : mesh_(std::move(mesh)), spec_(std::move(spec)) {
  if (!spec_.element_degrees.empty() && spec_.element_degrees.size() != mesh_->num_elements()) {
    throw Error(ErrorCode::DimensionMismatch, "per-element degree list has " +
                                                  std::to_string(spec_.element_degrees.size()) +
                                                  " entries for " + std::to_string(mesh_->num_elements()) +
                                                  " elements");
  }
  bases_.reserve(mesh_->num_elements());
  local_offset_.resize(mesh_->num_elements());
  slab_offset_.push_back(0);
  for (std::size_t s = 0; s < mesh_->num_slabs(); ++s) {
    std::size_t local = 0;
    for (const auto& el : mesh_->slab_elements(s)) {
      bases_.push_back(ElementBasis::make(spec_.family, el, spec_.degree_of(el.id)));
      local_offset_[el.id] = local;
      local += bases_.back().size();
    }
    slab_offset_.push_back(slab_offset_.back() + local);
  }
}

// ---------------------------------------------------------------------------

SlabAssembler::SlabAssembler(std::shared_ptr<const Discretization> disc, ProblemData data, AssemblyOptions options)
    : disc_(std::move(disc)), data_(std::move(data)) {
  const int p_max = disc_->spec().max_degree();
  face_points_ = options.face_points > 0 ? options.face_points : face_quadrature_points(p_max);
  data_points_ = options.data_points > 0 ? options.data_points : data_quadrature_points(p_max);
  if (face_points_ < p_max + 1) {
    throw Error(ErrorCode::QuadratureOrderTooLow,
                std::to_string(face_points_) + " Gauss points cannot integrate degree-" +
                    std::to_string(2 * p_max) + " products exactly");
  }
  if (data_.source && disc_->spec().family == BasisFamily::TrefftzTransport) {
    throw Error(ErrorCode::TrefftzWithSource,
                "the Trefftz space only covers the homogeneous problem (J = 0); use the full-polynomial family");
  }
  if (auto v = data_.flux.violations(); !v.empty()) throw Error(ErrorCode::InvalidArgument, v.front());
  if (!data_.initial.e0 || !data_.initial.h0) data_.initial = InitialData::zero();
}

SlabSystem SlabAssembler::assemble(std::size_t slab) const {
  SlabSystem sys;
  sys.slab = slab;
  sys.A = self_matrix(slab);
  sys.R = coupling_matrix(slab);
  sys.b = load_vector(slab);
  return sys;
}

Eigen::MatrixXd SlabAssembler::self_matrix(std::size_t slab) const {
  const auto n = static_cast<Eigen::Index>(disc_->slab_dofs(slab));
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  if (disc_->spec().family == BasisFamily::FullPolynomial) add_volume_terms(slab, A);
  add_top_terms(slab, A);
  add_vertical_terms(slab, A);
  return A;
}

void SlabAssembler::add_volume_terms(std::size_t slab, Eigen::MatrixXd& A) const {
  const auto& mesh = disc_->mesh();
  const auto rule = gauss_points(face_points_);
  for (const auto& el : mesh.slab_elements(slab)) {
    const auto& basis = disc_->basis(el.id);
    const auto tr = tensor_rule(rule, rule, el.x0, el.x1, el.t0, el.t1);
    const auto s = sample(basis, tr.x, tr.t, true);
    const auto w = as_vector(tr.weights).asDiagonal();
    const auto n = static_cast<Eigen::Index>(basis.size());
    const auto off = static_cast<Eigen::Index>(disc_->local_offset(el.id));
    // -(E dx vH + mu H dt vH + H dx vE + eps E dt vE)
    A.block(off, off, n, n) -= s.dx_h * w * s.e.transpose() + el.mu * (s.dt_h * w * s.h.transpose()) +
                               s.dx_e * w * s.h.transpose() + el.eps * (s.dt_e * w * s.e.transpose());
  }
}

void SlabAssembler::add_top_terms(std::size_t slab, Eigen::MatrixXd& A) const {
  const auto& mesh = disc_->mesh();
  const auto rule = gauss_points(face_points_);
  for (const auto& el : mesh.slab_elements(slab)) {
    const auto& basis = disc_->basis(el.id);
    const auto q = map_to_segment(rule, el.x0, el.x1);
    const std::vector<double> ts(q.size(), el.t1);
    const auto s = sample(basis, q.nodes, ts);
    const auto w = as_vector(q.weights).asDiagonal();
    const auto n = static_cast<Eigen::Index>(basis.size());
    const auto off = static_cast<Eigen::Index>(disc_->local_offset(el.id));
    A.block(off, off, n, n) += el.eps * (s.e * w * s.e.transpose()) + el.mu * (s.h * w * s.h.transpose());
  }
}

void SlabAssembler::add_vertical_terms(std::size_t slab, Eigen::MatrixXd& A) const {
  const auto& mesh = disc_->mesh();
  const auto& flux = data_.flux;
  const bool robin = data_.bc.kind == BoundaryKind::Robin;
  const double delta = flux.delta;
  const auto rule = gauss_points(face_points_);

  for (std::size_t fi : mesh.vertical_faces(slab)) {
    const auto& f = mesh.faces()[fi];
    const auto q = map_to_segment(rule, f.t0, f.t1);
    const std::vector<double> xs(q.size(), f.x0);
    const auto w = as_vector(q.weights).asDiagonal();

    if (f.kind == FaceKind::VerInternal) {
      const double alpha = flux.alpha_on(mesh, f);
      const double beta = flux.beta_on(mesh, f);
      const std::size_t ids[2] = {f.first, f.second};
      const double sign[2] = {1.0, -1.0};  // n^x of left / right element
      SampledBasis s[2] = {sample(disc_->basis(ids[0]), xs, q.nodes), sample(disc_->basis(ids[1]), xs, q.nodes)};
      for (int b = 0; b < 2; ++b) {    // test side
        for (int a = 0; a < 2; ++a) {  // trial side
          const auto rb = static_cast<Eigen::Index>(disc_->local_offset(ids[b]));
          const auto ca = static_cast<Eigen::Index>(disc_->local_offset(ids[a]));
          const auto nb = s[b].e.rows();
          const auto na = s[a].e.rows();
          const double sab = sign[a] * sign[b];
          A.block(rb, ca, nb, na) += 0.5 * sign[b] * (s[b].h * w * s[a].e.transpose() + s[b].e * w * s[a].h.transpose()) +
                                     alpha * sab * (s[b].e * w * s[a].e.transpose()) +
                                     beta * sab * (s[b].h * w * s[a].h.transpose());
        }
      }
      continue;
    }

    const auto& el = mesh.element(f.first);
    const auto s = sample(disc_->basis(el.id), xs, q.nodes);
    const auto off = static_cast<Eigen::Index>(disc_->local_offset(el.id));
    const auto n = s.e.rows();
    const double nx = f.kind == FaceKind::Left ? -1.0 : 1.0;
    auto blk = A.block(off, off, n, n);
    if (!robin) {
      // left: -H vE + alpha E vE; right: H vE + alpha E vE
      const double alpha = flux.alpha_on(mesh, f);
      blk += nx * (s.e * w * s.h.transpose()) + alpha * (s.e * w * s.e.transpose());
    } else {
      const double r_mu = std::sqrt(el.mu / el.eps);
      const double r_eps = std::sqrt(el.eps / el.mu);
      // left:  -(1-d) E vH + d r_mu H vH - d H vE + (1-d) r_eps E vE
      // right:  (1-d) E vH + d r_mu H vH + d H vE + (1-d) r_eps E vE
      blk += nx * (1.0 - delta) * (s.h * w * s.e.transpose()) + delta * r_mu * (s.h * w * s.h.transpose()) +
             nx * delta * (s.e * w * s.h.transpose()) + (1.0 - delta) * r_eps * (s.e * w * s.e.transpose());
    }
  }
}

Eigen::MatrixXd SlabAssembler::coupling_matrix(std::size_t slab) const {
  if (slab == 0) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(disc_->slab_dofs(0)), 0);
  const auto& mesh = disc_->mesh();
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(disc_->slab_dofs(slab)),
                                            static_cast<Eigen::Index>(disc_->slab_dofs(slab - 1)));
  const auto rule = gauss_points(face_points_);
  for (std::size_t fi : mesh.lower_faces(slab)) {
    const auto& f = mesh.faces()[fi];
    const auto& lower = mesh.element(f.first);
    const auto& upper = mesh.element(f.second);
    const auto q = map_to_segment(rule, f.x0, f.x1);
    const std::vector<double> ts(q.size(), f.t0);
    const auto sl = sample(disc_->basis(lower.id), q.nodes, ts);
    const auto su = sample(disc_->basis(upper.id), q.nodes, ts);
    const auto w = as_vector(q.weights).asDiagonal();
    R.block(static_cast<Eigen::Index>(disc_->local_offset(upper.id)),
            static_cast<Eigen::Index>(disc_->local_offset(lower.id)), su.e.rows(), sl.e.rows()) +=
        upper.eps * (su.e * w * sl.e.transpose()) + upper.mu * (su.h * w * sl.h.transpose());
  }
  return R;
}

Eigen::VectorXd SlabAssembler::load_vector(std::size_t slab) const {
  const auto& mesh = disc_->mesh();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(disc_->slab_dofs(slab)));
  const auto rule = gauss_points(data_points_);
  std::vector<BasisSample> buf;

  auto add = [&](const Element& el, double x, double t, double we, double wh) {
    const auto& basis = disc_->basis(el.id);
    buf.resize(basis.size());
    basis.evaluate(x, t, buf);
    const auto off = disc_->local_offset(el.id);
    for (std::size_t i = 0; i < buf.size(); ++i) {
      b[static_cast<Eigen::Index>(off + i)] += we * buf[i].e + wh * buf[i].h;
    }
  };

  if (slab == 0) {
    const auto& ic = data_.initial;
    for (const auto& el : mesh.slab_elements(0)) {
      const auto q = map_to_segment(rule, el.x0, el.x1);
      for (std::size_t k = 0; k < q.size(); ++k) {
        const double x = q.nodes[k];
        add(el, x, el.t0, q.weights[k] * el.eps * ic.e0(x), q.weights[k] * el.mu * ic.h0(x));
      }
    }
  }

  const auto& bc = data_.bc;
  if (bc.kind != BoundaryKind::DirichletPEC && bc.has_data()) {
    const double delta = data_.flux.delta;
    for (std::size_t fi : mesh.vertical_faces(slab)) {
      const auto& f = mesh.faces()[fi];
      if (f.kind != FaceKind::Left && f.kind != FaceKind::Right) continue;
      const bool left = f.kind == FaceKind::Left;
      const auto& el = mesh.element(f.first);
      const auto& g = left ? bc.left : bc.right;
      const double nx = left ? -1.0 : 1.0;
      const auto q = map_to_segment(rule, f.t0, f.t1);
      for (std::size_t k = 0; k < q.size(); ++k) {
        const double t = q.nodes[k];
        const double gw = q.weights[k] * eval_or_zero(g, t);
        if (bc.kind == BoundaryKind::DirichletData) {
          // left: E_L (vH + alpha vE); right: E_R (-vH + alpha vE)
          add(el, f.x0, t, gw * data_.flux.alpha_on(mesh, f), -nx * gw);
        } else {
          // left: (d eps^-1/2 vH + (1-d) mu^-1/2 vE) g_L; right: (-d eps^-1/2 vH + (1-d) mu^-1/2 vE) g_R
          add(el, f.x0, t, gw * (1.0 - delta) / std::sqrt(el.mu), -nx * gw * delta / std::sqrt(el.eps));
        }
      }
    }
  }

  if (data_.source) {
    for (const auto& el : mesh.slab_elements(slab)) {
      const auto tr = tensor_rule(rule, rule, el.x0, el.x1, el.t0, el.t1);
      for (std::size_t k = 0; k < tr.size(); ++k) {
        add(el, tr.x[k], tr.t[k], tr.weights[k] * data_.source(tr.x[k], tr.t[k]), 0.0);
      }
    }
  }
  return b;
}

// ---------------------------------------------------------------------------

double apply_bilinear_global(const SlabAssembler& assembler, const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const auto& disc = assembler.discretization();
  const auto n = static_cast<Eigen::Index>(disc.num_dofs());
  if (u.size() != n || v.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient vectors must have " + std::to_string(n) + " entries");
  }
  double total = 0.0;
  for (std::size_t s = 0; s < disc.mesh().num_slabs(); ++s) {
    const auto off = static_cast<Eigen::Index>(disc.slab_offset(s));
    const auto len = static_cast<Eigen::Index>(disc.slab_dofs(s));
    const auto us = u.segment(off, len);
    const auto vs = v.segment(off, len);
    total += vs.dot(assembler.self_matrix(s) * us);
    if (s > 0) {
      const auto poff = static_cast<Eigen::Index>(disc.slab_offset(s - 1));
      const auto plen = static_cast<Eigen::Index>(disc.slab_dofs(s - 1));
      total -= vs.dot(assembler.coupling_matrix(s) * u.segment(poff, plen));
    }
  }
  return total;
}

double apply_linear_global(const SlabAssembler& assembler, const Eigen::VectorXd& v) {
  const auto& disc = assembler.discretization();
  if (v.size() != static_cast<Eigen::Index>(disc.num_dofs())) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient vector has the wrong length");
  }
  double total = 0.0;
  for (std::size_t s = 0; s < disc.mesh().num_slabs(); ++s) {
    total += v.segment(static_cast<Eigen::Index>(disc.slab_offset(s)), static_cast<Eigen::Index>(disc.slab_dofs(s)))
                 .dot(assembler.load_vector(s));
  }
  return total;
}

FluxTrace vertical_flux(double e_left, double h_left, double e_right, double h_right, double alpha, double beta) {
  return {0.5 * (e_left + e_right) + beta * (h_left - h_right), 0.5 * (h_left + h_right) + alpha * (e_left - e_right)};
}

void write_triplets(std::ostream& os, const Eigen::MatrixXd& matrix, double drop_tol) {
  const auto old_prec = os.precision(17);
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      const double v = matrix(i, j);
      if (std::abs(v) > drop_tol) os << i << ' ' << j << ' ' << v << '\n';
    }
  }
  os.precision(old_prec);
}

}  // namespace trefftz
