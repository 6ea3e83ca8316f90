#include "trefftz/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "trefftz/error.hpp"
#include "trefftz/quadrature.hpp"

namespace trefftz {

namespace {

int default_points(const SolutionField& sol, int points) {
  return points > 0 ? points : sol.discretization().spec().max_degree() + 6;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

struct FaceSums {
  double mismatch = 0.0;
  double horizontal = 0.0;
  double vertical = 0.0;
  double lateral = 0.0;
  double bottom = 0.0;
  double top = 0.0;
};

double lateral_density(const Element& el, const Face& f, const FluxParams& flux, BoundaryKind bc, const Mesh& mesh,
                       const FieldValue& v) {
  if (bc == BoundaryKind::Robin) {
    return (1.0 - flux.delta) * std::sqrt(el.eps / el.mu) * v.e * v.e +
           flux.delta * std::sqrt(el.mu / el.eps) * v.h * v.h;
  }
  return flux.alpha_on(mesh, f) * v.e * v.e;
}

// Skeleton sums shared by the DG norm and the energy audit.
FaceSums skeleton_sums(const Mesh& mesh, const FluxParams& flux, BoundaryKind bc, const BrokenField& v, int points) {
  FaceSums sums;
  const auto rule = gauss_points(points);
  for (const auto& f : mesh.faces()) {
    if (f.horizontal()) {
      const auto q = map_to_segment(rule, f.x0, f.x1);
      const double t = f.t0;
      for (std::size_t k = 0; k < q.size(); ++k) {
        const double x = q.nodes[k];
        const double w = q.weights[k];
        switch (f.kind) {
          case FaceKind::HorInternal: {
            const auto& up = mesh.element(f.second);
            const auto lo = v(f.first, x, t);
            const auto hi = v(f.second, x, t);
            const double je = lo.e - hi.e;
            const double jh = lo.h - hi.h;
            sums.horizontal += w * 0.5 * (up.eps * je * je + up.mu * jh * jh);
            break;
          }
          case FaceKind::Bottom:
          case FaceKind::Top: {
            const auto& el = mesh.element(f.first);
            const auto val = v(f.first, x, t);
            const double e = w * 0.5 * (el.eps * val.e * val.e + el.mu * val.h * val.h);
            (f.kind == FaceKind::Bottom ? sums.bottom : sums.top) += e;
            break;
          }
          default: break;
        }
      }
      continue;
    }
    const auto q = map_to_segment(rule, f.t0, f.t1);
    const double x = f.x0;
    if (f.kind == FaceKind::VerInternal) {
      const double alpha = flux.alpha_on(mesh, f);
      const double beta = flux.beta_on(mesh, f);
      for (std::size_t k = 0; k < q.size(); ++k) {
        const auto l = v(f.first, x, q.nodes[k]);
        const auto r = v(f.second, x, q.nodes[k]);
        const double je = l.e - r.e;
        const double jh = l.h - r.h;
        sums.vertical += q.weights[k] * (alpha * je * je + beta * jh * jh);
      }
    } else {
      const auto& el = mesh.element(f.first);
      for (std::size_t k = 0; k < q.size(); ++k) {
        sums.lateral += q.weights[k] * lateral_density(el, f, flux, bc, mesh, v(f.first, x, q.nodes[k]));
      }
    }
  }
  return sums;
}

}  // namespace

double l2_relative_error(const SolutionField& sol, const CharacteristicProfile& exact, int points) {
  const auto rule = gauss_points(default_points(sol, points));
  double num = 0.0, den = 0.0;
  for (const auto& el : sol.mesh().elements()) {
    const auto tr = tensor_rule(rule, rule, el.x0, el.x1, el.t0, el.t1);
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const auto ex = exact(tr.x[k], tr.t[k]);
      const auto hp = sol.evaluate_in(el.id, tr.x[k], tr.t[k]);
      num += tr.weights[k] * ((ex.e - hp.e) * (ex.e - hp.e) + (ex.h - hp.h) * (ex.h - hp.h));
      den += tr.weights[k] * (ex.e * ex.e + ex.h * ex.h);
    }
  }
  if (num == 0.0) return 0.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

double dg_norm_squared(const Mesh& mesh, const FluxParams& flux, BoundaryKind bc, const BrokenField& v, int points) {
  const auto s = skeleton_sums(mesh, flux, bc, v, points);
  return s.bottom + s.top + s.horizontal + s.vertical + s.lateral;
}

double dg_error(const SolutionField& sol, const CharacteristicProfile& exact, const FluxParams& flux, BoundaryKind bc,
                int points) {
  BrokenField err = [&](std::size_t id, double x, double t) {
    const auto ex = exact(x, t);
    const auto hp = sol.evaluate_in(id, x, t);
    return FieldValue{ex.e - hp.e, ex.h - hp.h};
  };
  return std::sqrt(dg_norm_squared(sol.mesh(), flux, bc, err, default_points(sol, points)));
}

double discrete_energy(const SolutionField& sol, double t, TraceSide side, int points) {
  const auto& mesh = sol.mesh();
  const auto& times = mesh.slab_times();
  const double T = times.back();
  const double tol = 1e-12 * std::max(1.0, T);
  if (t < -tol || t > T + tol) throw Error(ErrorCode::InvalidArgument, "time outside [0, T]");

  std::size_t slab = 0;
  auto hit = std::find_if(times.begin(), times.end(), [&](double tj) { return std::abs(tj - t) <= tol; });
  if (hit != times.end()) {
    const auto j = static_cast<std::size_t>(hit - times.begin());
    if (j == 0) {
      slab = 0;
    } else if (j == mesh.num_slabs()) {
      slab = j - 1;
    } else if (side == TraceSide::Below) {
      slab = j - 1;
    } else if (side == TraceSide::Above) {
      slab = j;
    } else {
      throw Error(ErrorCode::AmbiguousTrace,
                  "t = " + fmt(t) + " lies on a slab interface; choose the trace from below or above");
    }
  } else {
    slab = mesh.locate_slab(t);
  }

  const auto rule = gauss_points(default_points(sol, points));
  double energy = 0.0;
  for (const auto& el : mesh.slab_elements(slab)) {
    const auto q = map_to_segment(rule, el.x0, el.x1);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const auto v = sol.evaluate_in(el.id, q.nodes[k], t);
      energy += q.weights[k] * 0.5 * (el.eps * v.e * v.e + el.mu * v.h * v.h);
    }
  }
  return energy;
}

double initial_energy(const Mesh& mesh, const InitialData& initial, int points) {
  if (!initial.e0 || !initial.h0) return 0.0;
  const auto rule = gauss_points(points > 0 ? points : 12);
  double energy = 0.0;
  for (const auto& el : mesh.slab_elements(0)) {
    const auto q = map_to_segment(rule, el.x0, el.x1);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double e = initial.e0(q.nodes[k]);
      const double h = initial.h0(q.nodes[k]);
      energy += q.weights[k] * 0.5 * (el.eps * e * e + el.mu * h * h);
    }
  }
  return energy;
}

std::vector<double> slab_interface_energies(const SolutionField& sol, const InitialData& initial) {
  const auto& mesh = sol.mesh();
  const int p = sol.discretization().spec().max_degree();
  std::vector<double> out;
  out.reserve(mesh.num_slabs() + 1);
  out.push_back(initial_energy(mesh, initial, data_quadrature_points(p)));
  for (std::size_t j = 1; j <= mesh.num_slabs(); ++j) {
    out.push_back(discrete_energy(sol, mesh.slab_times()[j], TraceSide::Below));
  }
  return out;
}

EnergyBudget energy_budget(const SolutionField& sol, const ProblemData& data, AssemblyOptions options) {
  const auto& mesh = sol.mesh();
  const auto& bc = data.bc;
  if (bc.kind == BoundaryKind::DirichletData && bc.has_data()) {
    throw Error(ErrorCode::UnsupportedBC, "the energy audit covers PEC and Robin boundaries only");
  }
  const int p = sol.discretization().spec().max_degree();
  const int face_pts = std::max(options.face_points > 0 ? options.face_points : face_quadrature_points(p), p + 6);
  const int data_pts = options.data_points > 0 ? options.data_points : data_quadrature_points(p);
  const InitialData ic = data.initial.e0 && data.initial.h0 ? data.initial : InitialData::zero();

  EnergyBudget out;
  BrokenField field = [&](std::size_t id, double x, double t) { return sol.evaluate_in(id, x, t); };
  const auto sums = skeleton_sums(mesh, data.flux, bc.kind, field, face_pts);
  out.horizontal_jumps = sums.horizontal;
  out.vertical_jumps = sums.vertical;
  out.lateral = sums.lateral;
  out.final_energy = sums.top;

  // Initial terms use the same rule as the load vector so the identity
  // holds to rounding.
  const auto rule = gauss_points(data_pts);
  for (const auto& el : mesh.slab_elements(0)) {
    const auto q = map_to_segment(rule, el.x0, el.x1);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double x = q.nodes[k];
      const double e0 = ic.e0(x);
      const double h0 = ic.h0(x);
      const auto v = sol.evaluate_in(el.id, x, el.t0);
      out.initial += q.weights[k] * 0.5 * (el.eps * e0 * e0 + el.mu * h0 * h0);
      out.initial_mismatch +=
          q.weights[k] * 0.5 * (el.eps * (v.e - e0) * (v.e - e0) + el.mu * (v.h - h0) * (v.h - h0));
    }
  }

  if (bc.kind == BoundaryKind::Robin && bc.has_data()) {
    const double d = data.flux.delta;
    for (std::size_t s = 0; s < mesh.num_slabs(); ++s) {
      for (std::size_t fi : mesh.vertical_faces(s)) {
        const auto& f = mesh.faces()[fi];
        if (f.kind != FaceKind::Left && f.kind != FaceKind::Right) continue;
        const bool left = f.kind == FaceKind::Left;
        const auto& g = left ? bc.left : bc.right;
        if (!g) continue;
        const auto& el = mesh.element(f.first);
        const double sh = left ? 1.0 : -1.0;
        const auto q = map_to_segment(rule, f.t0, f.t1);
        for (std::size_t k = 0; k < q.size(); ++k) {
          const auto v = sol.evaluate_in(el.id, f.x0, q.nodes[k]);
          out.boundary_work += q.weights[k] * g(q.nodes[k]) *
                               (sh * d / std::sqrt(el.eps) * v.h + (1.0 - d) / std::sqrt(el.mu) * v.e);
        }
      }
    }
  }

  const double rhs = out.initial - out.initial_mismatch - out.horizontal_jumps - out.vertical_jumps - out.lateral +
                     out.boundary_work;
  const double gap = std::abs(out.final_energy - rhs);
  out.residual = out.initial > 0.0 ? gap / out.initial : gap;
  return out;
}

RateFit fit_rates(std::span<const double> abscissa, std::span<const double> errors, RateModel model) {
  if (abscissa.size() != errors.size()) {
    throw Error(ErrorCode::DimensionMismatch, "abscissa and error lists differ in length");
  }
  if (errors.size() < 3) {
    throw Error(ErrorCode::InsufficientSamples,
                "rate fit needs at least 3 samples, got " + std::to_string(errors.size()));
  }
  std::vector<std::size_t> idx(errors.size());
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t i : idx) {
    if (!(errors[i] > 0.0) || !std::isfinite(errors[i])) {
      throw Error(ErrorCode::NonpositiveError, "error sample " + std::to_string(i) + " is not positive");
    }
    if (model == RateModel::Algebraic && !(abscissa[i] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "mesh sizes must be positive");
    }
  }
  // coarsest first: largest h, or smallest p
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return model == RateModel::Algebraic ? abscissa[a] > abscissa[b] : abscissa[a] < abscissa[b];
  });

  RateFit fit;
  if (errors[idx.front()] > 0.5 && idx.size() - 1 >= 3) {
    idx.erase(idx.begin());
    fit.dropped_coarsest = true;
  }

  const auto n = static_cast<double>(idx.size());
  std::vector<double> xs, ys;
  for (std::size_t i : idx) {
    xs.push_back(model == RateModel::Algebraic ? std::log(abscissa[i]) : abscissa[i]);
    ys.push_back(std::log(errors[i]));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientSamples, "rate fit needs distinct abscissae");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
    fit.max_residual = std::max(fit.max_residual, std::abs(r));
  }
  fit.rms_residual = std::sqrt(ss / n);
  const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
  fit.log_range = *hi - *lo;
  fit.samples_used = idx.size();
  return fit;
}

const char* ErrorReport::csv_header() {
  return "experiment,h_x,h_t,p,family,alpha,beta,eps_Q,dg_error,energy_T,rate";
}

void ErrorReport::write_csv(std::ostream& os) const {
  os << csv_header() << '\n';
  for (const auto& r : rows) {
    os << r.experiment << ',' << fmt(r.h_x) << ',' << fmt(r.h_t) << ',' << r.p << ',' << r.family << ','
       << fmt(r.alpha) << ',' << fmt(r.beta) << ',' << fmt(r.eps_q) << ',' << fmt(r.dg_error) << ','
       << fmt(r.energy_t) << ',' << fmt(r.rate) << '\n';
  }
}

}  // namespace trefftz
