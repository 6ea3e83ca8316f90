#include "trefftz/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "trefftz/error.hpp"

namespace trefftz {

namespace {

constexpr double kRelTol = 1e-12;

std::string fmt_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Index of the cell of a sorted breakpoint list containing x; ties go left.
std::size_t cell_of(std::span<const double> points, double x) {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  auto j = static_cast<std::ptrdiff_t>(it - points.begin());
  const auto n_cells = static_cast<std::ptrdiff_t>(points.size()) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(j - 1, 0, n_cells - 1));
}

}  // namespace

void SpaceTimeDomain::validate() const {
  if (!(x_l < x_r)) {
    throw Error(ErrorCode::NegativeExtent,
                "domain requires x_l < x_r, got [" + fmt_real(x_l) + ", " + fmt_real(x_r) + "]");
  }
  if (!(t_final > 0.0)) {
    throw Error(ErrorCode::NegativeExtent, "domain requires t_final > 0, got " + fmt_real(t_final));
  }
}

MaterialLayout MaterialLayout::homogeneous(double eps, double mu) {
  MaterialLayout m;
  m.eps = {eps};
  m.mu = {mu};
  return m;
}

std::size_t MaterialLayout::interval_of(double x) const {
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  return static_cast<std::size_t>(it - breakpoints.begin());
}

double MaterialLayout::wave_speed_at(double x) const {
  const auto i = interval_of(x);
  return 1.0 / std::sqrt(eps[i] * mu[i]);
}

bool MaterialLayout::is_homogeneous() const {
  return std::all_of(eps.begin(), eps.end(), [&](double e) { return e == eps.front(); }) &&
         std::all_of(mu.begin(), mu.end(), [&](double m) { return m == mu.front(); });
}

void MaterialLayout::validate(const SpaceTimeDomain& domain) const {
  if (eps.size() != breakpoints.size() + 1 || mu.size() != breakpoints.size() + 1) {
    throw Error(ErrorCode::InvalidArgument,
                "materials need one eps and one mu value per interval (" +
                    std::to_string(breakpoints.size() + 1) + " intervals)");
  }
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > domain.x_l && breakpoints[i] < domain.x_r)) {
      throw Error(ErrorCode::InvalidArgument,
                  "material breakpoint " + fmt_real(breakpoints[i]) + " outside the open domain");
    }
    if (i > 0 && !(breakpoints[i] > breakpoints[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "material breakpoints must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !(mu[i] > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "eps and mu must be positive on every interval (interval " + std::to_string(i) + ")");
    }
  }
}

double Element::wave_speed() const { return 1.0 / std::sqrt(eps * mu); }

bool Element::contains(double x, double t, double rel_tol) const {
  const double tx = rel_tol * std::max(1.0, std::abs(hx()));
  const double tt = rel_tol * std::max(1.0, std::abs(ht()));
  return x >= x0 - tx && x <= x1 + tx && t >= t0 - tt && t <= t1 + tt;
}

std::vector<Interval> union_interface(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2) {
    throw Error(ErrorCode::EmptyPartition, "partitions need at least two points");
  }
  const double scale = std::max({1.0, std::abs(a.front()), std::abs(a.back())});
  const double tol = kRelTol * scale;
  if (std::abs(a.front() - b.front()) > tol || std::abs(a.back() - b.back()) > tol) {
    throw Error(ErrorCode::MismatchedDomain, "partitions cover different intervals");
  }
  std::vector<double> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  std::vector<double> points;
  points.reserve(merged.size());
  for (double x : merged) {
    if (points.empty() || x - points.back() > tol) points.push_back(x);
  }
  std::vector<Interval> pieces;
  pieces.reserve(points.size() - 1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) pieces.push_back({points[i], points[i + 1]});
  return pieces;
}

Mesh Mesh::build(const SpaceTimeDomain& domain, const MaterialLayout& materials,
                 std::span<const double> slab_heights,
                 const std::vector<std::vector<double>>& x_partitions) {
  domain.validate();
  materials.validate(domain);

  if (slab_heights.empty()) throw Error(ErrorCode::EmptyPartition, "no time slabs given");
  Mesh mesh;
  mesh.domain_ = domain;
  mesh.materials_ = materials;

  mesh.slab_times_.reserve(slab_heights.size() + 1);
  mesh.slab_times_.push_back(0.0);
  for (std::size_t s = 0; s < slab_heights.size(); ++s) {
    if (!(slab_heights[s] > 0.0)) {
      throw Error(ErrorCode::NegativeExtent,
                  "slab " + std::to_string(s) + " has non-positive height " + fmt_real(slab_heights[s]));
    }
    mesh.slab_times_.push_back(mesh.slab_times_.back() + slab_heights[s]);
  }
  if (std::abs(mesh.slab_times_.back() - domain.t_final) > 1e-10 * domain.t_final) {
    throw Error(ErrorCode::InvalidArgument, "slab heights sum to " + fmt_real(mesh.slab_times_.back()) +
                                                ", expected t_final = " + fmt_real(domain.t_final));
  }
  mesh.slab_times_.back() = domain.t_final;

  const std::size_t n_slabs = slab_heights.size();
  if (x_partitions.size() != 1 && x_partitions.size() != n_slabs) {
    throw Error(ErrorCode::InvalidArgument, "expected 1 or " + std::to_string(n_slabs) +
                                                " x-partitions, got " + std::to_string(x_partitions.size()));
  }
  const double xtol = kRelTol * std::max({1.0, std::abs(domain.x_l), std::abs(domain.x_r)});
  mesh.partitions_.resize(n_slabs);
  for (std::size_t s = 0; s < n_slabs; ++s) {
    std::vector<double> part = x_partitions.size() == 1 ? x_partitions.front() : x_partitions[s];
    if (part.size() < 2) {
      throw Error(ErrorCode::EmptyPartition, "x-partition of slab " + std::to_string(s) + " has no cells");
    }
    if (std::abs(part.front() - domain.x_l) > xtol || std::abs(part.back() - domain.x_r) > xtol) {
      throw Error(ErrorCode::MismatchedDomain,
                  "x-partition of slab " + std::to_string(s) + " does not span [x_l, x_r]");
    }
    part.front() = domain.x_l;
    part.back() = domain.x_r;
    for (std::size_t i = 1; i < part.size(); ++i) {
      if (!(part[i] > part[i - 1])) {
        throw Error(ErrorCode::NegativeExtent,
                    "x-partition of slab " + std::to_string(s) + " is not strictly increasing");
      }
    }
    for (double bp : materials.breakpoints) {
      auto it = std::min_element(part.begin(), part.end(),
                                 [bp](double a, double b) { return std::abs(a - bp) < std::abs(b - bp); });
      if (std::abs(*it - bp) > xtol) {
        throw Error(ErrorCode::NonconformingMaterial, "material breakpoint x=" + fmt_real(bp) +
                                                          " missing from the x-partition of slab " +
                                                          std::to_string(s));
      }
      *it = bp;
    }
    mesh.partitions_[s] = std::move(part);
  }

  // Elements, slab-major, left to right.
  mesh.slab_begin_.reserve(n_slabs + 1);
  for (std::size_t s = 0; s < n_slabs; ++s) {
    mesh.slab_begin_.push_back(mesh.elements_.size());
    const auto& part = mesh.partitions_[s];
    for (std::size_t i = 0; i + 1 < part.size(); ++i) {
      Element e;
      e.id = mesh.elements_.size();
      e.slab = s;
      e.index_in_slab = i;
      e.x0 = part[i];
      e.x1 = part[i + 1];
      e.t0 = mesh.slab_times_[s];
      e.t1 = mesh.slab_times_[s + 1];
      const auto m = materials.interval_of(0.5 * (e.x0 + e.x1));
      e.eps = materials.eps[m];
      e.mu = materials.mu[m];
      mesh.max_hx_ = std::max(mesh.max_hx_, e.hx());
      mesh.elements_.push_back(e);
    }
  }
  mesh.slab_begin_.push_back(mesh.elements_.size());

  // Faces.
  mesh.vertical_faces_.resize(n_slabs);
  mesh.lower_faces_.resize(n_slabs);
  auto add_face = [&mesh](Face f) {
    mesh.faces_.push_back(f);
    return mesh.faces_.size() - 1;
  };
  for (std::size_t s = 0; s < n_slabs; ++s) {
    const auto elems = mesh.slab_elements(s);
    const double t0 = mesh.slab_times_[s];
    const double t1 = mesh.slab_times_[s + 1];

    // lower edge
    if (s == 0) {
      for (const auto& e : elems) {
        mesh.lower_faces_[s].push_back(add_face({FaceKind::Bottom, e.x0, e.x1, t0, t0, e.id, kNoElement}));
      }
    } else {
      const auto& below = mesh.partitions_[s - 1];
      const auto& above = mesh.partitions_[s];
      for (const auto& piece : union_interface(below, above)) {
        const double mid = 0.5 * (piece.lo + piece.hi);
        const std::size_t lower = mesh.slab_begin_[s - 1] + cell_of(below, mid);
        const std::size_t upper = mesh.slab_begin_[s] + cell_of(above, mid);
        mesh.lower_faces_[s].push_back(add_face({FaceKind::HorInternal, piece.lo, piece.hi, t0, t0, lower, upper}));
      }
    }

    // vertical faces
    mesh.vertical_faces_[s].push_back(
        add_face({FaceKind::Left, domain.x_l, domain.x_l, t0, t1, elems.front().id, kNoElement}));
    for (std::size_t i = 0; i + 1 < elems.size(); ++i) {
      const double x = elems[i].x1;
      mesh.vertical_faces_[s].push_back(
          add_face({FaceKind::VerInternal, x, x, t0, t1, elems[i].id, elems[i + 1].id}));
    }
    mesh.vertical_faces_[s].push_back(
        add_face({FaceKind::Right, domain.x_r, domain.x_r, t0, t1, elems.back().id, kNoElement}));

    if (s + 1 == n_slabs) {
      for (const auto& e : elems) add_face({FaceKind::Top, e.x0, e.x1, t1, t1, e.id, kNoElement});
    }
  }
  return mesh;
}

Mesh Mesh::uniform(const SpaceTimeDomain& domain, const MaterialLayout& materials, std::size_t nx,
                   std::size_t nt) {
  domain.validate();
  if (nx == 0 || nt == 0) throw Error(ErrorCode::EmptyPartition, "uniform mesh needs nx, nt >= 1");
  std::vector<double> part(nx + 1);
  for (std::size_t i = 0; i <= nx; ++i) {
    part[i] = domain.x_l + domain.length() * static_cast<double>(i) / static_cast<double>(nx);
  }
  part.back() = domain.x_r;
  std::vector<double> heights(nt, domain.t_final / static_cast<double>(nt));
  return build(domain, materials, heights, {part});
}

std::span<const Element> Mesh::slab_elements(std::size_t slab) const {
  return std::span<const Element>(elements_).subspan(slab_begin_[slab], slab_begin_[slab + 1] - slab_begin_[slab]);
}

std::size_t Mesh::count_faces(FaceKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(faces_.begin(), faces_.end(), [kind](const Face& f) { return f.kind == kind; }));
}

std::size_t Mesh::locate_slab(double t) const { return cell_of(slab_times_, t); }

std::size_t Mesh::locate(double x, double t) const {
  const double xtol = kRelTol * std::max(1.0, domain_.length());
  const double ttol = kRelTol * std::max(1.0, domain_.t_final);
  if (x < domain_.x_l - xtol || x > domain_.x_r + xtol || t < -ttol || t > domain_.t_final + ttol) {
    throw Error(ErrorCode::PointOutsideElement, "point (" + fmt_real(x) + ", " + fmt_real(t) + ") outside Q");
  }
  const std::size_t s = locate_slab(t);
  return slab_begin_[s] + cell_of(partitions_[s], x);
}

bool Mesh::time_homogeneous(double rel_tol) const {
  const double h0 = slab_height(0);
  for (std::size_t s = 1; s < num_slabs(); ++s) {
    if (std::abs(slab_height(s) - h0) > rel_tol * h0) return false;
    const auto& a = partitions_[s];
    const auto& b = partitions_[0];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > rel_tol * std::max(1.0, domain_.length())) return false;
    }
  }
  return true;
}

}  // namespace trefftz
