#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace trefftz {

/// Space-time cylinder (x_l, x_r) x (0, t_final).
struct SpaceTimeDomain {
  double x_l = 0.0;
  double x_r = 1.0;
  double t_final = 1.0;

  double length() const { return x_r - x_l; }
  double measure() const { return length() * t_final; }
  void validate() const;
};

/// Piecewise-constant permittivity and permeability on the space interval.
/// `breakpoints` are the interior discontinuities; interval i spans
/// [breakpoints[i-1], breakpoints[i]] with the domain ends as outer bounds.
struct MaterialLayout {
  std::vector<double> breakpoints;
  std::vector<double> eps{1.0};
  std::vector<double> mu{1.0};

  static MaterialLayout homogeneous(double eps = 1.0, double mu = 1.0);

  std::size_t num_intervals() const { return eps.size(); }
  /// Interval containing x; points on a breakpoint resolve to the left interval.
  std::size_t interval_of(double x) const;
  double eps_at(double x) const { return eps[interval_of(x)]; }
  double mu_at(double x) const { return mu[interval_of(x)]; }
  double wave_speed_at(double x) const;
  bool is_homogeneous() const;
  void validate(const SpaceTimeDomain& domain) const;
};

struct Element {
  std::size_t id = 0;
  std::size_t slab = 0;
  std::size_t index_in_slab = 0;
  double x0 = 0.0, x1 = 0.0, t0 = 0.0, t1 = 0.0;
  double eps = 1.0, mu = 1.0;

  double hx() const { return x1 - x0; }
  double ht() const { return t1 - t0; }
  double area() const { return hx() * ht(); }
  double wave_speed() const;
  double x_center() const { return 0.5 * (x0 + x1); }
  double t_center() const { return 0.5 * (t0 + t1); }
  bool contains(double x, double t, double rel_tol = 1e-12) const;
};

enum class FaceKind { HorInternal, VerInternal, Bottom, Top, Left, Right };

inline constexpr std::size_t kNoElement = std::numeric_limits<std::size_t>::max();

/// A skeleton face. Horizontal faces span [x0, x1] at t0 == t1, vertical
/// faces span [t0, t1] at x0 == x1.
///
/// Adjacency: HorInternal -> (first = lower, second = upper);
/// VerInternal -> (first = left, second = right); boundary faces carry
/// their single element in `first`.
struct Face {
  FaceKind kind = FaceKind::Bottom;
  double x0 = 0.0, x1 = 0.0, t0 = 0.0, t1 = 0.0;
  std::size_t first = kNoElement;
  std::size_t second = kNoElement;

  bool horizontal() const {
    return kind == FaceKind::HorInternal || kind == FaceKind::Bottom || kind == FaceKind::Top;
  }
  bool internal() const { return kind == FaceKind::HorInternal || kind == FaceKind::VerInternal; }
  double measure() const { return horizontal() ? x1 - x0 : t1 - t0; }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Common refinement of two partitions of the same interval. Every returned
/// piece lies inside exactly one cell of each input partition.
std::vector<Interval> union_interface(std::span<const double> partition_a,
                                      std::span<const double> partition_b);

/// Slab-structured Cartesian space-time mesh: one row of elements per time
/// slab, with independent x-partitions per slab (hanging nodes across slab
/// interfaces). Immutable after construction.
class Mesh {
 public:
  /// `x_partitions` holds either one partition per slab or a single
  /// partition shared by all slabs. Each partition includes both domain ends.
  static Mesh build(const SpaceTimeDomain& domain, const MaterialLayout& materials,
                    std::span<const double> slab_heights,
                    const std::vector<std::vector<double>>& x_partitions);

  /// nx-by-nt uniform grid; material breakpoints must fall on grid lines.
  static Mesh uniform(const SpaceTimeDomain& domain, const MaterialLayout& materials,
                      std::size_t nx, std::size_t nt);

  const SpaceTimeDomain& domain() const { return domain_; }
  const MaterialLayout& materials() const { return materials_; }

  std::size_t num_slabs() const { return slab_times_.size() - 1; }
  std::size_t num_elements() const { return elements_.size(); }
  const std::vector<double>& slab_times() const { return slab_times_; }
  double slab_height(std::size_t slab) const { return slab_times_[slab + 1] - slab_times_[slab]; }
  const std::vector<double>& partition(std::size_t slab) const { return partitions_[slab]; }

  std::span<const Element> elements() const { return elements_; }
  const Element& element(std::size_t id) const { return elements_[id]; }
  std::span<const Element> slab_elements(std::size_t slab) const;
  std::size_t slab_begin(std::size_t slab) const { return slab_begin_[slab]; }

  std::span<const Face> faces() const { return faces_; }
  std::size_t count_faces(FaceKind kind) const;
  /// Vertical faces (internal and lateral) of one slab, left to right.
  std::span<const std::size_t> vertical_faces(std::size_t slab) const { return vertical_faces_[slab]; }
  /// Horizontal pieces on the lower edge of a slab (Bottom for slab 0).
  std::span<const std::size_t> lower_faces(std::size_t slab) const { return lower_faces_[slab]; }

  /// Element containing (x, t). Ties on element boundaries resolve toward
  /// the smaller element index.
  std::size_t locate(double x, double t) const;
  /// Slab containing t; ties resolve toward the lower slab.
  std::size_t locate_slab(double t) const;

  double max_hx() const { return max_hx_; }
  /// True when every slab has the same height and x-partition.
  bool time_homogeneous(double rel_tol = 1e-12) const;

 private:
  SpaceTimeDomain domain_;
  MaterialLayout materials_;
  std::vector<double> slab_times_;
  std::vector<std::vector<double>> partitions_;
  std::vector<Element> elements_;
  std::vector<std::size_t> slab_begin_;
  std::vector<Face> faces_;
  std::vector<std::vector<std::size_t>> vertical_faces_;
  std::vector<std::vector<std::size_t>> lower_faces_;
  double max_hx_ = 0.0;
};

}  // namespace trefftz
