#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "trefftz/assembly.hpp"
#include "trefftz/reference.hpp"
#include "trefftz/solver.hpp"

namespace trefftz {

/// Relative L2(Q) error; `points` per direction, 0 selects p_max + 6.
double l2_relative_error(const SolutionField& sol, const CharacteristicProfile& exact, int points = 0);

/// A field that is smooth inside each element and may jump across faces.
using BrokenField = std::function<FieldValue(std::size_t element_id, double x, double t)>;

/// Squared DG norm: jumps on internal faces, traces on the bottom, top and
/// lateral boundary, weighted by eps, mu and the flux parameters.
double dg_norm_squared(const Mesh& mesh, const FluxParams& flux, BoundaryKind bc, const BrokenField& v, int points);

/// DG norm of (E - E_hp, H - H_hp); `points` 0 selects p_max + 6.
double dg_error(const SolutionField& sol, const CharacteristicProfile& exact, const FluxParams& flux,
                BoundaryKind bc = BoundaryKind::DirichletPEC, int points = 0);

enum class TraceSide { Auto, Below, Above };

/// 1/2 int(eps E_hp^2 + mu H_hp^2) at time t. On a slab interface the side
/// must be given, except at t = 0 and t = T.
double discrete_energy(const SolutionField& sol, double t, TraceSide side = TraceSide::Auto, int points = 0);

/// 1/2 int(eps E0^2 + mu H0^2) over the bottom of the mesh.
double initial_energy(const Mesh& mesh, const InitialData& initial, int points = 0);

/// Entry 0 is the exact initial energy; entry j >= 1 the discrete energy
/// of the trace from below at t_j.
std::vector<double> slab_interface_energies(const SolutionField& sol, const InitialData& initial);

struct EnergyBudget {
  double initial = 0.0;             // E(0)
  double final_energy = 0.0;        // E_hp(T)
  double initial_mismatch = 0.0;    // 1/2 |(E_hp - E0, H_hp - H0)|^2 on t = 0
  double horizontal_jumps = 0.0;    // 1/2 |[E], [H]|^2 on slab interfaces
  double vertical_jumps = 0.0;      // alpha [E]^2 + beta [H]^2 on internal vertical faces
  double lateral = 0.0;             // boundary dissipation on x = x_l, x_r
  double boundary_work = 0.0;       // Robin data terms
  double residual = 0.0;            // |lhs - rhs| / E(0) (absolute when E(0) = 0)
};

/// Audits E_hp(T) = E(0) - mismatch - jumps - lateral + data work. Throws
/// UnsupportedBC for inhomogeneous Dirichlet data.
EnergyBudget energy_budget(const SolutionField& sol, const ProblemData& data, AssemblyOptions options = {});

enum class RateModel {
  /// log e = a + s log h; `slope` is the algebraic order.
  Algebraic,
  /// log e = a + s p; `slope` is negative for exponential decay.
  Exponential,
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  double max_residual = 0.0;
  double log_range = 0.0;  // max - min of log errors used in the fit
  std::size_t samples_used = 0;
  bool dropped_coarsest = false;
};

/// Least-squares rate. The coarsest sample (largest h, smallest p) is left
/// out when its error exceeds 0.5 and at least three samples remain.
RateFit fit_rates(std::span<const double> abscissa, std::span<const double> errors, RateModel model);

struct ErrorReportRow {
  std::string experiment;
  double h_x = 0.0;
  double h_t = 0.0;
  int p = 0;
  std::string family;
  double alpha = 0.0;
  double beta = 0.0;
  double eps_q = 0.0;
  double dg_error = 0.0;
  double energy_t = 0.0;
  double rate = 0.0;  // NaN when not applicable
};

struct ErrorReport {
  std::vector<ErrorReportRow> rows;
  std::vector<double> slab_energies;
  RateFit fit;

  static const char* csv_header();
  void write_csv(std::ostream& os) const;
};

}  // namespace trefftz
