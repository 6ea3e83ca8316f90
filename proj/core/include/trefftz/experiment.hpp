#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trefftz/analysis.hpp"
#include "trefftz/config.hpp"

namespace trefftz {

/// Everything measured by one forward solve.
struct RunMetrics {
  std::size_t dofs = 0;
  double eps_q = 0.0;     // NaN without an exact reference
  double dg_error = 0.0;  // NaN without an exact reference
  double energy_t = 0.0;
  std::vector<double> interface_energies;
};

/// Exact reference for the config, or nullopt when none is available
/// (inhomogeneous Dirichlet data, heterogeneous media).
std::optional<CharacteristicProfile> reference_for(const ExperimentConfig& cfg, const Mesh& mesh,
                                                   const ProblemData& data);

RunMetrics run_once(const ExperimentConfig& cfg);

struct SpectrumRow {
  int p = 0;
  std::size_t dofs = 0;
  double spectral_radius = 0.0;
  double condition_u = 0.0;
  double condition_a = 0.0;
  Eigen::VectorXcd eigenvalues;
};

SpectrumRow spectrum_for(const ExperimentConfig& cfg, int p, SpectrumOptions options = {});

struct ExperimentOutcome {
  ErrorReport report;
  std::vector<SpectrumRow> spectra;
  std::optional<EnergyBudget> budget;
  std::vector<std::string> artifacts;
  std::vector<std::string> summary;
};

/// Output directory: TREFFTZ_OUTPUT_DIR when set, else output.dir.
std::string output_directory(const ExperimentConfig& cfg);

/// Runs cfg.experiment, writes its CSV/TSV/SVG files and the manifest into
/// the output directory. Progress lines go to `log` when given.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

}  // namespace trefftz
