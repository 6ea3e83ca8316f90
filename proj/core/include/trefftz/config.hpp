#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "trefftz/assembly.hpp"
#include "trefftz/mesh.hpp"

namespace trefftz {

/// Resolved experiment configuration. Every field maps to one dotted key;
/// see `config_keys()` and the README for the grammar.
struct ExperimentConfig {
  SpaceTimeDomain domain{0.0, 60.0, 60.0};

  double hx = 1.0;
  double ht = 1.0;
  /// Optional explicit mesh; empty means uniform hx, ht.
  std::vector<double> slab_heights;
  std::vector<std::vector<double>> partitions;

  MaterialLayout materials;

  BasisFamily family = BasisFamily::TrefftzTransport;
  int degree = 2;
  std::vector<int> degrees;  // per element, optional

  FluxParams flux;

  std::string bc_kind = "pec";  // pec | dirichlet | robin
  std::string bc_left = "zero";
  std::string bc_right = "zero";

  std::string ic_kind = "gaussian";  // gaussian | polynomial | table
  double ic_center = 10.0;
  double ic_width = 10.0;
  double ic_amplitude_e = 1.0;
  double ic_amplitude_h = 1.0;
  std::vector<double> ic_coeffs_e;
  std::vector<double> ic_coeffs_h;
  std::string ic_table;

  std::string source_kind = "none";  // none | const
  double source_value = 0.0;

  std::string experiment = "run";  // run | sweep_h | sweep_p | sweep_flux | spectrum | energy
  std::string reference = "auto";  // auto | free-space

  std::vector<double> sweep_h{2.0, 1.0, 0.5, 0.25};
  std::vector<int> sweep_p{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> sweep_alpha;  // empty: 0, 0.1, ..., 1
  std::vector<double> sweep_beta;

  int face_points = 0;
  int data_points = 0;

  std::string output_dir = ".";
  std::string output_csv = "results.csv";
  std::string output_plot = "plot.tsv";
  std::string output_svg;
};

/// Parses `key = value` lines with optional `[section]` headers and `#`
/// comments. Throws ConfigParse naming the source and line.
ExperimentConfig parse_config(std::istream& in, const std::string& source_name = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Applies one `key=value` override (CLI --set).
void apply_override(ExperimentConfig& cfg, std::string_view assignment);
void set_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// All known keys, in manifest order.
std::vector<std::string> config_keys();

/// Every violation; empty when the config is usable.
std::vector<std::string> validate(const ExperimentConfig& cfg);

/// Fully resolved config in the input grammar. Reals are written in
/// shortest round-trip form, so re-reading reproduces the same doubles.
std::string to_manifest(const ExperimentConfig& cfg);

/// Parses the function grammar zero | const:v | poly:c0,c1,... |
/// gaussian:center,width,amp. Empty function for "zero".
std::function<double(double)> parse_function(std::string_view text);

std::vector<double> flux_grid(const std::vector<double>& given);

Mesh build_mesh(const ExperimentConfig& cfg);
BasisSpec build_basis(const ExperimentConfig& cfg);
ProblemData build_problem(const ExperimentConfig& cfg);
AssemblyOptions build_assembly_options(const ExperimentConfig& cfg);

}  // namespace trefftz
